#pragma once

#include <complex>

#include <Eigen/Dense>

namespace zetapulse {

using complexd = std::complex<double>;

// 2x2 unitary with the unitarity defect checked at construction.
class Unitary2 {
  public:
    static constexpr double kDefectTolerance = 1e-9;

    // Validates ||U^dag U - I||_F < 1e-9; throws ContractViolation otherwise.
    static Unitary2 from_matrix(const Eigen::Matrix2cd& m);

    // Canonical SU(2) form [[u11, -conj(u21)], [u21, conj(u11)]];
    // requires |u11|^2 + |u21|^2 = 1.
    static Unitary2 su2(complexd u11, complexd u21);

    static Unitary2 identity();

    const Eigen::Matrix2cd& matrix() const { return m_; }
    complexd u11() const { return m_(0, 0); }
    complexd u12() const { return m_(0, 1); }
    complexd u21() const { return m_(1, 0); }
    complexd u22() const { return m_(1, 1); }

    Unitary2 dagger() const;
    Unitary2 operator*(const Unitary2& rhs) const;

  private:
    explicit Unitary2(const Eigen::Matrix2cd& m) : m_(m) {}
    Eigen::Matrix2cd m_;
};

// Frobenius norm of U^dag U - I for an arbitrary 2x2 complex matrix.
double unitarity_defect(const Eigen::Matrix2cd& m);

// Common fixed gates.
namespace gates {
Eigen::Matrix2cd identity();
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();
Eigen::Matrix2cd hadamard();
Eigen::Matrix2cd s_gate();
Eigen::Matrix2cd t_gate();
Eigen::Matrix2cd rx(double angle);  // exp(-i angle/2 sigma_x)
Eigen::Matrix2cd rz(double angle);  // exp(-i angle/2 sigma_z)
}  // namespace gates

}  // namespace zetapulse
