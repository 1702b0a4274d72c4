#include "zetapulse/unitary.hpp"

#include <cmath>

#include "zetapulse/errors.hpp"

namespace zetapulse {

double unitarity_defect(const Eigen::Matrix2cd& m) {
    return (m.adjoint() * m - Eigen::Matrix2cd::Identity()).norm();
}

Unitary2 Unitary2::from_matrix(const Eigen::Matrix2cd& m) {
    const double defect = unitarity_defect(m);
    if (defect >= kDefectTolerance) {
        throw ContractViolation("Unitary2: unitarity defect " + std::to_string(defect));
    }
    return Unitary2(m);
}

Unitary2 Unitary2::su2(complexd u11, complexd u21) {
    Eigen::Matrix2cd m;
    m << u11, -std::conj(u21), u21, std::conj(u11);
    return from_matrix(m);
}

Unitary2 Unitary2::identity() { return Unitary2(Eigen::Matrix2cd::Identity()); }

Unitary2 Unitary2::dagger() const { return Unitary2(m_.adjoint()); }

Unitary2 Unitary2::operator*(const Unitary2& rhs) const { return Unitary2(m_ * rhs.m_); }

namespace gates {

Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, complexd(0, -1), complexd(0, 1), 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd hadamard() { return (pauli_x() + pauli_z()) / std::sqrt(2.0); }

Eigen::Matrix2cd s_gate() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, complexd(0, 1);
    return m;
}

Eigen::Matrix2cd t_gate() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, std::polar(1.0, M_PI / 4.0);
    return m;
}

Eigen::Matrix2cd rx(double angle) {
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    Eigen::Matrix2cd m;
    m << c, complexd(0, -s), complexd(0, -s), c;
    return m;
}

Eigen::Matrix2cd rz(double angle) {
    Eigen::Matrix2cd m;
    m << std::polar(1.0, -angle / 2.0), 0, 0, std::polar(1.0, angle / 2.0);
    return m;
}

}  // namespace gates
}  // namespace zetapulse
