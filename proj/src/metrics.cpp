#include "zetapulse/metrics.hpp"

#include <cmath>

#include "zetapulse/errors.hpp"

namespace zetapulse {

FidelityScore state_fidelity(const Eigen::Vector2cd& psi, const Eigen::Vector2cd& target) {
    if (std::abs(psi.norm() - 1.0) > 1e-6 || std::abs(target.norm() - 1.0) > 1e-6) {
        throw DomainError("state_fidelity: states must be normalized");
    }
    return {std::norm(target.dot(psi)), FidelityScore::Kind::State};
}

FidelityScore gate_fidelity(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v) {
    if (unitarity_defect(u) >= 1e-6 || unitarity_defect(v) >= 1e-6) {
        throw ContractViolation("gate_fidelity: inputs must be unitary");
    }
    const complexd tr = (u.adjoint() * v).trace();
    return {std::norm(tr) / 4.0, FidelityScore::Kind::Gate};
}

FidelityScore gate_fidelity(const Unitary2& u, const Unitary2& v) {
    return gate_fidelity(u.matrix(), v.matrix());
}

double phase_aligned_distance(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    // ||a - e^{i gamma} b|| is minimized at gamma = arg Tr(a^dag b). The
    // difference is formed explicitly: the closed form
    // sqrt(||a||^2 + ||b||^2 - 2|tr|) cancels catastrophically near zero,
    // exactly where this is used.
    const complexd tr = (a.adjoint() * b).trace();
    const complexd rot = std::abs(tr) > 0 ? std::polar(1.0, -std::arg(tr)) : complexd(1.0, 0.0);
    return (a - rot * b).norm();
}

}  // namespace zetapulse
