#pragma once

#include "zetapulse/unitary.hpp"

namespace zetapulse {

struct FidelityScore {
    enum class Kind { Gate, State };
    double value = 0;  // in [0, 1]
    Kind kind = Kind::Gate;
};

// |<target|psi>|^2; both vectors must be normalized.
FidelityScore state_fidelity(const Eigen::Vector2cd& psi, const Eigen::Vector2cd& target);

// Projective gate fidelity |Tr(u^dag v)|^2 / 4, invariant under global phases.
FidelityScore gate_fidelity(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v);
FidelityScore gate_fidelity(const Unitary2& u, const Unitary2& v);

// ||u^dag u - I||_F is declared in unitary.hpp (unitarity_defect).

// min over global phases gamma of ||a - e^{i gamma} b||_F.
double phase_aligned_distance(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace zetapulse
