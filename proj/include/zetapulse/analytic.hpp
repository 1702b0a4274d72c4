#pragma once

#include "zetapulse/unitary.hpp"
#include "zetapulse/waveform.hpp"
#include "zetapulse/zeta.hpp"

namespace zetapulse {

enum class ControlAxis { SigmaZ, SigmaXY };

// Which Hamiltonian entry is free. SigmaZ: the diagonal detuning is
// synthesized and `envelope` is the fixed drive Omega(t) > 0. SigmaXY: the
// off-diagonal drive is synthesized and `envelope` is the fixed detuning
// Delta'(t); the working quantity is Delta''(t) = -Delta'(t) + phi_dot/2,
// which must keep a fixed sign.
struct ControlProblem {
    ControlAxis axis = ControlAxis::SigmaZ;
    Waveform envelope;
    Waveform phase;
    double duration = 0;

    static ControlProblem sigma_z(Waveform omega, Waveform phi, double T) {
        return {ControlAxis::SigmaZ, omega, phi, T};
    }
    static ControlProblem sigma_xy(Waveform delta_prime, Waveform phi, double T) {
        return {ControlAxis::SigmaXY, delta_prime, phi, T};
    }

    // Delta''(t) and its derivative (SigmaXY only).
    double delta_pp(double t) const { return -envelope.value(t) + 0.5 * phase.d1(t); }
    double delta_pp_d1(double t) const { return -envelope.d1(t) + 0.5 * phase.d2(t); }
};

// Accumulated phase integrals of the analytic solution at one instant:
//   xi_pm(t) = integral_0^t env*sqrt(1 - zeta_dot^2/env^2)*csc(2 zeta) dt'
//              +/- (1/2) asin(zeta_dot/env).
struct XiPair {
    double xi_minus = 0;
    double xi_plus = 0;
    double t = 0;
};

// Core of the diagonal synthesis, shared by every control direction:
//   (zdd - zd*env_d/env) / (2 env sqrt(1 - zd^2/env^2))
//   - env sqrt(1 - zd^2/env^2) cot(2 z)
// Requires env > 0, |zd| < env and z away from {0, pi/2}.
double synthesis_core(const ZetaTriple& z, double env, double env_d, double t_for_errors);

// Detuning Delta(t) matching the series under sigma-z control:
// synthesis core plus phi_dot/2.
double delta_from_zeta(const ZetaSeries& series, const ControlProblem& problem, double t);

// Both accumulated phases at time t (composite adaptive quadrature).
XiPair xi_integrals(const ZetaSeries& series, const ControlProblem& problem, double t);

// Exact evolution operator for the sigma-z-control Hamiltonian
// [[Delta, Omega e^{-i phi}], [Omega e^{i phi}, -Delta]] with Delta synthesized
// from the series. U(0) = I exactly.
Unitary2 propagator_z(const ZetaSeries& series, const ControlProblem& problem, double t);

// Frame rotation exp[-i pi/4 M(phi)] with M = [[0, e^{-i(phi+pi/2)}],
// [e^{i(phi+pi/2)}, 0]]; closed form (1/sqrt2) [[1, -e^{-i phi}], [e^{i phi}, 1]].
Unitary2 rotate_frame_ur(double phi);

// Drive amplitude Omega'(t) matching the series under sigma-x/y control with
// fixed detuning Delta'(t): the synthesis core evaluated on |Delta''|.
double omega_prime_from_zeta(const ZetaSeries& series, const ControlProblem& problem, double t);

// Exact evolution operator for the sigma-x/y-control Hamiltonian
// [[Delta', Omega' e^{-i phi}], [Omega' e^{i phi}, -Delta']]:
// U(t) = U_R(t) U'(t) U_R^dag(0). U(0) = I exactly.
Unitary2 propagator_xy(const ZetaSeries& series, const ControlProblem& problem, double t);

// Lab-frame Hamiltonian entries implied by a series + problem, for samplers.
struct HamiltonianEntries {
    double diag;       // Delta (SigmaZ) or Delta' (SigmaXY)
    double offdiag;    // Omega (SigmaZ) or Omega' (SigmaXY); signed
    double phi;
};
HamiltonianEntries hamiltonian_entries(const ZetaSeries& series, const ControlProblem& problem,
                                       double t);

}  // namespace zetapulse
