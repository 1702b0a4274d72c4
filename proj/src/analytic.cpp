#include "zetapulse/analytic.hpp"

#include <cmath>

#include "zetapulse/errors.hpp"
#include "zetapulse/numerics.hpp"

namespace zetapulse {

namespace {

constexpr double kPoleGuard = 1e-9;

// Envelope/phase pair seen by the rotated-frame solver for a SigmaXY problem.
// Delta'' keeps a fixed sign (validated by callers at synthesis time); a
// negative Delta'' is absorbed as a constant pi shift of the frame phase.
struct EffectiveZ {
    double env;
    double env_d;
    double phase_shift;  // 0 or pi
};

EffectiveZ effective_xy(const ControlProblem& problem, double t) {
    const double dpp = problem.delta_pp(t);
    if (dpp == 0.0) {
        throw EnvelopeError("sigma-x/y control: Delta'' vanishes at t = " + std::to_string(t));
    }
    const double sign = dpp > 0 ? 1.0 : -1.0;
    return {std::abs(dpp), sign * problem.delta_pp_d1(t), dpp > 0 ? 0.0 : M_PI};
}

double envelope_at(const ControlProblem& problem, double t) {
    if (problem.axis == ControlAxis::SigmaZ) {
        const double env = problem.envelope.value(t);
        if (!(env > 0.0)) {
            throw EnvelopeError("sigma-z control: envelope must be positive at t = " +
                                std::to_string(t));
        }
        return env;
    }
    return effective_xy(problem, t).env;
}

}  // namespace

double synthesis_core(const ZetaTriple& z, double env, double env_d, double t_for_errors) {
    const double s2 = std::sin(2.0 * z.value);
    if (z.value <= kPoleGuard || z.value >= M_PI / 2.0 - kPoleGuard || std::abs(s2) < kPoleGuard) {
        throw DivergenceError("zeta at a pole of cot(2 zeta) at t = " +
                              std::to_string(t_for_errors));
    }
    const double ratio = z.d1 / env;
    if (std::abs(ratio) >= 1.0) {
        throw DomainError("|zeta_dot| >= envelope at t = " + std::to_string(t_for_errors));
    }
    const double root = std::sqrt(1.0 - ratio * ratio);
    const double cot2 = std::cos(2.0 * z.value) / s2;
    return (z.d2 - z.d1 * env_d / env) / (2.0 * env * root) - env * root * cot2;
}

double delta_from_zeta(const ZetaSeries& series, const ControlProblem& problem, double t) {
    if (problem.axis != ControlAxis::SigmaZ) {
        throw DomainError("delta_from_zeta requires a sigma-z control problem");
    }
    const double env = envelope_at(problem, t);
    return synthesis_core(series.eval(t), env, problem.envelope.d1(t), t) +
           0.5 * problem.phase.d1(t);
}

XiPair xi_integrals(const ZetaSeries& series, const ControlProblem& problem, double t) {
    const auto integrand = [&](double tp) {
        const ZetaTriple z = series.eval(tp);
        const double env = envelope_at(problem, tp);
        const double ratio = z.d1 / env;
        if (std::abs(ratio) >= 1.0) {
            throw DivergenceError("xi integrand: |zeta_dot| >= envelope at t = " +
                                  std::to_string(tp));
        }
        const double s2 = std::sin(2.0 * z.value);
        if (std::abs(s2) < kPoleGuard || z.value <= kPoleGuard ||
            z.value >= M_PI / 2.0 - kPoleGuard) {
            throw DivergenceError("xi integrand: csc(2 zeta) pole at t = " + std::to_string(tp));
        }
        return env * std::sqrt(1.0 - ratio * ratio) / s2;
    };
    const double integral = integrate_adaptive_simpson(integrand, 0.0, t);
    const ZetaTriple z = series.eval(t);
    const double env = envelope_at(problem, t);
    const double half_asin = 0.5 * std::asin(z.d1 / env);
    return {integral - half_asin, integral + half_asin, t};
}

namespace {

// U(t) = U0(t) U0^dag(0) with the undetermined constants eliminated. With
// L(t) = xi(t) - xi(0) phases and dphi = [phi(t)-phi(0)]/2, sphi = [phi(t)+phi(0)]/2:
//   U11 = e^{-i dphi} [ e^{i(xm_t - xm_0)} cos z_t cos z_0
//                       + e^{-i(xp_t - xp_0)} sin z_t sin z_0 ]
//   U21 = -e^{i sphi} [ e^{i(xp_t - xm_0)} sin z_t cos z_0
//                       - e^{i(xp_0 - xm_t)} cos z_t sin z_0 ]
Unitary2 composed_propagator(const ZetaSeries& series, double phi_t, double phi_0,
                             const XiPair& xi_t, double env_0, double t) {
    const ZetaTriple z0 = series.eval(0.0);
    const ZetaTriple zt = series.eval(t);
    const double s0 = 0.5 * std::asin(z0.d1 / env_0);
    const double xm0 = -s0, xp0 = s0;
    const double dphi = 0.5 * (phi_t - phi_0);
    const double sphi = 0.5 * (phi_t + phi_0);
    const complexd i1(0.0, 1.0);
    const complexd u11 =
        std::exp(-i1 * dphi) *
        (std::exp(i1 * (xi_t.xi_minus - xm0)) * std::cos(zt.value) * std::cos(z0.value) +
         std::exp(-i1 * (xi_t.xi_plus - xp0)) * std::sin(zt.value) * std::sin(z0.value));
    const complexd u21 =
        -std::exp(i1 * sphi) *
        (std::exp(i1 * (xi_t.xi_plus - xm0)) * std::sin(zt.value) * std::cos(z0.value) -
         std::exp(i1 * (xp0 - xi_t.xi_minus)) * std::cos(zt.value) * std::sin(z0.value));
    return Unitary2::su2(u11, u21);
}

}  // namespace

Unitary2 propagator_z(const ZetaSeries& series, const ControlProblem& problem, double t) {
    if (problem.axis != ControlAxis::SigmaZ) {
        throw DomainError("propagator_z requires a sigma-z control problem");
    }
    if (t == 0.0) return Unitary2::identity();
    const XiPair xi = xi_integrals(series, problem, t);
    return composed_propagator(series, problem.phase.value(t), problem.phase.value(0.0), xi,
                               envelope_at(problem, 0.0), t);
}

Unitary2 rotate_frame_ur(double phi) {
    const double r = 1.0 / std::sqrt(2.0);
    const complexd e_m = std::polar(1.0, -phi), e_p = std::polar(1.0, phi);
    Eigen::Matrix2cd m;
    m << r, -r * e_m, r * e_p, r;
    return Unitary2::from_matrix(m);
}

double omega_prime_from_zeta(const ZetaSeries& series, const ControlProblem& problem, double t) {
    if (problem.axis != ControlAxis::SigmaXY) {
        throw DomainError("omega_prime_from_zeta requires a sigma-x/y control problem");
    }
    const EffectiveZ eff = effective_xy(problem, t);
    return synthesis_core(series.eval(t), eff.env, eff.env_d, t);
}

Unitary2 propagator_xy(const ZetaSeries& series, const ControlProblem& problem, double t) {
    if (problem.axis != ControlAxis::SigmaXY) {
        throw DomainError("propagator_xy requires a sigma-x/y control problem");
    }
    if (t == 0.0) return Unitary2::identity();
    // Guard against Delta'' changing sign inside [0, t]: the absorbed frame
    // phase must be a constant.
    const EffectiveZ eff0 = effective_xy(problem, 0.0);
    const int probes = 64;
    for (int i = 1; i <= probes; ++i) {
        const EffectiveZ e = effective_xy(problem, t * i / probes);
        if (e.phase_shift != eff0.phase_shift) {
            throw EnvelopeError("sigma-x/y control: Delta'' changes sign inside [0, t]");
        }
    }
    const XiPair xi = xi_integrals(series, problem, t);
    const double phi_t = problem.phase.value(t) + eff0.phase_shift;
    const double phi_0 = problem.phase.value(0.0) + eff0.phase_shift;
    const Unitary2 u_prime = composed_propagator(series, phi_t, phi_0, xi, eff0.env, t);
    return rotate_frame_ur(problem.phase.value(t)) * u_prime *
           rotate_frame_ur(problem.phase.value(0.0)).dagger();
}

HamiltonianEntries hamiltonian_entries(const ZetaSeries& series, const ControlProblem& problem,
                                       double t) {
    if (problem.axis == ControlAxis::SigmaZ) {
        return {delta_from_zeta(series, problem, t), problem.envelope.value(t),
                problem.phase.value(t)};
    }
    return {problem.envelope.value(t), omega_prime_from_zeta(series, problem, t),
            problem.phase.value(t)};
}

}  // namespace zetapulse
