#include "zetapulse/oracle.hpp"

#include <cmath>

#include "zetapulse/errors.hpp"

namespace zetapulse {

namespace {

constexpr double kHermitianTol = 1e-12;

void check_hermitian(const Eigen::Matrix2cd& m, double t) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale) {
        throw ContractViolation("HamiltonianSampler returned a non-Hermitian matrix at t = " +
                                std::to_string(t));
    }
}

// exp(-i H dt) for Hermitian H = e0*I + v.sigma, closed form.
Eigen::Matrix2cd step_exponential(const Eigen::Matrix2cd& h, double dt) {
    const double e0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double vz = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double vx = h(0, 1).real();
    const double vy = -h(0, 1).imag();
    const double r = std::sqrt(vx * vx + vy * vy + vz * vz);
    const complexd phase = std::polar(1.0, -e0 * dt);
    Eigen::Matrix2cd u;
    if (r * dt == 0.0) {
        u = Eigen::Matrix2cd::Identity();
    } else {
        const double c = std::cos(r * dt);
        const double s = std::sin(r * dt) / r;
        const complexd i1(0.0, 1.0);
        u << c - i1 * s * vz, -i1 * s * complexd(vx, -vy), -i1 * s * complexd(vx, vy), c + i1 * s * vz;
    }
    return phase * u;
}

Eigen::Matrix2cd run_window(const HamiltonianSampler& h, double t0, double t1, int steps) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    const double dt = (t1 - t0) / steps;
    for (int k = 0; k < steps; ++k) {
        const double tm = t0 + (k + 0.5) * dt;
        const Eigen::Matrix2cd sample = h.sample(tm);
        check_hermitian(sample, tm);
        u = step_exponential(sample, dt) * u;
    }
    return u;
}

Eigen::Matrix2cd entries_to_matrix(double diag, double offdiag, double phi) {
    Eigen::Matrix2cd m;
    const complexd drive = offdiag * std::polar(1.0, phi);
    m << diag, std::conj(drive), drive, -diag;
    return m;
}

}  // namespace

HamiltonianSampler make_sampler(const ZetaSeries& series, const ControlProblem& problem) {
    const char* label = problem.axis == ControlAxis::SigmaZ ? "sigma-z" : "sigma-xy";
    return {[series, problem](double t) {
                const HamiltonianEntries e = hamiltonian_entries(series, problem, t);
                return entries_to_matrix(e.diag, e.offdiag, e.phi);
            },
            problem.duration, label};
}

HamiltonianSampler make_st_sampler(const ZetaSeries& series, double h) {
    const ControlProblem problem =
        ControlProblem::sigma_z(Waveform::constant(h), Waveform::constant(0.0), series.duration());
    return {[series, problem](double t) {
                const double j = delta_from_zeta(series, problem, t);
                return entries_to_matrix(j, problem.envelope.value(t), 0.0);
            },
            series.duration(), "st-qubit"};
}

HamiltonianSampler make_resonant_sampler(const std::function<double(double)>& drive, double phi,
                                         double duration) {
    return {[drive, phi](double t) { return entries_to_matrix(0.0, drive(t), phi); }, duration,
            "resonant"};
}

HamiltonianSampler make_detuned_sampler(const std::function<double(double)>& drive, double phi,
                                        double delta, double duration) {
    return {[drive, phi, delta](double t) { return entries_to_matrix(delta, drive(t), phi); },
            duration, "detuned"};
}

PropagationResult propagate_numeric(const HamiltonianSampler& h, double t_end, int steps) {
    if (steps < 16) {
        throw DomainError("propagate_numeric: steps must be >= 16");
    }
    if (t_end > h.duration) {
        throw DomainError("propagate_numeric: t_end beyond the sampler duration");
    }
    const Eigen::Matrix2cd u_n = run_window(h, 0.0, t_end, steps);
    const Eigen::Matrix2cd u_2n = run_window(h, 0.0, t_end, 2 * steps);
    PropagationResult result;
    result.u = Unitary2::from_matrix(u_n);
    result.steps = steps;
    result.step_doubling_defect = (u_n - u_2n).norm();
    return result;
}

Unitary2 propagate_window(const HamiltonianSampler& h, double t0, double t1, int steps) {
    return Unitary2::from_matrix(run_window(h, t0, t1, steps));
}

StateTrace evolve_state(const HamiltonianSampler& h, const Eigen::Vector2cd& psi0,
                        const Eigen::Vector2cd& target, int samples, int total_steps) {
    if (std::abs(psi0.norm() - 1.0) > 1e-9) {
        throw DomainError("evolve_state: psi0 must be normalized");
    }
    if (samples < 2) {
        throw DomainError("evolve_state: need at least 2 samples");
    }
    const int substeps = std::max(1, (total_steps + samples - 1) / samples);
    const double dt_sample = h.duration / (samples - 1);
    StateTrace trace;
    Eigen::Vector2cd psi = psi0;
    const auto record = [&](double t) {
        trace.samples.push_back({t, std::norm(psi(0)), std::norm(psi(1)),
                                 std::norm(target.dot(psi))});
        trace.max_norm_defect = std::max(trace.max_norm_defect, std::abs(psi.norm() - 1.0));
    };
    record(0.0);
    for (int i = 1; i < samples; ++i) {
        const double t0 = (i - 1) * dt_sample;
        const double t1 = i * dt_sample;
        psi = run_window(h, t0, t1, substeps) * psi;
        record(t1);
    }
    return trace;
}

}  // namespace zetapulse
