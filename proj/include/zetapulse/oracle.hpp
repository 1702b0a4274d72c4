#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zetapulse/analytic.hpp"
#include "zetapulse/unitary.hpp"

namespace zetapulse {

// Time-dependent 2x2 Hermitian Hamiltonian, entries in rad/time.
struct HamiltonianSampler {
    std::function<Eigen::Matrix2cd(double)> sample;
    double duration = 0;
    std::string label;
};

// Samplers for the problem families used throughout.
HamiltonianSampler make_sampler(const ZetaSeries& series, const ControlProblem& problem);
HamiltonianSampler make_st_sampler(const ZetaSeries& series, double h);
// Shared-drive pair: resonant [[0, w],[w, 0]] and detuned [[delta, w],[w, -delta]].
HamiltonianSampler make_resonant_sampler(const std::function<double(double)>& drive, double phi,
                                         double duration);
HamiltonianSampler make_detuned_sampler(const std::function<double(double)>& drive, double phi,
                                        double delta, double duration);

struct PropagationResult {
    Unitary2 u = Unitary2::identity();
    int steps = 0;
    // Frobenius distance between the final operator at `steps` and 2*steps.
    double step_doubling_defect = 0;
};

inline constexpr int kDefaultOracleSteps = 1 << 14;

// Brute-force propagator: per step the exact exponential of the
// midpoint-sampled Hamiltonian, exp(-i H(t_mid) dt), via the closed-form 2x2
// exponential. Exactly unitary per step; no final renormalization (the
// doubling defect is reported as a quality signal, never hidden).
PropagationResult propagate_numeric(const HamiltonianSampler& h, double t_end,
                                    int steps = kDefaultOracleSteps);

// Window propagation over [t0, t1], same scheme (for composition checks).
Unitary2 propagate_window(const HamiltonianSampler& h, double t0, double t1, int steps);

struct StateSample {
    double t;
    double p0;        // |<0|psi>|^2
    double p1;        // |<1|psi>|^2
    double fidelity;  // |<target|psi>|^2
};

struct StateTrace {
    std::vector<StateSample> samples;
    double max_norm_defect = 0;  // max | ||psi|| - 1 | along the trace
};

// Evolves psi0 under the sampler and records populations plus fidelity
// against a fixed target state at `samples` evenly spaced times, integrating
// with ~total_steps midpoint-exponential steps overall.
StateTrace evolve_state(const HamiltonianSampler& h, const Eigen::Vector2cd& psi0,
                        const Eigen::Vector2cd& target, int samples,
                        int total_steps = kDefaultOracleSteps);

}  // namespace zetapulse
