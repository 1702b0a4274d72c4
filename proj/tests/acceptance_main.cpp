// Acceptance suite: runs every top-level correctness criterion at its pinned
// tolerance and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "zetapulse/designer.hpp"
#include "zetapulse/errors.hpp"
#include "zetapulse/metrics.hpp"
#include "zetapulse/numerics.hpp"
#include "zetapulse/oracle.hpp"
#include "zetapulse/scenario.hpp"

using namespace zetapulse;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

constexpr double kTwoPi = 2.0 * M_PI;

// --- criterion 1: analytic vs oracle over 200 seeded random cases ----------
void oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    const VerifySummary summary = run_verify_suite(200, 20240521ull, 1 << 14, 1e-6);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report("oracle-equivalence", summary.all_pass && seconds < 60.0,
           fmt("worst deviation %.3e over 200 cases, %.1f s", summary.worst, seconds));
}

// --- criterion 2: Rabi reduction --------------------------------------------
void rabi_reduction() {
    const double T = 1.0;
    const ZetaSeries series(M_PI / 4.0, {}, T);
    const Waveform omega = Waveform::sine(kTwoPi, 1.5, 1, T);
    const ControlProblem problem = ControlProblem::sigma_z(omega, Waveform::constant(0.0), T);
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double t = T * i / 100.0;
        const Unitary2 u = propagator_z(series, problem, t);
        const double area =
            integrate_adaptive_simpson([&](double x) { return omega.value(x); }, 0.0, t, 1e-12);
        worst = std::max(worst, std::abs(std::norm(u.u11()) - std::pow(std::cos(area), 2)));
        worst = std::max(worst, std::abs(std::norm(u.u21()) - std::pow(std::sin(area), 2)));
    }
    report("rabi-reduction", worst < 1e-9, fmt("max |population - cos^2/sin^2(area)| = %.3e", worst));
}

// --- criterion 3: Landau-Zener limit ----------------------------------------
void landau_zener() {
    const double T = 1.0;
    const ControlProblem problem =
        ControlProblem::sigma_z(Waveform::constant(kTwoPi), Waveform::constant(0.0), T);
    double previous = 0.0;
    bool monotone = true;
    double last = 0.0;
    for (double eps : {0.1, 0.05, 0.02}) {
        const ZetaSeries series(eps, {{2, M_PI / 4.0 - eps, 1}}, T);
        const double p = std::norm(propagator_z(series, problem, T).u11());
        monotone = monotone && p > previous;
        previous = p;
        last = p;
    }
    report("landau-zener-limit", monotone && last > 0.99,
           fmt("monotone return, final P = %.5f at eps = 0.02", last));
}

// --- criterion 4: population-exchange scenario (2 pi rad/us, 0.69 us) -------
void not_scenario() {
    const double T = 0.69;
    const ZetaSeries series(M_PI / 4.0, {{3, -0.38, 1}}, T);
    const ControlProblem problem =
        ControlProblem::sigma_z(Waveform::constant(kTwoPi), Waveform::constant(0.0), T);
    const HamiltonianSampler sampler = make_sampler(series, problem);
    const StateTrace trace = evolve_state(sampler, Eigen::Vector2cd(1.0, 0.0),
                                          Eigen::Vector2cd(0.0, 1.0), 256);
    const double p1 = trace.samples.back().p1;
    report("population-exchange", p1 >= 0.999, fmt("oracle P1(T) = %.6f", p1));
}

// --- criterion 5: exchange-qubit Hadamard (h = 2 pi rad/us, 0.942 us) -------
void st_hadamard() {
    const StGateBuild build = build_st_gate(StGateKind::Hadamard, kTwoPi);
    const double j0 = std::abs(build.report.boundary_start);
    const double jt = std::abs(build.report.boundary_end);
    const bool pass = build.report.fidelity_numeric >= 0.999 && j0 < 1e-6 * kTwoPi &&
                      jt < 1e-6 * kTwoPi;
    report("exchange-hadamard", pass,
           fmt("fidelity %.6f, |J(0)| = %.1e, |J(T)| = %.1e", build.report.fidelity_numeric, j0,
               jt));
}

// --- criterion 6: drive-frame Hadamard with swept phase (0.66 us) -----------
void xy_hadamard() {
    const double T = 0.66;
    const Waveform phi = Waveform::sine(0.0, 1.0, 2, T);
    const ControlProblem problem =
        ControlProblem::sigma_xy(Waveform::constant(kTwoPi), phi, T);

    // Nominal coefficient 0.26 (sin^3 term, complement branch of the series).
    const ZetaSeries nominal(3.0 * M_PI / 8.0, {{3, -0.26, 1}}, T);
    const Unitary2 analytic_nominal = propagator_xy(nominal, problem, T);
    const Unitary2 oracle_nominal = propagate_numeric(make_sampler(nominal, problem), T).u;
    const double agree =
        gate_fidelity(analytic_nominal.matrix(), oracle_nominal.matrix()).value;
    const double fid_nominal = gate_fidelity(oracle_nominal.matrix(), gates::hadamard()).value;

    // Calibrating xi_plus(T) = 3 pi / 2 lands on the nominal 0.26 within
    // its rounding.
    const ZetaSeries templ(3.0 * M_PI / 8.0, {{3, 0.0, 1}}, T);
    const CalibrationResult cal = calibrate_scalar(
        templ, 0, CalibrationObjective::XiPlusAtT, problem, 1.5 * M_PI, -0.40, -0.02);
    const double amplitude = cal.series.terms()[0].amplitude;
    const Unitary2 oracle_cal = propagate_numeric(make_sampler(cal.series, problem), T).u;
    const Unitary2 analytic_cal = propagator_xy(cal.series, problem, T);
    const double fid_cal = gate_fidelity(oracle_cal.matrix(), gates::hadamard()).value;
    const double fid_cal_analytic = gate_fidelity(analytic_cal.matrix(), gates::hadamard()).value;

    const bool pass = agree >= 0.999 && fid_nominal >= 0.999 && fid_cal >= 0.999 &&
                      fid_cal_analytic >= 0.999 && std::abs(std::abs(amplitude) - 0.26) < 0.02;
    report("drive-frame-hadamard", pass,
           fmt("|A| = %.4f, H fidelity %.6f (nominal %.6f)", std::abs(amplitude), fid_cal,
               fid_nominal));
}

// --- criterion 7: individual control (Delta = 2 pi rad/us, 0.95 us) ---------
void individual_control() {
    const double T = 0.95, delta = kTwoPi;
    const ZetaSeries series(M_PI / 4.0, {{3, -0.29, 1}}, T);
    const ControlProblem problem =
        ControlProblem::sigma_xy(Waveform::constant(delta), Waveform::constant(0.0), T);
    const auto drive = [&](double t) { return omega_prime_from_zeta(series, problem, t); };
    const Unitary2 u_r = propagate_numeric(make_resonant_sampler(drive, 0.0, T), T).u;
    const Unitary2 u_d = propagate_numeric(make_detuned_sampler(drive, 0.0, delta, T), T).u;
    const double fid_r = gate_fidelity(u_r.matrix(), gates::pauli_x()).value;
    const double fid_d = gate_fidelity(u_d.matrix(), gates::identity()).value;
    const double area = 2.0 * integrate_adaptive_simpson(drive, 0.0, T);

    // The designer re-derives the reference pair from the targets alone.
    const IndividualControlDesign redesign =
        design_individual_control(M_PI, 2.0 * M_PI, delta, IcVariant::PhaseGate, 0.0, 0.95);
    const double a3 = redesign.schedule.series.terms()[0].amplitude;
    const double t_design = redesign.schedule.duration();

    const bool pass = fid_r >= 0.999 && fid_d >= 0.999 && std::abs(a3 - (-0.29)) < 0.02 &&
                      std::abs(t_design - 0.95) < 0.02;
    report("individual-control", pass,
           fmt("NOT %.6f / identity %.6f, area %.4f pi", fid_r, fid_d, area / M_PI) +
               fmt(", redesigned (A, T) = (%.4f, %.4f)", a3, t_design));
}

// --- criterion 8: square-pulse consistency ----------------------------------
void square_pulse() {
    const double delta = kTwoPi;
    const ControlProblem problem =
        ControlProblem::sigma_xy(Waveform::constant(delta), Waveform::constant(0.0), 1.0);
    const ZetaSeries flat(M_PI / 6.0, {}, 1.0);
    double worst = 0.0;
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double w = omega_prime_from_zeta(flat, problem, t);
        worst = std::max(worst, std::abs(std::abs(w) * std::sqrt(3.0) / delta - 1.0));
    }
    report("square-pulse", worst < 1e-9, fmt("max relative error of |w| sqrt(3)/Delta: %.3e", worst));
}

// --- criterion 9: Clifford closure -------------------------------------------
void clifford_closure() {
    const auto table = clifford_table(kTwoPi);
    bool distinct = table.size() == 24;
    for (std::size_t i = 0; i < table.size() && distinct; ++i) {
        for (std::size_t j = i + 1; j < table.size(); ++j) {
            if (gate_fidelity(table[i].target.matrix(), table[j].target.matrix()).value >
                1.0 - 1e-7) {
                distinct = false;
                break;
            }
        }
    }
    bool closed = true;
    for (const auto& a : table) {
        for (const auto& b : table) {
            const Eigen::Matrix2cd product = a.target.matrix() * b.target.matrix();
            bool found = false;
            for (const auto& c : table) {
                if (gate_fidelity(product, c.target.matrix()).value > 1.0 - 1e-7) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                closed = false;
                break;
            }
        }
        if (!closed) break;
    }
    // Every entry's schedule sequence realizes its target through the oracle,
    // with smooth exchange pulses end to end.
    double min_fid = 1.0, worst_endpoint = 0.0;
    for (const auto& entry : table) {
        Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
        for (const auto& schedule : entry.schedules) {
            const HamiltonianSampler sampler = make_st_sampler(schedule.series, kTwoPi);
            u = propagate_numeric(sampler, schedule.duration(), 1 << 13).u.matrix() * u;
            worst_endpoint = std::max({worst_endpoint, std::abs(schedule.controllable.front()),
                                       std::abs(schedule.controllable.back())});
        }
        min_fid = std::min(min_fid, gate_fidelity(u, entry.target.matrix()).value);
    }
    const bool pass = distinct && closed && min_fid >= 0.999 && worst_endpoint < 1e-6 * kTwoPi;
    report("clifford-closure", pass,
           fmt("24 distinct, closed; min oracle fidelity %.6f, max |J endpoint| %.1e", min_fid,
               worst_endpoint));
}

// --- criterion 10: specialization identity -----------------------------------
void specialization_identity() {
    SplitMix64 rng(4242);
    int checked = 0, equal = 0;
    while (checked < 1000) {
        const double T = rng.uniform(0.4, 1.4);
        const double h = rng.uniform(M_PI, 3.0 * M_PI);
        const ZetaSeries series(rng.uniform(M_PI / 8.0, 3.0 * M_PI / 8.0),
                                {{rng.uniform_int(2, 3), rng.uniform(-0.25, 0.25),
                                  rng.uniform_int(1, 3)}},
                                T);
        const double t = rng.uniform(0.0, T);
        const ControlProblem problem =
            ControlProblem::sigma_z(Waveform::constant(h), Waveform::constant(0.0), T);
        try {
            const double j = j_from_zeta(series, h, t);
            const double d = delta_from_zeta(series, problem, t);
            ++checked;
            if (j == d) ++equal;
        } catch (const DivergenceError&) {
        } catch (const DomainError&) {
        }
    }
    report("specialization-identity", equal == 1000,
           fmt("%0.f of 1000 evaluations bit-identical", static_cast<double>(equal)));
}

// --- criterion 11: calibration reproduction ----------------------------------
void calibration_reproduction() {
    const StGateBuild had = build_st_gate(StGateKind::Hadamard, kTwoPi);
    const double a3_h = had.calibrated.terms()[1].amplitude;
    const StGateBuild xrot = build_x_rotation(M_PI / 2.0, kTwoPi);
    const double a3_x = xrot.calibrated.terms()[0].amplitude;
    const bool pass = std::abs(a3_h - 0.18) < 0.02 && std::abs(a3_x - 0.24) < 0.02;
    report("calibration-reproduction", pass,
           fmt("Hadamard A3 = %.4f (0.18 +/- 0.02), x-rotation A3 = %.4f (0.24 +/- 0.02)", a3_h,
               a3_x));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    oracle_equivalence();
    rabi_reduction();
    landau_zener();
    not_scenario();
    st_hadamard();
    xy_hadamard();
    individual_control();
    square_pulse();
    clifford_closure();
    specialization_identity();
    calibration_reproduction();
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
