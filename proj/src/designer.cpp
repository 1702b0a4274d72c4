#include "zetapulse/designer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "zetapulse/errors.hpp"
#include "zetapulse/metrics.hpp"
#include "zetapulse/numerics.hpp"
#include "zetapulse/oracle.hpp"

namespace zetapulse {

namespace {

constexpr double kTwoPiRef = 2.0 * M_PI;  // reference envelope of the figure durations
constexpr double kHadamardDurationRef = 0.942;
constexpr double kNotDurationRef = 0.69;
constexpr double kHadamardA2FreqMult = 4;
constexpr double kXRotRefAmplitude = 0.24;

double objective_value(const ZetaSeries& series, CalibrationObjective objective,
                       const ControlProblem& problem) {
    switch (objective) {
        case CalibrationObjective::XiMinusAtT:
            return xi_integrals(series, problem, problem.duration).xi_minus;
        case CalibrationObjective::XiPlusAtT:
            return xi_integrals(series, problem, problem.duration).xi_plus;
        case CalibrationObjective::PulseArea: {
            if (problem.axis != ControlAxis::SigmaXY) {
                throw DomainError("PulseArea objective needs a sigma-x/y problem");
            }
            return integrate_adaptive_simpson(
                [&](double t) { return omega_prime_from_zeta(series, problem, t); }, 0.0,
                problem.duration);
        }
    }
    throw DomainError("unknown calibration objective");
}

std::function<double(double)> problem_envelope(const ControlProblem& problem) {
    if (problem.axis == ControlAxis::SigmaZ) {
        return [problem](double t) { return problem.envelope.value(t); };
    }
    return [problem](double t) { return std::abs(problem.delta_pp(t)); };
}

void require_admissible_across_bracket(const ZetaSeries& templ, std::size_t free_term,
                                       const ControlProblem& problem, double lo, double hi) {
    for (double a : {lo, 0.5 * (lo + hi), hi}) {
        const ZetaSeries probe = templ.with_amplitude(free_term, a);
        const AdmissibilityReport report = check_admissible(probe, problem_envelope(problem), 512);
        if (!report.admissible) {
            throw DomainError("calibration bracket leaves the admissible domain at amplitude " +
                              std::to_string(a));
        }
    }
}

}  // namespace

std::string to_string(ScheduleAxis axis) {
    switch (axis) {
        case ScheduleAxis::SigmaZ: return "sigma_z";
        case ScheduleAxis::SigmaXY: return "sigma_xy";
        case ScheduleAxis::St: return "st";
        case ScheduleAxis::Individual: return "individual";
    }
    return "unknown";
}

PulseSchedule synthesize_schedule(const ZetaSeries& series, const ControlProblem& problem,
                                  ScheduleAxis axis, int grid_points) {
    const AdmissibilityReport report = check_admissible(series, problem_envelope(problem),
                                                        grid_points);
    if (!report.admissible) {
        const auto& v = report.violations.front();
        throw DomainError("schedule synthesis: series inadmissible (" + to_string(v.kind) +
                          " at t = " + std::to_string(v.t) + ")");
    }
    PulseSchedule schedule{axis, {}, {}, {}, {}, series, problem};
    const double T = problem.duration;
    schedule.time.reserve(grid_points + 1);
    for (int i = 0; i <= grid_points; ++i) {
        const double t = T * static_cast<double>(i) / grid_points;
        const HamiltonianEntries e = hamiltonian_entries(series, problem, t);
        schedule.time.push_back(t);
        if (problem.axis == ControlAxis::SigmaZ) {
            schedule.controllable.push_back(e.diag);
            schedule.envelope.push_back(e.offdiag);
        } else {
            schedule.controllable.push_back(e.offdiag);
            schedule.envelope.push_back(e.diag);
        }
        schedule.phase.push_back(e.phi);
    }
    return schedule;
}

double j_from_zeta(const ZetaSeries& series, double h, double t) {
    if (!(h > 0.0)) {
        throw EnvelopeError("j_from_zeta: h must be positive");
    }
    const ControlProblem problem =
        ControlProblem::sigma_z(Waveform::constant(h), Waveform::constant(0.0), series.duration());
    return delta_from_zeta(series, problem, t);
}

CalibrationResult calibrate_scalar(const ZetaSeries& templ, std::size_t free_term,
                                   CalibrationObjective objective, const ControlProblem& problem,
                                   double target, double bracket_lo, double bracket_hi) {
    require_admissible_across_bracket(templ, free_term, problem, bracket_lo, bracket_hi);
    const auto f = [&](double amplitude) {
        return objective_value(templ.with_amplitude(free_term, amplitude), objective, problem) -
               target;
    };
    const RootResult root = find_root_bracketed(f, bracket_lo, bracket_hi, 1e-14, 1e-7);
    if (std::abs(root.f) > 1e-6) {
        throw CalibrationError("calibrate_scalar: objective residual " + std::to_string(root.f) +
                               " after " + std::to_string(root.iterations) + " iterations");
    }
    return {templ.with_amplitude(free_term, root.x), root.iterations, root.f + target};
}

namespace {

ControlProblem st_problem(double h, double T) {
    return ControlProblem::sigma_z(Waveform::constant(h), Waveform::constant(0.0), T);
}

// Smallest k with base + k*pi above the flat-series phase integral, so the
// amplitude solve closes the gap from below.
double mod_pi_target(double base, double xi_flat) {
    const int k = std::max(0, static_cast<int>(std::ceil((xi_flat - base) / M_PI)));
    return base + k * M_PI;
}

struct CalibratedSchedule {
    PulseSchedule schedule;
    ZetaSeries series;
    XiPair xi;
};

CalibratedSchedule build_st_schedule(const ZetaSeries& templ, std::size_t free_term, double h,
                                     double xi_target, double lo, double hi) {
    const ControlProblem problem = st_problem(h, templ.duration());
    const CalibrationResult cal =
        calibrate_scalar(templ, free_term, CalibrationObjective::XiPlusAtT, problem, xi_target, lo,
                         hi);
    PulseSchedule schedule = synthesize_schedule(cal.series, problem, ScheduleAxis::St);
    const XiPair xi = xi_integrals(cal.series, problem, templ.duration());
    return {std::move(schedule), cal.series, xi};
}

CalibratedSchedule build_hadamard_schedule(double h) {
    const double T = kHadamardDurationRef * kTwoPiRef / h;
    // J(0) = J(T) = 0 through the endpoint curvature: zeta_ddot(0) =
    // 2 h^2 cot(2 zeta0), supplied by the n = 2 term alone.
    const double a2_rate = kHadamardA2FreqMult * M_PI / T;
    const double zeta0 = 3.0 * M_PI / 8.0;
    const double a2 = h * h * std::cos(2.0 * zeta0) / std::sin(2.0 * zeta0) / (a2_rate * a2_rate);
    const ZetaSeries templ(zeta0,
                           {{2, a2, static_cast<int>(kHadamardA2FreqMult)}, {3, 0.0, 1}}, T);
    const ControlProblem problem = st_problem(h, T);
    const double xi_flat = xi_integrals(templ, problem, T).xi_plus;
    const double target = mod_pi_target(M_PI / 2.0, xi_flat);
    return build_st_schedule(templ, 1, h, target, 0.005, 0.30);
}

CalibratedSchedule build_not_schedule(double h) {
    const double T = kNotDurationRef * kTwoPiRef / h;
    const ZetaSeries templ(M_PI / 4.0, {{3, 0.0, 1}}, T);
    const ControlProblem problem = st_problem(h, T);
    const double xi_flat = xi_integrals(templ, problem, T).xi_plus;
    const double target = mod_pi_target(M_PI / 2.0, xi_flat);
    return build_st_schedule(templ, 0, h, target, -0.6, -0.02);
}

CalibratedSchedule build_xrot_schedule(double angle, double h) {
    double beta = 0.5 * std::fmod(std::fmod(angle, 2.0 * M_PI) + 2.0 * M_PI, 2.0 * M_PI);
    if (beta == 0.0) {
        throw DomainError("build_x_rotation: angle must not be a multiple of 2 pi");
    }
    const double target = beta + M_PI;
    // Duration from the reference amplitude profile at this target.
    const auto xi_ref = [&](double T) {
        const ZetaSeries probe(M_PI / 4.0, {{3, kXRotRefAmplitude, 1}}, T);
        return xi_integrals(probe, st_problem(h, T), T).xi_plus - target;
    };
    const double t_lo = 1.05 / h;
    const double t_hi = 1.6 * (beta + M_PI) / h;
    const RootResult root = find_root_bracketed(xi_ref, t_lo, t_hi, 1e-12, 1e-9);
    const double T = root.x;
    const ZetaSeries templ(M_PI / 4.0, {{3, 0.0, 1}}, T);
    return build_st_schedule(templ, 0, h, target, 0.005, 0.45);
}

StGateBuild assemble_st_build(std::vector<CalibratedSchedule> parts, std::size_t calibrated_index,
                              const Eigen::Matrix2cd& target, double h) {
    StGateBuild build{{}, {}, parts[calibrated_index].series, 0.0};
    Eigen::Matrix2cd analytic = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd numeric = Eigen::Matrix2cd::Identity();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& part = parts[i];
        const ControlProblem problem = part.schedule.problem;
        analytic = propagator_z(part.series, problem, problem.duration).matrix() * analytic;
        numeric = propagate_numeric(make_st_sampler(part.series, h), problem.duration).u.matrix() *
                  numeric;
        if (i > 0) {
            build.max_seam_jump =
                std::max(build.max_seam_jump, std::abs(part.schedule.controllable.front() -
                                                       parts[i - 1].schedule.controllable.back()));
        }
        build.schedules.push_back(part.schedule);
    }
    build.report.target = target;
    build.report.achieved_analytic = Unitary2::from_matrix(analytic);
    build.report.achieved_numeric = Unitary2::from_matrix(numeric);
    build.report.fidelity_analytic = gate_fidelity(analytic, target).value;
    build.report.fidelity_numeric = gate_fidelity(numeric, target).value;
    build.report.boundary_start = build.schedules.front().controllable.front();
    build.report.boundary_end = build.schedules.back().controllable.back();
    build.report.xi_at_t = parts[calibrated_index].xi;
    return build;
}

}  // namespace

StGateBuild build_st_gate(StGateKind kind, double h) {
    if (!(h > 0.0)) {
        throw EnvelopeError("build_st_gate: h must be positive");
    }
    switch (kind) {
        case StGateKind::Hadamard:
            return assemble_st_build({build_hadamard_schedule(h)}, 0, gates::hadamard(), h);
        case StGateKind::Not:
            return assemble_st_build({build_not_schedule(h)}, 0, gates::pauli_x(), h);
        case StGateKind::S: {
            auto had = build_hadamard_schedule(h);
            auto mid = build_xrot_schedule(M_PI / 2.0, h);
            return assemble_st_build({had, mid, had}, 1, gates::s_gate(), h);
        }
        case StGateKind::T: {
            auto had = build_hadamard_schedule(h);
            auto mid = build_xrot_schedule(M_PI / 4.0, h);
            return assemble_st_build({had, mid, had}, 1, gates::t_gate(), h);
        }
    }
    throw DomainError("build_st_gate: unknown gate kind");
}

StGateBuild build_x_rotation(double angle, double h) {
    if (!(h > 0.0)) {
        throw EnvelopeError("build_x_rotation: h must be positive");
    }
    return assemble_st_build({build_xrot_schedule(angle, h)}, 0, gates::rx(angle), h);
}

std::vector<CliffordEntry> clifford_table(double h) {
    const StGateBuild had = build_st_gate(StGateKind::Hadamard, h);
    const StGateBuild s = build_st_gate(StGateKind::S, h);
    const Eigen::Matrix2cd gen_h = gates::hadamard();
    const Eigen::Matrix2cd gen_s = gates::s_gate();

    std::vector<CliffordEntry> table;
    table.push_back({"", {}, Unitary2::identity()});
    const auto known = [&](const Eigen::Matrix2cd& u) {
        return std::any_of(table.begin(), table.end(), [&](const CliffordEntry& e) {
            return gate_fidelity(e.target.matrix(), u).value > 1.0 - 1e-7;
        });
    };
    // Breadth-first closure over the generator words; the group has exactly
    // 24 projective elements.
    std::size_t cursor = 0;
    while (cursor < table.size() && table.size() < 24) {
        const CliffordEntry base = table[cursor++];
        for (const char letter : {'H', 'S'}) {
            const Eigen::Matrix2cd& gen = letter == 'H' ? gen_h : gen_s;
            const Eigen::Matrix2cd candidate = gen * base.target.matrix();
            if (known(candidate)) continue;
            CliffordEntry entry{base.word + letter, base.schedules,
                                Unitary2::from_matrix(candidate)};
            const auto& part = letter == 'H' ? had.schedules : s.schedules;
            entry.schedules.insert(entry.schedules.end(), part.begin(), part.end());
            table.push_back(std::move(entry));
            if (table.size() == 24) break;
        }
    }
    if (table.size() != 24) {
        throw CalibrationError("clifford_table: generator closure did not reach 24 elements");
    }
    return table;
}

Eigen::Matrix2cd detuned_phase_gate_form(double xi) {
    Eigen::Matrix2cd m;
    m << std::polar(1.0, -xi), 0, 0, std::polar(1.0, xi);
    return m;
}

Eigen::Matrix2cd detuned_xrot_form(double xi) {
    const complexd i1(0.0, 1.0);
    const double c = std::cos(xi), s = std::sin(xi);
    Eigen::Matrix2cd m;
    m << c + i1 * (std::sqrt(3.0) / 2.0) * s, i1 * 0.5 * s, i1 * 0.5 * s,
        c - i1 * (std::sqrt(3.0) / 2.0) * s;
    return m;
}

namespace {

Eigen::Matrix2cd axis_rotation(double angle, double phi) {
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    const complexd i1(0.0, 1.0);
    Eigen::Matrix2cd m;
    m << c, -i1 * s * std::polar(1.0, -phi), -i1 * s * std::polar(1.0, phi), c;
    return m;
}

struct IcCandidate {
    double amplitude;
    double duration;
    double drive_integral;  // integral of w over [0, T]
    double xi;
};

// Amplitude solve at fixed duration: xi_plus(T) == xi_target.
std::optional<double> ic_solve_amplitude(double zeta0, double delta, double phi, double T,
                                         double xi_target, double lo, double hi) {
    const ControlProblem problem =
        ControlProblem::sigma_xy(Waveform::constant(delta), Waveform::constant(phi), T);
    const ZetaSeries templ(zeta0, {{3, 0.0, 1}}, T);
    try {
        const CalibrationResult cal = calibrate_scalar(
            templ, 0, CalibrationObjective::XiPlusAtT, problem, xi_target, lo, hi);
        return cal.series.terms()[0].amplitude;
    } catch (const BracketError&) {
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    } catch (const DivergenceError&) {
        return std::nullopt;
    }
}

std::optional<IcCandidate> ic_evaluate(double zeta0, double delta, double phi, double T,
                                       double xi_target, double lo, double hi) {
    const auto amplitude = ic_solve_amplitude(zeta0, delta, phi, T, xi_target, lo, hi);
    if (!amplitude) return std::nullopt;
    const ControlProblem problem =
        ControlProblem::sigma_xy(Waveform::constant(delta), Waveform::constant(phi), T);
    const ZetaSeries series(zeta0, {{3, *amplitude, 1}}, T);
    const double drive = integrate_adaptive_simpson(
        [&](double t) { return omega_prime_from_zeta(series, problem, t); }, 0.0, T);
    return IcCandidate{*amplitude, T, drive, xi_target};
}

}  // namespace

IndividualControlDesign design_individual_control(double pulse_area_target,
                                                  double detuned_phase_target, double delta,
                                                  IcVariant variant, double phi,
                                                  double duration_hint) {
    if (delta == 0.0) {
        throw EnvelopeError("design_individual_control: delta must be nonzero");
    }
    const double zeta0 = variant == IcVariant::PhaseGate ? M_PI / 4.0 : M_PI / 6.0;
    // The x-rotation variant lives on the branch where the nearby transition
    // sits below the drive: fixed detuning -|delta|. That branch is the one
    // whose detuned evolution takes the printed two-level form at
    // zeta0 = pi/6 exactly (and the square-pulse |w| = delta/sqrt(3) limit).
    const double delta_eff = variant == IcVariant::XRotation ? -std::abs(delta) : delta;
    const double scale = kTwoPiRef / std::abs(delta);
    const double t_lo = duration_hint > 0 ? 0.8 * duration_hint : 0.3 * scale;
    const double t_hi = duration_hint > 0 ? 1.25 * duration_hint : 1.9 * scale;
    const int t_steps = 48;

    // Area condition: the resonant Bloch angle 2*|W| matches the target
    // modulo 2 pi, i.e. |W| = target/2 (mod pi). Detuned condition: xi(T)
    // matches the target modulo pi, scanned over the reachable ladder.
    const auto area_err = [&](const IcCandidate& c) {
        return std::sin(std::abs(c.drive_integral) - 0.5 * pulse_area_target);
    };
    const double base = std::fmod(std::fmod(detuned_phase_target, M_PI) + M_PI, M_PI);

    std::optional<IcCandidate> solution;
    for (int j = 0; j < 7 && !solution; ++j) {
        const double xi_target = base + j * M_PI;
        if (xi_target < 0.25) continue;
        for (const auto& [lo, hi] : {std::pair{-0.42, -0.02}, std::pair{0.02, 0.42}}) {
            std::optional<std::pair<double, double>> previous;  // (T, area_err)
            for (int i = 0; i <= t_steps; ++i) {
                const double T = t_lo + (t_hi - t_lo) * i / t_steps;
                const auto cand = ic_evaluate(zeta0, delta_eff, phi, T, xi_target, lo, hi);
                if (!cand) {
                    previous.reset();
                    continue;
                }
                const double err = area_err(*cand);
                if (previous && previous->second * err < 0) {
                    double ta = previous->first, tb = T;
                    for (int it = 0; it < 60; ++it) {
                        const double tm = 0.5 * (ta + tb);
                        const auto mid = ic_evaluate(zeta0, delta_eff, phi, tm, xi_target, lo, hi);
                        if (!mid) break;
                        if (previous->second * area_err(*mid) < 0) {
                            tb = tm;
                        } else {
                            ta = tm;
                        }
                    }
                    solution = ic_evaluate(zeta0, delta_eff, phi, 0.5 * (ta + tb), xi_target, lo, hi);
                    break;
                }
                previous = {T, err};
            }
            if (solution) break;
        }
    }
    if (!solution) {
        throw CalibrationError(
            "design_individual_control: no (amplitude, duration) meets area " +
            std::to_string(pulse_area_target) + " and detuned phase " +
            std::to_string(detuned_phase_target) + " within the scanned ladder");
    }

    const double T = solution->duration;
    const ControlProblem problem =
        ControlProblem::sigma_xy(Waveform::constant(delta_eff), Waveform::constant(phi), T);
    const ZetaSeries series(zeta0, {{3, solution->amplitude, 1}}, T);

    IndividualControlDesign design{
        synthesize_schedule(series, problem, ScheduleAxis::Individual),
        Unitary2::identity(), Unitary2::identity(), {}, {},
        2.0 * solution->drive_integral,
        xi_integrals(series, problem, T).xi_plus};

    const auto drive = [series, problem](double t) {
        return omega_prime_from_zeta(series, problem, t);
    };
    design.predicted_resonant =
        Unitary2::from_matrix(axis_rotation(2.0 * solution->drive_integral, phi));
    design.predicted_detuned = propagator_xy(series, problem, T);

    const Unitary2 oracle_r = propagate_numeric(make_resonant_sampler(drive, phi, T), T).u;
    const Unitary2 oracle_d = propagate_numeric(make_detuned_sampler(drive, phi, delta_eff, T), T).u;

    const Eigen::Matrix2cd target_r = axis_rotation(pulse_area_target, phi);
    const Eigen::Matrix2cd target_d = variant == IcVariant::PhaseGate
                                          ? detuned_phase_gate_form(detuned_phase_target)
                                          : detuned_xrot_form(detuned_phase_target);

    auto fill_report = [&](GateReport& report, const Eigen::Matrix2cd& target,
                           const Unitary2& predicted, const Unitary2& oracle) {
        report.target = target;
        report.achieved_analytic = predicted;
        report.achieved_numeric = oracle;
        report.fidelity_analytic = gate_fidelity(predicted.matrix(), target).value;
        report.fidelity_numeric = gate_fidelity(oracle.matrix(), target).value;
        report.boundary_start = design.schedule.controllable.front();
        report.boundary_end = design.schedule.controllable.back();
        report.xi_at_t = xi_integrals(series, problem, T);
    };
    fill_report(design.resonant_report, target_r, design.predicted_resonant, oracle_r);
    fill_report(design.detuned_report, target_d, design.predicted_detuned, oracle_d);
    return design;
}

}  // namespace zetapulse
