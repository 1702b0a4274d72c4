#include <doctest.h>

#include <cmath>

#include "zetapulse/designer.hpp"
#include "zetapulse/errors.hpp"
#include "zetapulse/metrics.hpp"
#include "zetapulse/numerics.hpp"
#include "zetapulse/oracle.hpp"

using namespace zetapulse;

namespace {
constexpr double kH = 2.0 * M_PI;  // rad/us, the exchange-qubit sigma_x envelope

// Literal transcription of the J formula, kept independent of the shared
// synthesis core on purpose.
double j_literal(const ZetaSeries& series, double h, double t) {
    const ZetaTriple z = series.eval(t);
    const double root = std::sqrt(1.0 - z.d1 * z.d1 / (h * h));
    return z.d2 / (2.0 * h * root) - h * root * std::cos(2.0 * z.value) / std::sin(2.0 * z.value);
}
}  // namespace

TEST_CASE("J closed forms for constant zeta") {
    SUBCASE("pi/4 gives zero exchange") {
        const ZetaSeries series(M_PI / 4.0, {}, 1.0);
        for (double t : {0.0, 0.4, 1.0}) CHECK(std::abs(j_from_zeta(series, kH, t)) < 1e-12);
    }
    SUBCASE("3pi/8 gives +h") {
        const ZetaSeries series(3.0 * M_PI / 8.0, {}, 1.0);
        CHECK(j_from_zeta(series, kH, 0.5) == doctest::Approx(kH).epsilon(1e-12));
    }
    CHECK_THROWS_AS(j_from_zeta(ZetaSeries(M_PI / 4.0, {}, 1.0), -1.0, 0.5), EnvelopeError);
}

TEST_CASE("J is exactly the sigma-z specialization and matches the literal formula") {
    SplitMix64 rng(99);
    int checked = 0;
    while (checked < 1000) {
        const double T = rng.uniform(0.4, 1.4);
        const ZetaSeries series(rng.uniform(M_PI / 8.0, 3.0 * M_PI / 8.0),
                                {{rng.uniform_int(2, 3), rng.uniform(-0.25, 0.25),
                                  rng.uniform_int(1, 3)}},
                                T);
        const double t = rng.uniform(0.0, T);
        const ControlProblem problem =
            ControlProblem::sigma_z(Waveform::constant(kH), Waveform::constant(0.0), T);
        double j;
        try {
            j = j_from_zeta(series, kH, t);
        } catch (const DivergenceError&) {
            continue;
        }
        CHECK(j == delta_from_zeta(series, problem, t));  // bit-identical
        CHECK(j == doctest::Approx(j_literal(series, kH, t)).epsilon(1e-12));
        ++checked;
    }
}

TEST_CASE("calibration returns a template that already meets the target") {
    const double T = 0.69;
    const ControlProblem problem =
        ControlProblem::sigma_z(Waveform::constant(kH), Waveform::constant(0.0), T);
    const ZetaSeries templ(M_PI / 4.0, {{3, -0.3824, 1}}, T);
    const double target = xi_integrals(templ, problem, T).xi_plus;
    const CalibrationResult result = calibrate_scalar(templ, 0, CalibrationObjective::XiPlusAtT,
                                                      problem, target, -0.3824, -0.30);
    CHECK(result.iterations <= 1);
    CHECK(result.series.terms()[0].amplitude == doctest::Approx(-0.3824).epsilon(1e-3));
    CHECK(std::abs(result.achieved - target) < 1e-6);
}

TEST_CASE("calibration error paths") {
    const double T = 0.69;
    const ControlProblem problem =
        ControlProblem::sigma_z(Waveform::constant(kH), Waveform::constant(0.0), T);
    const ZetaSeries templ(M_PI / 4.0, {{3, 0.0, 1}}, T);
    SUBCASE("no sign change in the bracket") {
        CHECK_THROWS_AS(calibrate_scalar(templ, 0, CalibrationObjective::XiPlusAtT, problem,
                                         100.0, -0.1, 0.1),
                        BracketError);
    }
    SUBCASE("bracket leaving the admissible domain names the amplitude") {
        try {
            calibrate_scalar(templ, 0, CalibrationObjective::XiPlusAtT, problem, M_PI, -0.9, 0.0);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("-0.9") != std::string::npos);
        }
    }
}

TEST_CASE("S-rotation calibration reproduces the reference coefficient") {
    const StGateBuild build = build_x_rotation(M_PI / 2.0, kH);
    const double a3 = build.calibrated.terms()[0].amplitude;
    CHECK(std::abs(a3 - 0.24) < 0.02);
    CHECK(build.report.fidelity_numeric >= 0.999);
    CHECK(build.report.fidelity_analytic >= 0.999);
    // Duration recovered from the reference amplitude profile.
    CHECK(build.schedules[0].duration() == doctest::Approx(0.6084).epsilon(2e-3));
}

TEST_CASE("Hadamard build matches the reference parameter set") {
    const StGateBuild build = build_st_gate(StGateKind::Hadamard, kH);
    REQUIRE(build.schedules.size() == 1);
    const auto& terms = build.calibrated.terms();
    REQUIRE(terms.size() == 2);
    CHECK(std::abs(terms[0].amplitude - (-0.22)) < 0.02);  // curvature term
    CHECK(std::abs(terms[1].amplitude - 0.18) < 0.02);     // calibrated term
    CHECK(build.report.fidelity_numeric >= 0.999);
    CHECK(std::abs(build.report.boundary_start) < 1e-6 * kH);
    CHECK(std::abs(build.report.boundary_end) < 1e-6 * kH);
    // xi lands on pi/2 modulo 2 pi.
    const double folded = std::fmod(build.report.xi_at_t.xi_plus, 2.0 * M_PI);
    CHECK(std::abs(folded - M_PI / 2.0) < 1e-3);
    CHECK(std::abs(build.report.xi_at_t.xi_plus - build.report.xi_at_t.xi_minus) < 1e-9);
}

TEST_CASE("NOT build stays in the reference family") {
    const StGateBuild build = build_st_gate(StGateKind::Not, kH);
    CHECK(std::abs(build.calibrated.terms()[0].amplitude - (-0.38)) < 0.02);
    CHECK(build.report.fidelity_numeric >= 0.999);
    CHECK(std::abs(build.report.boundary_start) < 1e-6 * kH);
}

TEST_CASE("S sequence composes to diag(1, i) with smooth seams") {
    const StGateBuild build = build_st_gate(StGateKind::S, kH);
    REQUIRE(build.schedules.size() == 3);
    CHECK(build.report.fidelity_numeric >= 0.999);
    CHECK(gate_fidelity(build.report.achieved_numeric.matrix(), gates::s_gate()).value >= 0.999);
    CHECK(build.max_seam_jump < 1e-6 * kH);
    for (const auto& schedule : build.schedules) {
        CHECK(std::abs(schedule.controllable.front()) < 1e-6 * kH);
        CHECK(std::abs(schedule.controllable.back()) < 1e-6 * kH);
    }
}

TEST_CASE("T sequence hits the pi/8 phase gate") {
    const StGateBuild build = build_st_gate(StGateKind::T, kH);
    CHECK(build.report.fidelity_numeric >= 0.999);
}

TEST_CASE("gate designs rescale with the envelope") {
    // All dimensionless quantities depend on h*T only, so halving h doubles
    // every duration and leaves the calibrated amplitudes unchanged.
    const StGateBuild build = build_st_gate(StGateKind::Hadamard, kH / 2.0);
    CHECK(build.schedules[0].duration() == doctest::Approx(2.0 * 0.942).epsilon(1e-9));
    CHECK(build.calibrated.terms()[0].amplitude == doctest::Approx(-0.2218).epsilon(1e-3));
    CHECK(build.calibrated.terms()[1].amplitude == doctest::Approx(0.1819).epsilon(1e-2));
    CHECK(build.report.fidelity_numeric >= 0.999);

    const StGateBuild xrot = build_x_rotation(M_PI / 2.0, kH / 2.0);
    CHECK(xrot.schedules[0].duration() == doctest::Approx(2.0 * 0.6084).epsilon(2e-3));
    CHECK(std::abs(xrot.calibrated.terms()[0].amplitude - 0.24) < 0.02);
}

TEST_CASE("clifford table structure") {
    const auto table = clifford_table(kH);
    REQUIRE(table.size() == 24);

    SUBCASE("projectively distinct") {
        for (std::size_t i = 0; i < table.size(); ++i) {
            for (std::size_t j = i + 1; j < table.size(); ++j) {
                CHECK(gate_fidelity(table[i].target.matrix(), table[j].target.matrix()).value <
                      1.0 - 1e-7);
            }
        }
    }
    SUBCASE("closed under composition, 24 x 24") {
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
                CHECK(found);
            }
        }
    }
    SUBCASE("element orders divide the group exponent 12") {
        for (const auto& entry : table) {
            Eigen::Matrix2cd power = Eigen::Matrix2cd::Identity();
            int order = 0;
            for (int k = 1; k <= 12; ++k) {
                power = entry.target.matrix() * power;
                if (gate_fidelity(power, gates::identity()).value > 1.0 - 1e-7) {
                    order = k;
                    break;
                }
            }
            REQUIRE(order > 0);
            CHECK(12 % order == 0);
        }
    }
    SUBCASE("generator words behave: HH and SSSS are the identity") {
        const Eigen::Matrix2cd h2 = gates::hadamard() * gates::hadamard();
        CHECK(gate_fidelity(h2, gates::identity()).value == doctest::Approx(1.0));
        Eigen::Matrix2cd s4 = Eigen::Matrix2cd::Identity();
        for (int i = 0; i < 4; ++i) s4 = gates::s_gate() * s4;
        CHECK(gate_fidelity(s4, gates::identity()).value == doctest::Approx(1.0));
    }
}

TEST_CASE("square pulse limit of the x-rotation variant") {
    // The x-rotation branch: fixed detuning -|delta| on the detuned subspace.
    const double delta = 2.0 * M_PI;
    const ControlProblem problem =
        ControlProblem::sigma_xy(Waveform::constant(-delta), Waveform::constant(0.0), 1.0);
    const ZetaSeries flat(M_PI / 6.0, {}, 1.0);
    const double w = omega_prime_from_zeta(flat, problem, 0.37);
    CHECK(std::abs(std::abs(w) * std::sqrt(3.0) / delta - 1.0) < 1e-9);

    // Detuned evolution matches the printed two-level form at arbitrary t.
    const double t_probe = 0.41;
    const Unitary2 u_d = propagator_xy(flat, problem, t_probe);
    const double xi = xi_integrals(flat, problem, t_probe).xi_plus;
    CHECK((u_d.matrix() - detuned_xrot_form(xi)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("individual control: x-rotation variant designs a NOT plus identity") {
    const IndividualControlDesign design =
        design_individual_control(M_PI, M_PI, 2.0 * M_PI, IcVariant::XRotation);
    CHECK(design.resonant_report.fidelity_numeric >= 0.999);
    CHECK(design.detuned_report.fidelity_numeric >= 0.999);
    const double folded = std::fmod(std::abs(design.pulse_area), 2.0 * M_PI);
    CHECK(std::abs(folded - M_PI) < 1e-3);
    // Predicted detuned unitary agrees with the oracle and factors into the
    // closed pi/6-boundary form at the analytic phase.
    CHECK(phase_aligned_distance(design.predicted_detuned.matrix(),
                                 design.detuned_report.achieved_numeric.matrix()) < 1e-6);
    CHECK((design.predicted_detuned.matrix() - detuned_xrot_form(design.xi_at_t))
              .cwiseAbs()
              .maxCoeff() < 1e-6);
}

TEST_CASE("individual control: phase-gate variant reproduces the reference design") {
    const IndividualControlDesign design = design_individual_control(
        M_PI, 2.0 * M_PI, 2.0 * M_PI, IcVariant::PhaseGate, 0.0, 0.95);
    CHECK(std::abs(design.schedule.series.terms()[0].amplitude - (-0.29)) < 0.02);
    CHECK(std::abs(design.schedule.duration() - 0.95) < 0.02);
    CHECK(design.resonant_report.fidelity_numeric >= 0.999);
    CHECK(design.detuned_report.fidelity_numeric >= 0.999);
    // Phase-gate variant: drive vanishes at both ends.
    CHECK(std::abs(design.schedule.controllable.front()) < 1e-9);
    CHECK(std::abs(design.schedule.controllable.back()) < 1e-9);
}

TEST_CASE("individual control rejects impossible targets") {
    CHECK_THROWS_AS(design_individual_control(M_PI, M_PI, 0.0, IcVariant::XRotation),
                    EnvelopeError);
    // A duration window far too short for any admissible solution.
    CHECK_THROWS_AS(
        design_individual_control(M_PI, M_PI, 2.0 * M_PI, IcVariant::XRotation, 0.0, 0.05),
        CalibrationError);
}
