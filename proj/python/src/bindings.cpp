#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "zetapulse/designer.hpp"
#include "zetapulse/errors.hpp"
#include "zetapulse/metrics.hpp"
#include "zetapulse/oracle.hpp"
#include "zetapulse/scenario.hpp"

namespace py = pybind11;
using namespace zetapulse;

namespace {

ZetaSeries make_series(double a0, const std::vector<std::tuple<int, double, int>>& terms,
                       double duration) {
    std::vector<ZetaTerm> converted;
    converted.reserve(terms.size());
    for (const auto& [n, amplitude, a] : terms) {
        converted.push_back({n, amplitude, a});
    }
    return ZetaSeries(a0, std::move(converted), duration);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Analytic pulse synthesis and exact propagators for driven two-level systems";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ValueError);
    py::register_exception<EnvelopeError>(m, "EnvelopeError", PyExc_ValueError);
    py::register_exception<BracketError>(m, "BracketError", PyExc_ValueError);
    py::register_exception<CalibrationError>(m, "CalibrationError", PyExc_RuntimeError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

    py::class_<ZetaTriple>(m, "ZetaTriple")
        .def_readonly("value", &ZetaTriple::value)
        .def_readonly("d1", &ZetaTriple::d1)
        .def_readonly("d2", &ZetaTriple::d2);

    py::class_<ZetaSeries>(m, "ZetaSeries")
        .def(py::init(&make_series), py::arg("a0"), py::arg("terms"), py::arg("duration"))
        .def("eval", &ZetaSeries::eval, py::arg("t"))
        .def_property_readonly("a0", &ZetaSeries::a0)
        .def_property_readonly("duration", &ZetaSeries::duration)
        .def_property_readonly("terms", [](const ZetaSeries& s) {
            std::vector<std::tuple<int, double, int>> out;
            for (const auto& t : s.terms()) out.emplace_back(t.power, t.amplitude, t.freq_mult);
            return out;
        });

    py::class_<AdmissibilityReport>(m, "AdmissibilityReport")
        .def_readonly("admissible", &AdmissibilityReport::admissible)
        .def_readonly("min_zeta", &AdmissibilityReport::min_zeta)
        .def_readonly("max_zeta", &AdmissibilityReport::max_zeta)
        .def_readonly("max_slope_ratio", &AdmissibilityReport::max_slope_ratio)
        .def_property_readonly("violations", [](const AdmissibilityReport& r) {
            std::vector<std::pair<double, std::string>> out;
            for (const auto& v : r.violations) out.emplace_back(v.t, to_string(v.kind));
            return out;
        });

    m.def(
        "check_admissible",
        [](const ZetaSeries& series, double envelope, int grid_points, double guard) {
            return check_admissible(series, [envelope](double) { return envelope; }, grid_points,
                                    guard);
        },
        py::arg("series"), py::arg("envelope"), py::arg("grid_points") = 4096,
        py::arg("guard") = 1e-3);

    py::class_<ControlProblem>(m, "ControlProblem")
        .def_property_readonly("duration", [](const ControlProblem& p) { return p.duration; });

    m.def(
        "sigma_z_problem",
        [](double omega, double duration, double phase_amplitude, double phase_freq_mult) {
            const Waveform phase = phase_amplitude == 0.0
                                       ? Waveform::constant(0.0)
                                       : Waveform::sine(0.0, phase_amplitude, phase_freq_mult,
                                                        duration);
            return ControlProblem::sigma_z(Waveform::constant(omega), phase, duration);
        },
        py::arg("omega"), py::arg("duration"), py::arg("phase_amplitude") = 0.0,
        py::arg("phase_freq_mult") = 2.0);
    m.def(
        "sigma_xy_problem",
        [](double delta_prime, double duration, double phase_amplitude, double phase_freq_mult) {
            const Waveform phase = phase_amplitude == 0.0
                                       ? Waveform::constant(0.0)
                                       : Waveform::sine(0.0, phase_amplitude, phase_freq_mult,
                                                        duration);
            return ControlProblem::sigma_xy(Waveform::constant(delta_prime), phase, duration);
        },
        py::arg("delta_prime"), py::arg("duration"), py::arg("phase_amplitude") = 0.0,
        py::arg("phase_freq_mult") = 2.0);

    py::class_<XiPair>(m, "XiPair")
        .def_readonly("xi_minus", &XiPair::xi_minus)
        .def_readonly("xi_plus", &XiPair::xi_plus)
        .def_readonly("t", &XiPair::t);

    py::class_<Unitary2>(m, "Unitary2")
        .def_property_readonly("matrix", [](const Unitary2& u) { return u.matrix(); });

    m.def("delta_from_zeta", &delta_from_zeta, py::arg("series"), py::arg("problem"),
          py::arg("t"));
    m.def("omega_prime_from_zeta", &omega_prime_from_zeta, py::arg("series"), py::arg("problem"),
          py::arg("t"));
    m.def("j_from_zeta", &j_from_zeta, py::arg("series"), py::arg("h"), py::arg("t"));
    m.def("xi_integrals", &xi_integrals, py::arg("series"), py::arg("problem"), py::arg("t"));
    m.def(
        "propagator_z",
        [](const ZetaSeries& s, const ControlProblem& p, double t) {
            return propagator_z(s, p, t).matrix();
        },
        py::arg("series"), py::arg("problem"), py::arg("t"));
    m.def(
        "propagator_xy",
        [](const ZetaSeries& s, const ControlProblem& p, double t) {
            return propagator_xy(s, p, t).matrix();
        },
        py::arg("series"), py::arg("problem"), py::arg("t"));
    m.def(
        "rotate_frame_ur", [](double phi) { return rotate_frame_ur(phi).matrix(); },
        py::arg("phi"));

    m.def(
        "propagate_numeric",
        [](const ZetaSeries& series, const ControlProblem& problem, int steps) {
            const HamiltonianSampler sampler = make_sampler(series, problem);
            const PropagationResult r = propagate_numeric(sampler, problem.duration, steps);
            return py::make_tuple(r.u.matrix(), r.steps, r.step_doubling_defect);
        },
        py::arg("series"), py::arg("problem"), py::arg("steps") = kDefaultOracleSteps);

    m.def(
        "state_fidelity",
        [](const Eigen::Vector2cd& psi, const Eigen::Vector2cd& target) {
            return state_fidelity(psi, target).value;
        },
        py::arg("psi"), py::arg("target"));
    m.def(
        "gate_fidelity",
        [](const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v) {
            return gate_fidelity(u, v).value;
        },
        py::arg("u"), py::arg("v"));
    m.def("unitarity_defect", &unitarity_defect, py::arg("u"));
    m.def("phase_aligned_distance", &phase_aligned_distance, py::arg("a"), py::arg("b"));

    py::class_<GateReport>(m, "GateReport")
        .def_readonly("fidelity_analytic", &GateReport::fidelity_analytic)
        .def_readonly("fidelity_numeric", &GateReport::fidelity_numeric)
        .def_readonly("boundary_start", &GateReport::boundary_start)
        .def_readonly("boundary_end", &GateReport::boundary_end)
        .def_property_readonly("target", [](const GateReport& r) { return r.target; })
        .def_property_readonly("achieved_numeric",
                               [](const GateReport& r) { return r.achieved_numeric.matrix(); })
        .def_property_readonly("xi_plus_at_t",
                               [](const GateReport& r) { return r.xi_at_t.xi_plus; });

    py::class_<PulseSchedule>(m, "PulseSchedule")
        .def_readonly("time", &PulseSchedule::time)
        .def_readonly("controllable", &PulseSchedule::controllable)
        .def_readonly("envelope", &PulseSchedule::envelope)
        .def_readonly("phase", &PulseSchedule::phase)
        .def_property_readonly("axis",
                               [](const PulseSchedule& s) { return to_string(s.axis); })
        .def_property_readonly("duration", &PulseSchedule::duration);

    py::class_<StGateBuild>(m, "StGateBuild")
        .def_readonly("schedules", &StGateBuild::schedules)
        .def_readonly("report", &StGateBuild::report)
        .def_readonly("max_seam_jump", &StGateBuild::max_seam_jump)
        .def_property_readonly("calibrated_series",
                               [](const StGateBuild& b) { return b.calibrated; });

    m.def(
        "build_st_gate",
        [](const std::string& gate, double h) {
            if (gate == "H") return build_st_gate(StGateKind::Hadamard, h);
            if (gate == "S") return build_st_gate(StGateKind::S, h);
            if (gate == "T") return build_st_gate(StGateKind::T, h);
            if (gate == "NOT") return build_st_gate(StGateKind::Not, h);
            throw DomainError("build_st_gate: unknown gate '" + gate + "'");
        },
        py::arg("gate"), py::arg("h"));
    m.def("build_x_rotation", &build_x_rotation, py::arg("angle"), py::arg("h"));

    m.def(
        "clifford_table",
        [](double h) {
            std::vector<py::tuple> out;
            for (const auto& e : clifford_table(h)) {
                out.push_back(py::make_tuple(e.word, e.schedules.size(), e.target.matrix()));
            }
            return out;
        },
        py::arg("h"));

    py::class_<IndividualControlDesign>(m, "IndividualControlDesign")
        .def_readonly("schedule", &IndividualControlDesign::schedule)
        .def_readonly("resonant_report", &IndividualControlDesign::resonant_report)
        .def_readonly("detuned_report", &IndividualControlDesign::detuned_report)
        .def_readonly("pulse_area", &IndividualControlDesign::pulse_area)
        .def_readonly("xi_at_t", &IndividualControlDesign::xi_at_t);

    m.def(
        "design_individual_control",
        [](double area, double detuned_phase, double delta, const std::string& variant, double phi,
           double duration_hint) {
            const IcVariant v = variant == "phase-gate" ? IcVariant::PhaseGate
                                                        : IcVariant::XRotation;
            if (variant != "phase-gate" && variant != "x-rotation") {
                throw DomainError("variant must be 'phase-gate' or 'x-rotation'");
            }
            return design_individual_control(area, detuned_phase, delta, v, phi, duration_hint);
        },
        py::arg("pulse_area_target"), py::arg("detuned_phase_target"), py::arg("delta"),
        py::arg("variant"), py::arg("phi") = 0.0, py::arg("duration_hint") = 0.0);

    m.def(
        "run_scenario_file",
        [](const std::filesystem::path& config, const std::filesystem::path& out_dir, int steps) {
            const ScenarioResult r = run_scenario(load_scenario(config), out_dir, steps);
            py::dict checks;
            for (const auto& c : r.checks) {
                checks[py::str(c.name)] = py::make_tuple(c.value, c.threshold, c.pass);
            }
            return py::make_tuple(r.pass, checks);
        },
        py::arg("config"), py::arg("out_dir"), py::arg("steps") = kDefaultOracleSteps);

    m.def(
        "run_verify_suite",
        [](int count, std::uint64_t seed, int steps, double tolerance) {
            const VerifySummary s = run_verify_suite(count, seed, steps, tolerance);
            return py::make_tuple(s.all_pass, s.worst, s.text);
        },
        py::arg("count"), py::arg("seed") = 20240521ull, py::arg("steps") = kDefaultOracleSteps,
        py::arg("tolerance") = 1e-6);
}
