// Command-line front end: design gates, synthesize and propagate pulses, run
// scenario files, verify the analytic solutions against the brute-force
// propagator, and emit the Clifford table.
//
// Exit codes: 0 all requested thresholds pass, 1 a threshold failed,
// 2 invalid input (bad config, inadmissible series, calibration failure).

#include <cstdio>
#include <filesystem>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zetapulse/designer.hpp"
#include "zetapulse/errors.hpp"
#include "zetapulse/metrics.hpp"
#include "zetapulse/oracle.hpp"
#include "zetapulse/scenario.hpp"

using namespace zetapulse;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitThreshold = 1;
constexpr int kExitInvalid = 2;

std::string fmt_matrix(const Eigen::Matrix2cd& m) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "[[%+.6f%+.6fi, %+.6f%+.6fi], [%+.6f%+.6fi, %+.6f%+.6fi]]", m(0, 0).real(),
                  m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(), m(1, 0).real(), m(1, 0).imag(),
                  m(1, 1).real(), m(1, 1).imag());
    return buf;
}

int cmd_design(const std::string& gate, double angle, double envelope,
               const std::filesystem::path& out_dir) {
    StGateBuild build = [&] {
        if (gate == "H") return build_st_gate(StGateKind::Hadamard, envelope);
        if (gate == "S") return build_st_gate(StGateKind::S, envelope);
        if (gate == "T") return build_st_gate(StGateKind::T, envelope);
        if (gate == "NOT") return build_st_gate(StGateKind::Not, envelope);
        if (gate == "X") return build_x_rotation(angle, envelope);
        throw DomainError("design: unknown gate '" + gate + "' (use H, S, T, NOT, X)");
    }();
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < build.schedules.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s_part%zu.pulse.csv", gate.c_str(), i);
        write_pulse_table(out_dir / name, build.schedules[i]);
    }
    std::printf("gate %s: %zu schedule(s), fidelity analytic %.6f / numeric %.6f\n", gate.c_str(),
                build.schedules.size(), build.report.fidelity_analytic,
                build.report.fidelity_numeric);
    std::printf("controllable endpoints: %.3e, %.3e; xi+(T) = %.6f\n", build.report.boundary_start,
                build.report.boundary_end, build.report.xi_at_t.xi_plus);
    std::printf("target %s\n", fmt_matrix(build.report.target).c_str());
    return build.report.fidelity_numeric >= 0.999 ? kExitPass : kExitThreshold;
}

int cmd_propagate(const std::filesystem::path& schedule_path, const std::string& state,
                  const std::string& subspace, int samples, int steps,
                  const std::filesystem::path& out_dir) {
    const LoadedPulse pulse = load_pulse_table(schedule_path);
    std::filesystem::create_directories(out_dir);
    const Eigen::Vector2cd psi0 = state == "1"   ? Eigen::Vector2cd(0.0, 1.0)
                                  : state == "+" ? Eigen::Vector2cd(1.0, 1.0).normalized()
                                  : state == "-" ? Eigen::Vector2cd(1.0, -1.0).normalized()
                                                 : Eigen::Vector2cd(1.0, 0.0);
    const std::string stem = schedule_path.stem().stem().string();
    const bool individual = pulse.axis == ScheduleAxis::Individual;
    const auto run_one = [&](bool detuned, const std::string& tag) {
        const HamiltonianSampler sampler = sampler_from_pulse(pulse, detuned);
        const PropagationResult r = propagate_numeric(sampler, pulse.duration(), steps);
        const Eigen::Vector2cd target = r.u.matrix() * psi0;
        const StateTrace trace = evolve_state(sampler, psi0, target, samples, steps);
        write_trace_table(out_dir / (stem + tag + ".trace.csv"), trace);
        std::printf("%s: U(T) = %s\n", tag.empty() ? "propagated" : tag.c_str(),
                    fmt_matrix(r.u.matrix()).c_str());
        std::printf("  step-doubling defect %.3e, final P0 %.6f P1 %.6f\n",
                    r.step_doubling_defect, trace.samples.back().p0, trace.samples.back().p1);
    };
    if (individual && (subspace == "both" || subspace == "resonant")) run_one(false, ".resonant");
    if (individual && (subspace == "both" || subspace == "detuned")) run_one(true, ".detuned");
    if (!individual) run_one(true, "");
    return kExitPass;
}

int cmd_verify(int count, std::uint64_t seed, int steps, double tolerance,
               const std::filesystem::path& out_dir) {
    const VerifySummary summary = run_verify_suite(count, seed, steps, tolerance);
    std::fputs(summary.text.c_str(), stdout);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text_file(out_dir / "verify_summary.txt", summary.text);
    }
    return summary.all_pass ? kExitPass : kExitThreshold;
}

int cmd_clifford(double envelope, bool emit_schedules, const std::filesystem::path& out_dir) {
    const auto table = clifford_table(envelope);
    std::ostringstream out;
    out << "# 24 single-qubit Clifford gates as words over {H, S}\n"
        << "# index, word, schedules, total duration (us), target matrix\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& e = table[i];
        double total = 0.0;
        for (const auto& s : e.schedules) total += s.duration();
        char line[320];
        std::snprintf(line, sizeof(line), "%2zu, %-8s, %2zu, %7.4f, %s\n", i,
                      e.word.empty() ? "(empty)" : e.word.c_str(), e.schedules.size(), total,
                      fmt_matrix(e.target.matrix()).c_str());
        out << line;
    }
    std::fputs(out.str().c_str(), stdout);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text_file(out_dir / "clifford_table.txt", out.str());
        if (emit_schedules) {
            for (std::size_t i = 0; i < table.size(); ++i) {
                for (std::size_t k = 0; k < table[i].schedules.size(); ++k) {
                    char name[64];
                    std::snprintf(name, sizeof(name), "clifford_%02zu_part%zu.pulse.csv", i, k);
                    write_pulse_table(out_dir / name, table[i].schedules[k]);
                }
            }
        }
    }
    return kExitPass;
}

int cmd_scenario(const std::vector<std::filesystem::path>& configs, int steps,
                 const std::filesystem::path& out_dir) {
    // Scenario batches fan out across a small worker pool; every run only
    // touches its own atomically written files.
    std::vector<Scenario> scenarios;
    scenarios.reserve(configs.size());
    for (const auto& config : configs) scenarios.push_back(load_scenario(config));
    std::vector<std::future<ScenarioResult>> futures;
    futures.reserve(scenarios.size());
    for (const auto& scenario : scenarios) {
        futures.push_back(std::async(scenarios.size() > 1 ? std::launch::async
                                                          : std::launch::deferred,
                                     [&scenario, &out_dir, steps] {
                                         return run_scenario(scenario, out_dir, steps);
                                     }));
    }
    bool all_pass = true;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        const ScenarioResult result = futures[i].get();
        std::printf("scenario %s: %s\n", scenarios[i].name.c_str(),
                    result.pass ? "pass" : "FAIL");
        for (const auto& c : result.checks) {
            std::printf("  [%s] %-32s value %.9g threshold %.9g\n", c.pass ? "pass" : "FAIL",
                        c.name.c_str(), c.value, c.threshold);
        }
        for (const auto& f : result.files) std::printf("  wrote %s\n", f.string().c_str());
        all_pass = all_pass && result.pass;
    }
    return all_pass ? kExitPass : kExitThreshold;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analytic pulse synthesis and exact propagators for driven two-level systems"};
    app.require_subcommand(1);
    app.fallthrough();

    std::filesystem::path out_dir = "out";
    int steps = kDefaultOracleSteps;
    std::uint64_t seed = 20240521ull;
    double tolerance = 1e-6;
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--steps", steps, "oracle integration steps");
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_option("--tolerance", tolerance, "verification tolerance");

    auto* design = app.add_subcommand("design", "calibrate a gate and emit its schedules");
    std::string gate = "H";
    double angle = M_PI;
    double envelope = 2.0 * M_PI;
    design->add_option("--gate", gate, "H | S | T | NOT | X")->required();
    design->add_option("--angle", angle, "rotation angle for gate X (radians)");
    design->add_option("--envelope", envelope, "fixed drive envelope h (rad/us)");

    auto* propagate = app.add_subcommand("propagate", "integrate a pulse table numerically");
    std::filesystem::path schedule_path;
    std::string state = "0";
    std::string subspace = "both";
    int samples = 512;
    propagate->add_option("schedule", schedule_path, "pulse table (.pulse.csv)")->required();
    propagate->add_option("--state", state, "initial state: 0 | 1 | + | -");
    propagate->add_option("--subspace", subspace, "individual-control subspace: resonant | detuned | both");
    propagate->add_option("--samples", samples, "trace sample count");

    auto* verify = app.add_subcommand("verify", "randomized analytic-vs-oracle equivalence suite");
    int count = 200;
    verify->add_option("--count", count, "number of random cases");

    auto* clifford = app.add_subcommand("clifford", "emit the 24-entry Clifford table");
    bool emit_schedules = false;
    clifford->add_option("--envelope", envelope, "fixed drive envelope h (rad/us)");
    clifford->add_flag("--emit-schedules", emit_schedules, "write every schedule file");

    auto* scenario = app.add_subcommand("scenario", "run scenario config files");
    std::vector<std::filesystem::path> configs;
    scenario->add_option("configs", configs, "scenario JSON file(s)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) return cmd_design(gate, angle, envelope, out_dir);
        if (propagate->parsed())
            return cmd_propagate(schedule_path, state, subspace, samples, steps, out_dir);
        if (verify->parsed()) return cmd_verify(count, seed, steps, tolerance, out_dir);
        if (clifford->parsed()) return cmd_clifford(envelope, emit_schedules, out_dir);
        if (scenario->parsed()) return cmd_scenario(configs, steps, out_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
    return kExitInvalid;
}
