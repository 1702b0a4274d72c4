#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zetapulse/designer.hpp"
#include "zetapulse/oracle.hpp"

namespace zetapulse {

// One batch job: a parameter set, an initial state, a target, and the
// thresholds its outputs must clear.
struct Scenario {
    std::string name;
    ScheduleAxis axis = ScheduleAxis::SigmaZ;
    ZetaSeries series{0.0, {}, 1.0};
    Waveform envelope;  // Omega | Delta' | h | delta
    Waveform phase;
    double duration = 1.0;
    Eigen::Vector2cd initial_state = Eigen::Vector2cd(1.0, 0.0);
    std::string target_gate_name;  // one of I, NOT, H, S, T, Rx, Rz; empty = none
    double target_gate_angle = 0;  // for Rx / Rz
    std::optional<Eigen::Vector2cd> target_state;
    int trace_samples = 512;
    std::map<std::string, double> checks;

    std::optional<Eigen::Matrix2cd> target_gate() const;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& scenario);

struct CheckOutcome {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = false;
};

struct ScenarioResult {
    bool pass = false;
    std::vector<CheckOutcome> checks;
    std::vector<std::filesystem::path> files;
    std::string report_json;
};

// Runs the scenario: pulse table, dynamics trace(s), gate report; pass iff
// every configured threshold clears.
ScenarioResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                            int oracle_steps = kDefaultOracleSteps);

struct VerifyCase {
    int index = 0;
    std::string label;
    double deviation = 0;  // phase-aligned Frobenius, analytic vs oracle at T
    bool pass = false;
};

struct VerifySummary {
    std::vector<VerifyCase> cases;
    double worst = 0;
    bool all_pass = false;
    std::string text;  // deterministic, byte-stable given (count, seed)
};

// Randomized analytic-vs-oracle equivalence suite over admissible sigma-z
// series with constant and sine-modulated envelopes and constant/swept
// phases. Failures are recorded, not thrown.
VerifySummary run_verify_suite(int count, std::uint64_t seed, int oracle_steps = kDefaultOracleSteps,
                               double tolerance = 1e-6);

// Line-oriented table writers (atomic: temp file + rename).
void write_pulse_table(const std::filesystem::path& path, const PulseSchedule& schedule);
void write_trace_table(const std::filesystem::path& path, const StateTrace& trace);
void write_text_file(const std::filesystem::path& path, const std::string& content);

// Piecewise-linear rebuild of a Hamiltonian sampler from a pulse table file.
struct LoadedPulse {
    ScheduleAxis axis;
    std::vector<double> time, controllable, envelope, phase;
    double duration() const { return time.empty() ? 0.0 : time.back(); }
};
LoadedPulse load_pulse_table(const std::filesystem::path& path);
HamiltonianSampler sampler_from_pulse(const LoadedPulse& pulse, bool detuned_subspace = true);

}  // namespace zetapulse
