#include "zetapulse/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zetapulse/errors.hpp"
#include "zetapulse/metrics.hpp"
#include "zetapulse/numerics.hpp"
#include "zetapulse/oracle.hpp"

namespace zetapulse {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Waveform waveform_from_json(const json& j, double duration) {
    if (j.contains("constant")) {
        return Waveform::constant(j.at("constant").get<double>());
    }
    const double offset = j.value("offset", 0.0);
    const double amplitude = j.value("amplitude", 0.0);
    const double freq_mult = j.value("freq_mult", 1.0);
    return Waveform::sine(offset, amplitude, freq_mult, duration);
}

json waveform_to_json(const Waveform& w) {
    if (w.is_constant()) {
        return json{{"constant", w.offset()}};
    }
    return json{{"offset", w.offset()}, {"amplitude", w.amplitude()}, {"freq_mult", w.freq_mult()}};
}

ScheduleAxis axis_from_string(const std::string& s) {
    if (s == "sigma_z") return ScheduleAxis::SigmaZ;
    if (s == "sigma_xy") return ScheduleAxis::SigmaXY;
    if (s == "st") return ScheduleAxis::St;
    if (s == "individual") return ScheduleAxis::Individual;
    throw DomainError("scenario: unknown axis '" + s + "'");
}

Eigen::Vector2cd state_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const double r = 1.0 / std::sqrt(2.0);
        if (s == "0") return {1.0, 0.0};
        if (s == "1") return {0.0, 1.0};
        if (s == "+") return {r, r};
        if (s == "-") return {r, -r};
        throw DomainError("scenario: unknown named state '" + s + "'");
    }
    if (j.is_array() && j.size() == 4) {
        return {complexd(j[0].get<double>(), j[1].get<double>()),
                complexd(j[2].get<double>(), j[3].get<double>())};
    }
    throw DomainError("scenario: state must be a name or [re0, im0, re1, im1]");
}

}  // namespace

std::optional<Eigen::Matrix2cd> Scenario::target_gate() const {
    const std::string& name = target_gate_name;
    if (name.empty()) return std::nullopt;
    if (name == "I") return gates::identity();
    if (name == "NOT" || name == "X") return gates::pauli_x();
    if (name == "H") return gates::hadamard();
    if (name == "S") return gates::s_gate();
    if (name == "T") return gates::t_gate();
    if (name == "Rx") return gates::rx(target_gate_angle);
    if (name == "Rz") return gates::rz(target_gate_angle);
    throw DomainError("scenario: unknown target gate '" + name + "'");
}

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("scenario: invalid JSON: ") + e.what());
    }
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.axis = axis_from_string(j.at("axis").get<std::string>());
    s.duration = j.at("duration").get<double>();
    if (!(s.duration > 0)) throw DomainError("scenario: duration must be positive");

    const json& z = j.at("zeta");
    std::vector<ZetaTerm> terms;
    for (const auto& t : z.value("terms", json::array())) {
        terms.push_back({t.at("n").get<int>(), t.at("A").get<double>(), t.at("a").get<int>()});
    }
    s.series = ZetaSeries(z.at("A0").get<double>(), terms, s.duration);
    s.envelope = waveform_from_json(j.at("envelope"), s.duration);
    s.phase = j.contains("phase") ? waveform_from_json(j.at("phase"), s.duration)
                                  : Waveform::constant(0.0);
    if (j.contains("initial_state")) s.initial_state = state_from_json(j.at("initial_state"));
    if (j.contains("target")) {
        const json& t = j.at("target");
        if (t.contains("gate")) {
            s.target_gate_name = t.at("gate").get<std::string>();
            s.target_gate_angle = t.value("angle", 0.0);
            s.target_gate();  // validates the name
        }
        if (t.contains("state")) s.target_state = state_from_json(t.at("state"));
    }
    if (j.contains("output")) s.trace_samples = j.at("output").value("trace_samples", 512);
    if (s.trace_samples < 2) throw DomainError("scenario: trace_samples must be >= 2");
    const json checks = j.value("checks", json::object());
    for (const auto& [key, value] : checks.items()) {
        s.checks[key] = value.get<double>();
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("scenario: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
    json z{{"A0", s.series.a0()}, {"terms", json::array()}};
    for (const auto& t : s.series.terms()) {
        z["terms"].push_back({{"n", t.power}, {"A", t.amplitude}, {"a", t.freq_mult}});
    }
    json j{{"name", s.name},
           {"axis", to_string(s.axis)},
           {"duration", s.duration},
           {"zeta", z},
           {"envelope", waveform_to_json(s.envelope)},
           {"phase", waveform_to_json(s.phase)},
           {"initial_state",
            json::array({s.initial_state(0).real(), s.initial_state(0).imag(),
                         s.initial_state(1).real(), s.initial_state(1).imag()})},
           {"output", {{"trace_samples", s.trace_samples}}}};
    if (!s.target_gate_name.empty() || s.target_state) {
        json t = json::object();
        if (!s.target_gate_name.empty()) {
            t["gate"] = s.target_gate_name;
            if (s.target_gate_name == "Rx" || s.target_gate_name == "Rz") {
                t["angle"] = s.target_gate_angle;
            }
        }
        if (s.target_state) {
            t["state"] = json::array({s.target_state->coeff(0).real(), s.target_state->coeff(0).imag(),
                                      s.target_state->coeff(1).real(), s.target_state->coeff(1).imag()});
        }
        j["target"] = t;
    }
    if (!s.checks.empty()) {
        json c = json::object();
        for (const auto& [k, v] : s.checks) c[k] = v;
        j["checks"] = c;
    }
    return j.dump(2);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DomainError("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void write_pulse_table(const std::filesystem::path& path, const PulseSchedule& schedule) {
    std::ostringstream out;
    out << "# zetapulse pulse table\n"
        << "# units: time in microseconds, rates in rad/us, phase in radians\n"
        << "# axis: " << to_string(schedule.axis) << "\n"
        << "t,controllable,envelope,phi\n";
    for (std::size_t i = 0; i < schedule.time.size(); ++i) {
        out << fmt(schedule.time[i]) << ',' << fmt(schedule.controllable[i]) << ','
            << fmt(schedule.envelope[i]) << ',' << fmt(schedule.phase[i]) << '\n';
    }
    write_text_file(path, out.str());
}

void write_trace_table(const std::filesystem::path& path, const StateTrace& trace) {
    std::ostringstream out;
    out << "# zetapulse dynamics trace\n"
        << "# units: time in microseconds; P0, P1, F dimensionless\n"
        << "t,P0,P1,F\n";
    for (const auto& s : trace.samples) {
        out << fmt(s.t) << ',' << fmt(s.p0) << ',' << fmt(s.p1) << ',' << fmt(s.fidelity) << '\n';
    }
    write_text_file(path, out.str());
}

LoadedPulse load_pulse_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open pulse table " + path.string());
    LoadedPulse pulse{ScheduleAxis::SigmaZ, {}, {}, {}, {}};
    bool axis_seen = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string tag = "# axis: ";
            if (line.rfind(tag, 0) == 0) {
                pulse.axis = axis_from_string(line.substr(tag.size()));
                axis_seen = true;
            }
            continue;
        }
        if (line[0] == 't') continue;  // column header
        double t, c, e, p;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &c, &e, &p) != 4) {
            throw DomainError("pulse table: malformed row '" + line + "'");
        }
        pulse.time.push_back(t);
        pulse.controllable.push_back(c);
        pulse.envelope.push_back(e);
        pulse.phase.push_back(p);
    }
    if (!axis_seen) throw DomainError("pulse table: missing '# axis:' header");
    if (pulse.time.size() < 2) throw DomainError("pulse table: needs at least 2 rows");
    return pulse;
}

namespace {

double lerp_at(const std::vector<double>& ts, const std::vector<double>& vs, double t) {
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return vs.front();
    if (it == ts.end()) return vs.back();
    const std::size_t hi = it - ts.begin();
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return vs[lo] + w * (vs[hi] - vs[lo]);
}

}  // namespace

HamiltonianSampler sampler_from_pulse(const LoadedPulse& pulse, bool detuned_subspace) {
    const LoadedPulse p = pulse;
    const bool detuned = detuned_subspace;
    return {[p, detuned](double t) {
                const double c = lerp_at(p.time, p.controllable, t);
                const double e = lerp_at(p.time, p.envelope, t);
                const double phi = lerp_at(p.time, p.phase, t);
                double diag = 0, off = 0;
                switch (p.axis) {
                    case ScheduleAxis::SigmaZ:
                    case ScheduleAxis::St:
                        diag = c;
                        off = e;
                        break;
                    case ScheduleAxis::SigmaXY:
                        diag = e;
                        off = c;
                        break;
                    case ScheduleAxis::Individual:
                        diag = detuned ? e : 0.0;
                        off = c;
                        break;
                }
                Eigen::Matrix2cd m;
                const complexd drive = off * std::polar(1.0, phi);
                m << diag, std::conj(drive), drive, -diag;
                return m;
            },
            p.duration(), "pulse-table"};
}

namespace {

struct CheckAccumulator {
    std::vector<CheckOutcome> outcomes;
    std::map<std::string, double> pending;

    explicit CheckAccumulator(std::map<std::string, double> checks) : pending(std::move(checks)) {}

    void satisfy_min(const std::string& key, double value) {
        const auto it = pending.find(key);
        if (it == pending.end()) return;
        outcomes.push_back({key, value, it->second, value >= it->second});
        pending.erase(it);
    }
    void satisfy_max(const std::string& key, double value) {
        const auto it = pending.find(key);
        if (it == pending.end()) return;
        outcomes.push_back({key, value, it->second, value <= it->second});
        pending.erase(it);
    }
};

json report_check_json(const std::vector<CheckOutcome>& checks) {
    json out = json::array();
    for (const auto& c : checks) {
        out.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                       {"pass", c.pass}});
    }
    return out;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                            int oracle_steps) {
    std::filesystem::create_directories(out_dir);
    ScenarioResult result;
    CheckAccumulator acc(scenario.checks);
    json report{{"name", scenario.name}, {"axis", to_string(scenario.axis)}};

    const bool xy = scenario.axis == ScheduleAxis::SigmaXY;
    // Individual-control scenarios synthesize the shared drive, which is the
    // off-diagonal (sigma-x/y) direction with the detuning as the fixed part.
    const ControlAxis core_axis = (xy || scenario.axis == ScheduleAxis::Individual)
                                      ? ControlAxis::SigmaXY
                                      : ControlAxis::SigmaZ;
    const ControlProblem problem{core_axis, scenario.envelope, scenario.phase, scenario.duration};

    if (scenario.axis == ScheduleAxis::Individual) {
        // Two subspaces under the one synthesized drive.
        PulseSchedule schedule =
            synthesize_schedule(scenario.series, problem, ScheduleAxis::Individual);
        const auto drive = [series = scenario.series, problem](double t) {
            return omega_prime_from_zeta(series, problem, t);
        };
        const double phi0 = scenario.phase.value(0.0);
        const double delta = scenario.envelope.value(0.0);
        const auto h_r = make_resonant_sampler(drive, phi0, scenario.duration);
        const auto h_d = make_detuned_sampler(drive, phi0, delta, scenario.duration);

        const std::optional<Eigen::Matrix2cd> gate = scenario.target_gate();
        const Eigen::Matrix2cd target_r = gate ? *gate : gates::pauli_x();
        const Eigen::Vector2cd target_state_r = target_r * scenario.initial_state;
        const StateTrace trace_r =
            evolve_state(h_r, scenario.initial_state, target_state_r, scenario.trace_samples,
                         oracle_steps);
        const StateTrace trace_d =
            evolve_state(h_d, scenario.initial_state, scenario.initial_state,
                         scenario.trace_samples, oracle_steps);

        const Unitary2 u_r = propagate_numeric(h_r, scenario.duration, oracle_steps).u;
        const Unitary2 u_d = propagate_numeric(h_d, scenario.duration, oracle_steps).u;
        const double fid_r = gate_fidelity(u_r.matrix(), target_r).value;
        const double fid_d = gate_fidelity(u_d.matrix(), gates::identity()).value;
        const double area = 2.0 * integrate_adaptive_simpson(drive, 0.0, scenario.duration);

        acc.satisfy_min("min_resonant_fidelity", fid_r);
        acc.satisfy_min("min_detuned_fidelity", fid_d);
        acc.satisfy_min("min_resonant_population_1", trace_r.samples.back().p1);
        acc.satisfy_min("min_detuned_population_0", trace_d.samples.back().p0);

        report["resonant_gate_fidelity"] = fid_r;
        report["detuned_identity_fidelity"] = fid_d;
        report["pulse_area"] = area;
        report["xi_plus_at_T"] =
            xi_integrals(scenario.series, problem, scenario.duration).xi_plus;

        const auto pulse_path = out_dir / (scenario.name + ".pulse.csv");
        const auto trace_r_path = out_dir / (scenario.name + ".resonant.trace.csv");
        const auto trace_d_path = out_dir / (scenario.name + ".detuned.trace.csv");
        write_pulse_table(pulse_path, schedule);
        write_trace_table(trace_r_path, trace_r);
        write_trace_table(trace_d_path, trace_d);
        result.files = {pulse_path, trace_r_path, trace_d_path};
    } else {
        const ScheduleAxis axis = scenario.axis;
        PulseSchedule schedule = synthesize_schedule(scenario.series, problem, axis);

        const Unitary2 analytic =
            xy ? propagator_xy(scenario.series, problem, scenario.duration)
               : propagator_z(scenario.series, problem, scenario.duration);
        const HamiltonianSampler sampler = make_sampler(scenario.series, problem);
        const PropagationResult oracle =
            propagate_numeric(sampler, scenario.duration, oracle_steps);

        const std::optional<Eigen::Matrix2cd> gate = scenario.target_gate();
        const Eigen::Vector2cd target_state =
            scenario.target_state
                ? *scenario.target_state
                : (gate ? Eigen::Vector2cd(*gate * scenario.initial_state)
                        : Eigen::Vector2cd(oracle.u.matrix() * scenario.initial_state));
        const StateTrace trace = evolve_state(sampler, scenario.initial_state, target_state,
                                              scenario.trace_samples, oracle_steps);

        const double distance = phase_aligned_distance(analytic.matrix(), oracle.u.matrix());
        report["analytic_oracle_distance"] = distance;
        report["oracle_step_doubling_defect"] = oracle.step_doubling_defect;
        report["xi_plus_at_T"] =
            xi_integrals(scenario.series, problem, scenario.duration).xi_plus;
        acc.satisfy_max("max_analytic_oracle_distance", distance);

        if (gate) {
            const double fid_a = gate_fidelity(analytic.matrix(), *gate).value;
            const double fid_n = gate_fidelity(oracle.u.matrix(), *gate).value;
            report["gate_fidelity_analytic"] = fid_a;
            report["gate_fidelity_numeric"] = fid_n;
            acc.satisfy_min("min_gate_fidelity_analytic", fid_a);
            acc.satisfy_min("min_gate_fidelity_numeric", fid_n);
        }
        const StateSample& last = trace.samples.back();
        acc.satisfy_min("min_population_0", last.p0);
        acc.satisfy_min("min_population_1", last.p1);
        acc.satisfy_min("min_state_fidelity", last.fidelity);
        report["final_population_0"] = last.p0;
        report["final_population_1"] = last.p1;
        report["final_state_fidelity"] = last.fidelity;

        // Endpoint residual of the controllable relative to the envelope.
        const double env_ref = std::abs(schedule.envelope.front());
        const double endpoint_ratio =
            std::max(std::abs(schedule.controllable.front()),
                     std::abs(schedule.controllable.back())) /
            (env_ref > 0 ? env_ref : 1.0);
        report["endpoint_controllable_ratio"] = endpoint_ratio;
        acc.satisfy_max("max_endpoint_controllable_ratio", endpoint_ratio);

        const auto pulse_path = out_dir / (scenario.name + ".pulse.csv");
        const auto trace_path = out_dir / (scenario.name + ".trace.csv");
        write_pulse_table(pulse_path, schedule);
        write_trace_table(trace_path, trace);
        result.files = {pulse_path, trace_path};
    }

    if (!acc.pending.empty()) {
        throw DomainError("scenario: unknown or unsatisfiable check '" +
                          acc.pending.begin()->first + "' for axis " + to_string(scenario.axis));
    }
    result.checks = acc.outcomes;
    result.pass = std::all_of(result.checks.begin(), result.checks.end(),
                              [](const CheckOutcome& c) { return c.pass; });
    report["checks"] = report_check_json(result.checks);
    report["pass"] = result.pass;
    result.report_json = report.dump(2);
    const auto report_path = out_dir / (scenario.name + ".report.json");
    write_text_file(report_path, result.report_json);
    result.files.push_back(report_path);
    return result;
}

VerifySummary run_verify_suite(int count, std::uint64_t seed, int oracle_steps, double tolerance) {
    if (count < 1) throw DomainError("run_verify_suite: count must be >= 1");
    VerifySummary summary;
    std::ostringstream text;
    text << "# verify suite: count=" << count << " seed=" << seed << " steps=" << oracle_steps
         << " tolerance=" << fmt(tolerance) << "\n";
    for (int index = 0; index < count; ++index) {
        SplitMix64 rng(seed + 0x51a5ull * static_cast<std::uint64_t>(index));
        if (index == 0) {
            // Fixed first case: constant zeta = pi/4, the exactly solvable
            // Rabi reduction, as a known-good canary.
            const double T = 0.8;
            const ZetaSeries series(M_PI / 4.0, {}, T);
            const ControlProblem problem =
                ControlProblem::sigma_z(Waveform::constant(2.0 * M_PI), Waveform::constant(0.0), T);
            const Unitary2 analytic = propagator_z(series, problem, T);
            const Unitary2 oracle =
                propagate_numeric(make_sampler(series, problem), T, oracle_steps).u;
            VerifyCase vc;
            vc.index = 0;
            vc.label = "rabi-canary";
            vc.deviation = phase_aligned_distance(analytic.matrix(), oracle.matrix());
            vc.pass = vc.deviation < tolerance;
            summary.worst = std::max(summary.worst, vc.deviation);
            char line[128];
            std::snprintf(line, sizeof(line), "case %04d deviation %.6e %s %s\n", 0, vc.deviation,
                          vc.pass ? "pass" : "FAIL", vc.label.c_str());
            text << line;
            summary.cases.push_back(std::move(vc));
            continue;
        }
        const double T = rng.uniform(0.5, 1.2);
        const double a0 = rng.uniform(M_PI / 8.0, 3.0 * M_PI / 8.0);
        const int n_terms = rng.uniform_int(1, 3);
        std::vector<ZetaTerm> terms;
        for (int k = 0; k < n_terms; ++k) {
            terms.push_back({rng.uniform_int(1, 3), rng.uniform(-0.4, 0.4), rng.uniform_int(1, 3)});
        }
        const double omega0 = rng.uniform(M_PI, 3.0 * M_PI);
        const bool modulated = index % 2 == 1;
        const Waveform envelope =
            modulated ? Waveform::sine(omega0, rng.uniform(0.05, 0.35) * omega0,
                                       rng.uniform_int(1, 2), T)
                      : Waveform::constant(omega0);
        const bool swept_phase = index % 4 >= 2;
        const Waveform phase = swept_phase
                                   ? Waveform::sine(rng.uniform(-M_PI, M_PI), rng.uniform(0.0, 1.0),
                                                    2, T)
                                   : Waveform::constant(0.0);

        // Shrink amplitudes until the series is safely admissible.
        ZetaSeries series(a0, terms, T);
        const auto env_fn = [&envelope](double t) { return envelope.value(t); };
        bool ok = false;
        for (int attempt = 0; attempt < 70; ++attempt) {
            const AdmissibilityReport rep = check_admissible(series, env_fn, 512, 0.06);
            if (rep.admissible && rep.max_slope_ratio <= 0.88) {
                ok = true;
                break;
            }
            for (auto& term : terms) term.amplitude *= 0.75;
            series = ZetaSeries(a0, terms, T);
        }
        VerifyCase vc;
        vc.index = index;
        vc.label = std::string(modulated ? "sine-envelope" : "const-envelope") +
                   (swept_phase ? "+swept-phase" : "");
        if (!ok) {
            // Degenerate draw; fall back to the flat series, always admissible.
            series = ZetaSeries(a0, {}, T);
        }
        const ControlProblem problem = ControlProblem::sigma_z(envelope, phase, T);
        const Unitary2 analytic = propagator_z(series, problem, T);
        const Unitary2 oracle = propagate_numeric(make_sampler(series, problem), T, oracle_steps).u;
        vc.deviation = phase_aligned_distance(analytic.matrix(), oracle.matrix());
        vc.pass = vc.deviation < tolerance;
        summary.worst = std::max(summary.worst, vc.deviation);
        char line[128];
        std::snprintf(line, sizeof(line), "case %04d deviation %.6e %s %s\n", index, vc.deviation,
                      vc.pass ? "pass" : "FAIL", vc.label.c_str());
        text << line;
        summary.cases.push_back(std::move(vc));
    }
    summary.all_pass = std::all_of(summary.cases.begin(), summary.cases.end(),
                                   [](const VerifyCase& c) { return c.pass; });
    char tail[96];
    std::snprintf(tail, sizeof(tail), "worst %.6e overall %s\n", summary.worst,
                  summary.all_pass ? "pass" : "FAIL");
    text << tail;
    summary.text = text.str();
    return summary;
}

}  // namespace zetapulse
