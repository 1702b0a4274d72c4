#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zetapulse/analytic.hpp"
#include "zetapulse/unitary.hpp"
#include "zetapulse/zeta.hpp"

namespace zetapulse {

enum class ScheduleAxis { SigmaZ, SigmaXY, St, Individual };

std::string to_string(ScheduleAxis axis);

// Dense time grid of one synthesized pulse. `controllable` is the quantity
// the synthesis produced (Delta, Omega', J, or the shared drive entry w);
// `envelope` and `phase` are the fixed quantities alongside it.
struct PulseSchedule {
    ScheduleAxis axis;
    std::vector<double> time;
    std::vector<double> controllable;
    std::vector<double> envelope;
    std::vector<double> phase;
    ZetaSeries series;       // provenance
    ControlProblem problem;  // provenance

    double duration() const { return time.empty() ? 0.0 : time.back(); }
};

// Builds the grid, checking the admissibility guard at every point.
PulseSchedule synthesize_schedule(const ZetaSeries& series, const ControlProblem& problem,
                                  ScheduleAxis axis, int grid_points = 4096);

struct GateReport {
    Eigen::Matrix2cd target;
    Unitary2 achieved_analytic = Unitary2::identity();
    Unitary2 achieved_numeric = Unitary2::identity();
    double fidelity_analytic = 0;
    double fidelity_numeric = 0;
    double boundary_start = 0;  // controllable at t = 0 of the first schedule
    double boundary_end = 0;    // controllable at t = T of the last schedule
    XiPair xi_at_t;             // xi of the calibrated schedule at its T
};

// J(t) for the exchange-coupled qubit H = h sigma_x + J sigma_z; exact
// specialization of delta_from_zeta to a constant envelope and zero phase.
double j_from_zeta(const ZetaSeries& series, double h, double t);

enum class CalibrationObjective { XiMinusAtT, XiPlusAtT, PulseArea };

struct CalibrationResult {
    ZetaSeries series;
    int iterations = 0;
    double achieved = 0;
};

// Tunes one term amplitude of `templ` until the objective hits `target`
// within 1e-6 rad, by bracketed bisection with secant acceleration.
// Admissibility is spot-checked across the bracket before solving.
CalibrationResult calibrate_scalar(const ZetaSeries& templ, std::size_t free_term,
                                   CalibrationObjective objective, const ControlProblem& problem,
                                   double target, double bracket_lo, double bracket_hi);

enum class StGateKind { Hadamard, S, T, Not };

struct StGateBuild {
    std::vector<PulseSchedule> schedules;  // time order
    GateReport report;
    ZetaSeries calibrated;   // series of the calibrated schedule
    double max_seam_jump = 0;  // largest controllable discontinuity between schedules
};

// Single calibrated schedule for Hadamard/NOT; three-schedule sequences
// H * R(sigma_x, xi) * H for S (xi = pi/4) and T (xi = pi/8). Every schedule
// has J(0) = J(T) = 0 (endpoint curvature fixed through the n = 2 term for
// the Hadamard; automatic for the sin^3 family at zeta0 = pi/4).
StGateBuild build_st_gate(StGateKind kind, double h);

// Rotation exp(-i angle/2 sigma_x) (projective). The duration is recovered
// from the reference amplitude profile A = 0.24 at the target phase
// angle/2 + pi; the amplitude is then calibrated at that duration.
StGateBuild build_x_rotation(double angle, double h);

struct CliffordEntry {
    std::string word;  // over {H, S}, time order; empty for the identity
    std::vector<PulseSchedule> schedules;
    Unitary2 target = Unitary2::identity();
};

// All 24 projectively distinct single-qubit Clifford gates as words over the
// generators, with their schedule sequences.
std::vector<CliffordEntry> clifford_table(double h);

enum class IcVariant { PhaseGate, XRotation };

// Printed closed forms of the detuned-subspace unitaries for the two
// individual-control variants.
Eigen::Matrix2cd detuned_phase_gate_form(double xi);  // diag(e^{-i xi}, e^{i xi})
Eigen::Matrix2cd detuned_xrot_form(double xi);        // boundary pi/6 form

struct IndividualControlDesign {
    PulseSchedule schedule;  // controllable = drive entry w, envelope = delta, phase = phi
    Unitary2 predicted_resonant = Unitary2::identity();
    Unitary2 predicted_detuned = Unitary2::identity();
    GateReport resonant_report;
    GateReport detuned_report;
    double pulse_area = 0;  // resonant Bloch rotation angle, 2 * integral of w
    double xi_at_t = 0;     // xi_plus(T)
};

// One pulse, two subspaces: finds (amplitude, duration) of the variant's
// sin^3 template such that the resonant Bloch angle matches
// pulse_area_target (mod 2 pi) and the detuned phase integral matches
// detuned_phase_target (mod pi). Both subspace unitaries are verified by
// independent oracle propagations. duration_hint narrows the duration scan
// around a known solution; 0 means full scan (smallest duration wins).
IndividualControlDesign design_individual_control(double pulse_area_target,
                                                  double detuned_phase_target, double delta,
                                                  IcVariant variant, double phi = 0.0,
                                                  double duration_hint = 0.0);

}  // namespace zetapulse
