#pragma once

#include <functional>
#include <string>
#include <vector>

namespace zetapulse {

// One term A * sin^n(a * pi * t / T) of the auxiliary series.
struct ZetaTerm {
    int power = 1;        // n >= 1
    double amplitude = 0; // A, radians
    int freq_mult = 1;    // a >= 1, integer so the term vanishes at t = 0 and t = T
};

struct ZetaTriple {
    double value;   // zeta(t), rad
    double d1;      // zeta_dot, rad per time
    double d2;      // zeta_ddot, rad per time^2
};

// Auxiliary angle zeta(t) = A0 + sum_k A_k sin^{n_k}(a_k pi t / T) with exact
// term-by-term derivatives. Integer frequency multipliers force
// zeta(0) = zeta(T) = A0.
class ZetaSeries {
  public:
    ZetaSeries(double a0, std::vector<ZetaTerm> terms, double duration);

    // zeta, zeta_dot, zeta_ddot at t; throws DomainError outside [0, T].
    ZetaTriple eval(double t) const;

    double a0() const { return a0_; }
    const std::vector<ZetaTerm>& terms() const { return terms_; }
    double duration() const { return duration_; }

    ZetaSeries with_amplitude(std::size_t term_index, double amplitude) const;

  private:
    double a0_;
    std::vector<ZetaTerm> terms_;
    double duration_;
};

inline ZetaTriple eval_zeta(const ZetaSeries& series, double t) { return series.eval(t); }

enum class ViolationKind { Range, Slope, DivergenceProximity };

struct AdmissibilityViolation {
    double t;
    ViolationKind kind;
};

struct AdmissibilityReport {
    bool admissible = false;
    double min_zeta = 0;
    double max_zeta = 0;
    double max_slope_ratio = 0;  // max |zeta_dot| / envelope over the grid
    std::vector<AdmissibilityViolation> violations;
};

// Grid check that the series stays inside the (0, pi/2) branch with guard
// margin eps and that |zeta_dot| < (1 - eps) * envelope. Necessary on the
// grid only; continuity between grid points is not certified.
AdmissibilityReport check_admissible(const ZetaSeries& series,
                                     const std::function<double(double)>& envelope,
                                     int grid_points = 4096, double guard = 1e-3);

std::string to_string(ViolationKind kind);

}  // namespace zetapulse
