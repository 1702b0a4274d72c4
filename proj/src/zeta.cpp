#include "zetapulse/zeta.hpp"

#include <cmath>
#include <utility>

#include "zetapulse/errors.hpp"

namespace zetapulse {

namespace {
// sin(a*pi) should be exactly zero at the endpoints; snap away the rounding
// of sin(k*pi) so the endpoint identities hold bit-stably.
constexpr double kEndpointSnap = 1e-12;
}  // namespace

ZetaSeries::ZetaSeries(double a0, std::vector<ZetaTerm> terms, double duration)
    : a0_(a0), terms_(std::move(terms)), duration_(duration) {
    if (!(duration_ > 0.0)) {
        throw DomainError("ZetaSeries: duration must be positive");
    }
    for (const auto& term : terms_) {
        if (term.power < 1) {
            throw DomainError("ZetaSeries: term power must be a positive integer");
        }
        if (term.freq_mult < 1) {
            throw DomainError("ZetaSeries: frequency multiplier must be a positive integer");
        }
    }
}

ZetaTriple ZetaSeries::eval(double t) const {
    if (t < 0.0 || t > duration_) {
        throw DomainError("eval_zeta: t outside [0, T]");
    }
    double z = a0_, zd = 0.0, zdd = 0.0;
    for (const auto& term : terms_) {
        const double ud = term.freq_mult * M_PI / duration_;
        const double u = ud * t;
        double s = std::sin(u);
        const double c = std::cos(u);
        if (std::abs(s) < kEndpointSnap) s = 0.0;
        const int n = term.power;
        const double sn = std::pow(s, n);
        z += term.amplitude * sn;
        if (n == 1) {
            zd += term.amplitude * c * ud;
            zdd += term.amplitude * (-s) * ud * ud;
        } else {
            const double snm1 = std::pow(s, n - 1);
            const double snm2 = std::pow(s, n - 2);
            zd += term.amplitude * n * snm1 * c * ud;
            zdd += term.amplitude * (n * (n - 1) * snm2 * c * c - n * sn) * ud * ud;
        }
    }
    return {z, zd, zdd};
}

ZetaSeries ZetaSeries::with_amplitude(std::size_t term_index, double amplitude) const {
    if (term_index >= terms_.size()) {
        throw DomainError("with_amplitude: term index out of range");
    }
    std::vector<ZetaTerm> terms = terms_;
    terms[term_index].amplitude = amplitude;
    return ZetaSeries(a0_, std::move(terms), duration_);
}

AdmissibilityReport check_admissible(const ZetaSeries& series,
                                     const std::function<double(double)>& envelope,
                                     int grid_points, double guard) {
    if (grid_points < 64) {
        throw DomainError("check_admissible: grid_points must be >= 64");
    }
    if (!(guard > 0.0 && guard < 1.0)) {
        throw DomainError("check_admissible: guard must lie in (0, 1)");
    }
    const double T = series.duration();
    AdmissibilityReport report;
    report.min_zeta = std::numeric_limits<double>::infinity();
    report.max_zeta = -std::numeric_limits<double>::infinity();
    const double hi = M_PI / 2.0;
    for (int i = 0; i <= grid_points; ++i) {
        const double t = T * static_cast<double>(i) / grid_points;
        const ZetaTriple zt = series.eval(t);
        const double env = envelope(t);
        if (!(env > 0.0)) {
            throw EnvelopeError("check_admissible: envelope must be strictly positive on the grid");
        }
        report.min_zeta = std::min(report.min_zeta, zt.value);
        report.max_zeta = std::max(report.max_zeta, zt.value);
        const double ratio = std::abs(zt.d1) / env;
        report.max_slope_ratio = std::max(report.max_slope_ratio, ratio);
        if (zt.value < 0.0 || zt.value > hi) {
            report.violations.push_back({t, ViolationKind::Range});
        } else if (zt.value <= guard || zt.value >= hi - guard) {
            report.violations.push_back({t, ViolationKind::DivergenceProximity});
        }
        if (ratio > 1.0 - guard) {
            report.violations.push_back({t, ViolationKind::Slope});
        }
    }
    report.admissible = report.violations.empty();
    return report;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Range: return "range";
        case ViolationKind::Slope: return "slope";
        case ViolationKind::DivergenceProximity: return "divergence-proximity";
    }
    return "unknown";
}

}  // namespace zetapulse
