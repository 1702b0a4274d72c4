#include "zetapulse/numerics.hpp"

#include <cmath>
#include <cstdint>

#include "zetapulse/errors.hpp"

namespace zetapulse {

namespace {

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth >= 48 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol) {
    if (a == b) return 0.0;
    // A fixed initial subdivision guards against aliasing: oscillatory
    // integrands (sin^n(a pi t / T) terms) can look constant at the dyadic
    // probe points of the first recursion levels.
    constexpr int kInitialPanels = 32;
    const double width = (b - a) / kInitialPanels;
    double total = 0.0;
    for (int i = 0; i < kInitialPanels; ++i) {
        const double lo = a + i * width;
        const double hi = i + 1 == kInitialPanels ? b : lo + width;
        const double m = 0.5 * (lo + hi);
        const double fa = f(lo), fm = f(m), fb = f(hi);
        const double whole = simpson(fa, fm, fb, hi - lo);
        total += adaptive_step(f, lo, hi, fa, fm, fb, whole, abs_tol / kInitialPanels, 0);
    }
    return total;
}

RootResult find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                               double x_tol, double f_tol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (std::abs(flo) < f_tol) return {lo, flo, 0};
    if (std::abs(fhi) < f_tol) return {hi, fhi, 0};
    if ((flo > 0) == (fhi > 0)) {
        throw BracketError("find_root_bracketed: no sign change in [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    RootResult result;
    for (int it = 0; it < max_iter; ++it) {
        result.iterations = it + 1;
        // Secant candidate, accepted only when it lands strictly inside.
        double x = hi - fhi * (hi - lo) / (fhi - flo);
        const double margin = 0.01 * (hi - lo);
        if (!(x > lo + margin && x < hi - margin)) {
            x = 0.5 * (lo + hi);
        }
        const double fx = f(x);
        if ((fx > 0) == (flo > 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        result.x = x;
        result.f = fx;
        if (std::abs(fx) < f_tol || hi - lo < x_tol) {
            return result;
        }
    }
    return result;
}

}  // namespace zetapulse
