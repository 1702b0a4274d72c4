#pragma once

#include <cstdint>
#include <functional>

namespace zetapulse {

// Adaptive composite Simpson with interval bisection; refines until the
// Richardson-corrected change of a subinterval drops below its share of
// abs_tol. The integrands here are smooth on the admissible domain.
double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-10);

struct RootResult {
    double x = 0;
    double f = 0;
    int iterations = 0;
};

// Bracketed root finding: bisection with a secant acceleration step whenever
// the secant point falls inside the bracket. Throws BracketError if f(lo) and
// f(hi) do not straddle zero.
RootResult find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                               double x_tol = 1e-12, double f_tol = 1e-6, int max_iter = 200);

// Deterministic, platform-independent RNG (xorshift-star core) used where
// byte-identical reproducibility across runs and platforms is required.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

}  // namespace zetapulse
