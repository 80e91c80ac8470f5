#pragma once
#include <cstdint>
#include <functional>
#include <vector>

namespace nvpoa {

using Fn1 = std::function<double(double)>;

// Adaptive Simpson on [a,b]. Splits until the usual 15x Richardson estimate meets
// rel_tol against the running value (abs_floor guards integrals near zero).
double adaptive_simpson(const Fn1& f, double a, double b, double rel_tol = 1e-9,
                        double abs_floor = 1e-300, int max_depth = 52);

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
};

// Bisection on [lo,hi]; f(lo) and f(hi) must have opposite signs (or one may be 0).
// Stops when the interval width is below xtol. Works for discontinuous monotone f:
// it converges to the jump location.
RootResult bisect(const Fn1& f, double lo, double hi, double flo, double fhi, double xtol,
                  int max_iter = 400);

struct GoldenResult {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section maximization of a unimodal f on [lo,hi].
GoldenResult golden_max(const Fn1& f, double lo, double hi, double xtol, int max_iter = 300);

// splitmix64: counter-based, trivially seekable; used as the simulation noise source
// so output streams do not depend on the C++ standard library implementation.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform in (0,1]
    double uniform() { return (double(next() >> 11) + 1.0) * 0x1.0p-53; }
};

// One standard normal per call via Box-Muller (no cached spare, fully stateless
// given the generator position).
double standard_normal(SplitMix64& rng);

// Horner evaluation of c[0] + c[1] x + ... + c[n-1] x^{n-1}.
double polyval(const std::vector<double>& coeffs, double x);

struct PolyFit {
    std::vector<double> coeffs;     // raw-basis coefficients, degree+1 entries
    double loo_cv_error = 0.0;      // mean squared leave-one-out residual
    double rss = 0.0;
};

// Least-squares polynomial fit of y on x via Householder QR in a shifted/scaled
// basis (rescaled to [-1,1] for conditioning, coefficients mapped back exactly).
// The leave-one-out error uses the closed form r_i/(1-h_ii) with leverages from
// the thin Q factor (basis-invariant).
PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree);

} // namespace nvpoa
