// Small numeric helpers shared across the library.
#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace filmlab {

constexpr double kPi = 3.14159265358979323846264338327950288;

// log(sinh(x)) for x > 0 without overflow.  Written as
// x + log(1 - e^{-2x}) - log 2; the expm1 form stays accurate down to
// denormal x.
inline double log_sinh(double x) {
    assert(x > 0.0);
    return x + std::log(-std::expm1(-2.0 * x)) - 0.6931471805599453094172321214581766;
}

// log(cosh(x)) for x >= 0 without overflow.
inline double log_cosh(double x) {
    assert(x >= 0.0);
    return x + std::log1p(std::exp(-2.0 * x)) - 0.6931471805599453094172321214581766;
}

// Deterministic pairwise reduction; used for the L2 accumulations so
// the result does not depend on incidental traversal batching.
inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}

// Composite Simpson on [0,1] with n even panels.  The profile families
// are smooth and 1-periodic, so a fixed fine grid is plenty here.
template <class F>
double simpson01(F&& f, int n = 4096) {
    assert(n >= 2 && n % 2 == 0);
    const double h = 1.0 / n;
    double s = f(0.0) + f(1.0);
    for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace filmlab
