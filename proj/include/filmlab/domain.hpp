// Geometry of the computational setup: a global domain
//   D = { (x, y) : b_l(x) < y < b_r(x) },   x on the unit flat torus,
// containing a straight film  Omega = T^1 x (f_l, f_r), plus the
// geometric constants derived from the boundary profiles.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "filmlab/numerics.hpp"

namespace filmlab {

enum class ProfileKind { Constant, SinusoidalSquared, Fourier };

// One boundary curve y = b(x), 1-periodic in x.
//   Constant:           b(x) = base
//   SinusoidalSquared:  b(x) = base - amplitude * sin^2(pi * frequency * x)
//   Fourier:            b(x) = base + sum_j cos_j cos(2 pi j x) + sin_j sin(2 pi j x)
struct BoundaryProfile {
    ProfileKind kind = ProfileKind::Constant;
    double base = 0.0;
    double amplitude = 0.0;
    int frequency = 1;
    std::vector<std::pair<double, double>> coefficients;  // (cos, sin) per harmonic j = 1, 2, ...

    static BoundaryProfile constant(double b) {
        BoundaryProfile p;
        p.kind = ProfileKind::Constant;
        p.base = b;
        return p;
    }
    static BoundaryProfile sinusoidal_squared(double base, double amplitude, int frequency = 1) {
        BoundaryProfile p;
        p.kind = ProfileKind::SinusoidalSquared;
        p.base = base;
        p.amplitude = amplitude;
        p.frequency = frequency;
        return p;
    }
    static BoundaryProfile fourier(double base, std::vector<std::pair<double, double>> coeffs) {
        BoundaryProfile p;
        p.kind = ProfileKind::Fourier;
        p.base = base;
        p.coefficients = std::move(coeffs);
        return p;
    }
};

inline double profile_eval(const BoundaryProfile& p, double x) {
    x -= std::floor(x);  // wrap to [0,1)
    switch (p.kind) {
        case ProfileKind::Constant:
            return p.base;
        case ProfileKind::SinusoidalSquared: {
            const double s = std::sin(kPi * p.frequency * x);
            return p.base - p.amplitude * s * s;
        }
        case ProfileKind::Fourier: {
            double v = p.base;
            for (std::size_t j = 0; j < p.coefficients.size(); ++j) {
                const double w = 2.0 * kPi * static_cast<double>(j + 1) * x;
                v += p.coefficients[j].first * std::cos(w) + p.coefficients[j].second * std::sin(w);
            }
            return v;
        }
    }
    return p.base;
}

namespace detail {

// Golden-section refinement of a bracketed extremum.  maximize=true
// looks for a maximum.  Bracket width is driven to `tol`.
template <class F>
double golden_refine(F&& f, double lo, double hi, bool maximize, double tol = 1e-12) {
    const double inv_phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        const bool move_left = maximize ? (f1 > f2) : (f1 < f2);
        if (move_left) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return f(xm);
}

}  // namespace detail

// Exact extrema for the closed-form kinds; sampled (4096 points) plus
// golden-section refinement for the Fourier kind.
inline std::pair<double, double> profile_extrema(const BoundaryProfile& p) {
    switch (p.kind) {
        case ProfileKind::Constant:
            return {p.base, p.base};
        case ProfileKind::SinusoidalSquared: {
            // range of base - amplitude * s, s in [0,1]
            const double lo = std::min(p.base, p.base - p.amplitude);
            const double hi = std::max(p.base, p.base - p.amplitude);
            return {lo, hi};
        }
        case ProfileKind::Fourier: {
            const int n = 4096;
            int imin = 0, imax = 0;
            double vmin = profile_eval(p, 0.0), vmax = vmin;
            for (int i = 1; i < n; ++i) {
                const double v = profile_eval(p, static_cast<double>(i) / n);
                if (v < vmin) { vmin = v; imin = i; }
                if (v > vmax) { vmax = v; imax = i; }
            }
            auto f = [&p](double x) { return profile_eval(p, x); };
            const double h = 1.0 / n;
            const double lo = detail::golden_refine(f, (imin - 1) * h, (imin + 1) * h, false);
            const double hi = detail::golden_refine(f, (imax - 1) * h, (imax + 1) * h, true);
            return {std::min(lo, vmin), std::max(hi, vmax)};
        }
    }
    return {p.base, p.base};
}

// Global domain D plus the film lines f_l < f_r.
struct DomainSpec {
    BoundaryProfile lower;  // b_l
    BoundaryProfile upper;  // b_r
    double film_lo = 0.0;   // f_l
    double film_hi = 0.0;   // f_r

    double thickness() const { return film_hi - film_lo; }
};

// Constants derived from the profile extrema.  Notation: b^ is the
// minimum of a profile over the period, bv its maximum.
//   R     = min{ b_r_max - f_r, f_l - b_l_min } - max{ b_r_max - b_r_min, b_l_max - b_l_min }
//   m     = min{ b_r_min - f_r, f_l - b_l_max }   (inscribed-slab gaps)
//   m_bar = min{ b_r_max - f_r, f_l - b_l_min }   (circumscribed-slab gaps)
struct GeometricConstants {
    double T = 0.0;
    double b_l_min = 0.0, b_l_max = 0.0;
    double b_r_min = 0.0, b_r_max = 0.0;
    double R = 0.0;
    double m = 0.0;
    double m_bar = 0.0;
};

inline GeometricConstants derive_constants(const DomainSpec& spec) {
    const auto [bl_min, bl_max] = profile_extrema(spec.lower);
    const auto [br_min, br_max] = profile_extrema(spec.upper);
    if (!(bl_max < spec.film_lo && spec.film_lo < spec.film_hi && spec.film_hi < br_min)) {
        throw std::invalid_argument(
            "domain spec violates max b_l < f_l < f_r < min b_r: b_l_max=" +
            std::to_string(bl_max) + " f_l=" + std::to_string(spec.film_lo) +
            " f_r=" + std::to_string(spec.film_hi) + " b_r_min=" + std::to_string(br_min));
    }
    GeometricConstants g;
    g.T = spec.thickness();
    g.b_l_min = bl_min;
    g.b_l_max = bl_max;
    g.b_r_min = br_min;
    g.b_r_max = br_max;
    const double gap_top = br_max - spec.film_hi;
    const double gap_bot = spec.film_lo - bl_min;
    const double waviness = std::max(br_max - br_min, bl_max - bl_min);
    g.R = std::min(gap_top, gap_bot) - waviness;
    g.m = std::min(br_min - spec.film_hi, spec.film_lo - bl_max);
    g.m_bar = std::min(gap_top, gap_bot);
    return g;
}

// Characteristic function of the film; the interface lines y = f_l, f_r
// count as void (open interval, fixed for determinism).
inline int indicator(const DomainSpec& spec, double /*x*/, double y) {
    return (y > spec.film_lo && y < spec.film_hi) ? 1 : 0;
}

}  // namespace filmlab
