// Closed-form solution of the interval problem
//   -a s'' + (1-chi) s = -chi'   on (b_l, b_r),  s(b_l) = s(b_r) = 0,
// with chi the indicator of (f_l, f_r): exponential tails
//   s(y) = -C_l sinh((y - b_l)/sqrt(a))  on [b_l, f_l]
//   s(y) = -C_r sinh((y - b_r)/sqrt(a))  on [f_r, b_r]
// joined by a straight segment of slope s* across the film.  The jump
// conditions a(s* - s'(f_l-0)) = 1 and a(s* - s'(f_r+0)) = 1 determine
//   C_l = k cosh(beta) / (sqrt(a) cosh(alpha) (tanh(alpha)+tanh(beta)+k))
//   C_r = k cosh(alpha) / (sqrt(a) cosh(beta) (tanh(alpha)+tanh(beta)+k))
// with alpha = (f_l-b_l)/sqrt(a), beta = (b_r-f_r)/sqrt(a), k = T/sqrt(a).
// The tanh parametrization is the algebraic reduction of
//   (C_l, C_r) = k / (sqrt(a) (sinh(alpha+beta) + k cosh(alpha) cosh(beta)))
//                * (cosh(beta), cosh(alpha))
// and evaluates without overflow for arbitrarily small a.  Derived
// quantities that stay O(1) regardless of a:
//   sqrt(a) s* = k (tanh(alpha)+tanh(beta)) / (T (tanh(alpha)+tanh(beta)+k))
//   h = 2/(sqrt(a) s*) = 2 sqrt(a) + 2T/(tanh(alpha)+tanh(beta)).
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "filmlab/domain.hpp"
#include "filmlab/numerics.hpp"

namespace filmlab {

struct Interval1DProblem {
    double b_l = 0.0;
    double b_r = 0.0;
    double f_l = 0.0;
    double f_r = 0.0;
    double a = 0.0;

    double thickness() const { return f_r - f_l; }
};

inline void validate(const Interval1DProblem& p) {
    if (!(p.b_l < p.f_l && p.f_l < p.f_r && p.f_r < p.b_r))
        throw std::invalid_argument("interval problem requires b_l < f_l < f_r < b_r");
    if (!(p.a > 0.0)) throw std::invalid_argument("diffusion coefficient must be positive");
}

struct Exact1DSolution {
    double alpha = 0.0;   // (f_l - b_l)/sqrt(a)
    double beta = 0.0;    // (b_r - f_r)/sqrt(a)
    double k = 0.0;       // T/sqrt(a)
    double sqrt_a = 0.0;
    double C_l = 0.0;     // exp(log_cl); underflows to 0 once alpha exceeds ~700
    double C_r = 0.0;
    double log_cl = 0.0;  // overflow-safe representation used by the evaluators
    double log_cr = 0.0;
    double slope = 0.0;   // s*
    double h = 0.0;       // 2/(sqrt(a) s*)
    double s_fl = 0.0;    // s(f_l) = -C_l sinh(alpha)
    double s_fr = 0.0;    // s(f_r) = +C_r sinh(beta)
};

// Arguments above this use the log-domain evaluation path; below it the
// plain formulas are both safe (sinh(60) ~ 6e25) and a few ulp tighter.
inline constexpr double kLogDomainThreshold = 30.0;

namespace detail {

// C * sinh(xi) with C given in log form; xi >= 0.
inline double amp_sinh(double log_c, double xi) {
    if (xi == 0.0) return 0.0;
    if (xi <= kLogDomainThreshold) return std::exp(log_c) * std::sinh(xi);
    return std::exp(log_c + log_sinh(xi));
}

inline double amp_cosh(double log_c, double xi) {
    if (xi <= kLogDomainThreshold) return std::exp(log_c) * std::cosh(xi);
    return std::exp(log_c + log_cosh(xi));
}

}  // namespace detail

inline Exact1DSolution solve_exact(const Interval1DProblem& p) {
    validate(p);
    Exact1DSolution sol;
    const double r = std::sqrt(p.a);
    const double T = p.thickness();
    sol.sqrt_a = r;
    sol.alpha = (p.f_l - p.b_l) / r;
    sol.beta = (p.b_r - p.f_r) / r;
    sol.k = T / r;

    const double t_sum = std::tanh(sol.alpha) + std::tanh(sol.beta);
    const double denom = t_sum + sol.k;  // = Delta / (cosh(alpha) cosh(beta))
    sol.log_cl = std::log(sol.k) - std::log(r) - log_cosh(sol.alpha) - std::log(denom);
    sol.log_cr = std::log(sol.k) - std::log(r) - log_cosh(sol.beta) - std::log(denom);
    sol.C_l = std::exp(sol.log_cl);
    sol.C_r = std::exp(sol.log_cr);

    sol.h = 2.0 * r + 2.0 * T / t_sum;
    sol.slope = 2.0 / (r * sol.h);
    sol.s_fl = -detail::amp_sinh(sol.log_cl, sol.alpha);
    sol.s_fr = detail::amp_sinh(sol.log_cr, sol.beta);
    if (!std::isfinite(sol.slope) || !std::isfinite(sol.s_fl) || !std::isfinite(sol.s_fr))
        throw std::runtime_error("exact 1D solve produced non-finite values");
    return sol;
}

// s(y) for b_l <= y <= b_r.  The film segment is the linear blend of the
// two joint values, so it is continuous at f_l and f_r by construction.
inline double eval_solution(const Exact1DSolution& sol, const Interval1DProblem& p, double y) {
    if (y <= p.f_l) return -detail::amp_sinh(sol.log_cl, (y - p.b_l) / sol.sqrt_a);
    if (y >= p.f_r) return detail::amp_sinh(sol.log_cr, (p.b_r - y) / sol.sqrt_a);
    const double t = (y - p.f_l) / p.thickness();
    return sol.s_fl * (1.0 - t) + sol.s_fr * t;
}

// s'(y); returns the one-sided void limit at the joints, i.e. exactly
// s'(f_l - 0) at y = f_l and s'(f_r + 0) at y = f_r.
inline double eval_solution_derivative(const Exact1DSolution& sol, const Interval1DProblem& p,
                                       double y) {
    if (y <= p.f_l) return -detail::amp_cosh(sol.log_cl, (y - p.b_l) / sol.sqrt_a) / sol.sqrt_a;
    if (y >= p.f_r) return -detail::amp_cosh(sol.log_cr, (p.b_r - y) / sol.sqrt_a) / sol.sqrt_a;
    return sol.slope;
}

struct ThicknessBound1D {
    double lower = 0.0;
    double upper = 0.0;
};

// Envelope for h - T:  0 <= h - T <= 2 sqrt(a) + 4 T exp(-2 m / sqrt(a))
// with m the smaller void gap.
inline ThicknessBound1D thickness_bound_1d(const Interval1DProblem& p) {
    validate(p);
    const double r = std::sqrt(p.a);
    const double m = std::min(p.b_r - p.f_r, p.f_l - p.b_l);
    return {0.0, 2.0 * r + 4.0 * p.thickness() * std::exp(-2.0 * m / r)};
}

// The interval of the circumscribing slab (min b_l, max b_r).
inline Interval1DProblem reference_interval(const DomainSpec& spec, double a) {
    const auto g = derive_constants(spec);
    return {g.b_l_min, g.b_r_max, spec.film_lo, spec.film_hi, a};
}

// Reference solution on the circumscribing slab; for flat boundaries it
// coincides with the exact solution of the original domain.
inline Exact1DSolution reference_film_solution(const DomainSpec& spec, double a) {
    return solve_exact(reference_interval(spec, a));
}

// exp(-R/sqrt(a))/sqrt(a): bound on the boundary mismatch between the
// wavy-domain solution and the slab reference.  Meaningful only when
// R > 0; callers decide applicability from the geometric constants.
inline double boundary_gap_bound(const GeometricConstants& g, double a) {
    const double r = std::sqrt(a);
    return std::exp(-g.R / r) / r;
}

}  // namespace filmlab
