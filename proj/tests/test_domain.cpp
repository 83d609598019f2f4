#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "filmlab/domain.hpp"

using namespace filmlab;

namespace {

DomainSpec film_slab(double k) {
    // b_l = 0, b_r = 3 - k sin^2(pi x), film (0.5, 0.99)
    DomainSpec s;
    s.lower = BoundaryProfile::constant(0.0);
    s.upper = BoundaryProfile::sinusoidal_squared(3.0, k, 1);
    s.film_lo = 0.5;
    s.film_hi = 0.99;
    return s;
}

}  // namespace

TEST_CASE("profile evaluation") {
    auto p = BoundaryProfile::sinusoidal_squared(3.0, 1.0, 1);
    CHECK(profile_eval(p, 0.0) == 3.0);
    CHECK(profile_eval(p, 0.5) == Catch::Approx(2.0).margin(1e-15));
    auto c = BoundaryProfile::constant(0.0);
    CHECK(profile_eval(c, 0.123) == 0.0);
    CHECK(profile_eval(c, -7.5) == 0.0);
}

TEST_CASE("profiles are 1-periodic") {
    auto f = BoundaryProfile::fourier(1.5, {{0.1, -0.05}, {0.02, 0.03}});
    auto s = BoundaryProfile::sinusoidal_squared(2.0, 0.7, 2);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = ux(rng);
        for (const auto& p : {f, s}) {
            const double v0 = profile_eval(p, x);
            CHECK(profile_eval(p, x + 1.0) == Catch::Approx(v0).epsilon(1e-13).margin(1e-13));
            CHECK(profile_eval(p, x - 3.0) == Catch::Approx(v0).epsilon(1e-13).margin(1e-13));
        }
    }
}

TEST_CASE("derived constants for the film slab family") {
    // flat top: R = min{2.01, 0.5} - 0
    auto g0 = derive_constants(film_slab(0.0));
    CHECK(g0.T == Catch::Approx(0.49));
    CHECK(g0.R == Catch::Approx(0.5));
    CHECK(g0.m == Catch::Approx(0.5));
    CHECK(g0.m_bar == Catch::Approx(0.5));

    // waviness 1 exceeds the smaller gap: R < 0
    auto g1 = derive_constants(film_slab(1.0));
    CHECK(g1.R == Catch::Approx(-0.5));
    CHECK(g1.b_r_min == Catch::Approx(2.0));
    CHECK(g1.b_r_max == Catch::Approx(3.0));

    // symmetric flat box
    DomainSpec box;
    box.lower = BoundaryProfile::constant(-1.0);
    box.upper = BoundaryProfile::constant(1.0);
    box.film_lo = -0.5;
    box.film_hi = 0.5;
    auto gb = derive_constants(box);
    CHECK(gb.R == Catch::Approx(0.5));
    CHECK(gb.m == Catch::Approx(0.5));
    CHECK(gb.m_bar == Catch::Approx(0.5));
}

TEST_CASE("derived constants reject a film leaving the domain") {
    DomainSpec bad = film_slab(0.0);
    bad.film_hi = 3.5;
    CHECK_THROWS_AS(derive_constants(bad), std::invalid_argument);
    bad = film_slab(2.5);  // min b_r = 0.5 < f_r
    CHECK_THROWS_AS(derive_constants(bad), std::invalid_argument);
}

TEST_CASE("fourier extrema agree with brute force") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> amp(-0.2, 0.2);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<double, double>> coeffs;
        for (int j = 1; j <= 4; ++j) coeffs.push_back({amp(rng) / j, amp(rng) / j});
        auto p = BoundaryProfile::fourier(2.0, coeffs);
        const auto [lo, hi] = profile_extrema(p);
        double blo = 1e300, bhi = -1e300;
        const int n = 1000000;
        for (int i = 0; i < n; ++i) {
            const double v = profile_eval(p, static_cast<double>(i) / n);
            blo = std::min(blo, v);
            bhi = std::max(bhi, v);
        }
        CHECK(lo == Catch::Approx(blo).margin(1e-9));
        CHECK(hi == Catch::Approx(bhi).margin(1e-9));
        CHECK(lo <= blo + 1e-12);  // refined extrema can only be sharper
        CHECK(hi >= bhi - 1e-12);
    }
}

TEST_CASE("constant ordering R <= m_bar and m <= m_bar") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        DomainSpec s;
        s.lower = BoundaryProfile::sinusoidal_squared(-u(rng) * 0.3, u(rng) * 0.3, 1 + trial % 3);
        s.upper = BoundaryProfile::sinusoidal_squared(2.0 + u(rng), u(rng) * 0.5, 1 + trial % 2);
        s.film_lo = 0.2;
        s.film_hi = 0.2 + 0.5 * u(rng) + 0.05;
        auto g = derive_constants(s);
        CHECK(g.R <= g.m_bar + 1e-15);
        CHECK(g.m <= g.m_bar + 1e-15);
    }
}

TEST_CASE("indicator uses the open film interval") {
    auto s = film_slab(0.0);
    CHECK(indicator(s, 0.3, 0.5 * (s.film_lo + s.film_hi)) == 1);
    CHECK(indicator(s, 0.3, s.film_hi + 0.1) == 0);
    CHECK(indicator(s, 0.3, s.film_lo) == 0);
    CHECK(indicator(s, 0.3, s.film_hi) == 0);
}
