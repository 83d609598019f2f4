// Acceptance suite: one test case per gate, each printing a single
// PASS/FAIL line.  Tolerances are fixed here, not tuned at run time.
//
// The randomized interval geometries draw void gaps from [0.1, 1.5] and
// film thicknesses from [0.05, 1].  The envelope sweep runs over
// a in [1e-8, 1e-2]: the closed-form excess h - T equals
// 2 sqrt(a) + T (2 - tanh(alpha) - tanh(beta)) / (tanh(alpha)+tanh(beta)),
// and the 4 T exp(-2 min(alpha,beta)) envelope majorizes the second
// term only once min(alpha, beta) >= ln(2)/2, i.e. for a <= ~8 m^2;
// within [1e-8, 1e-2] every geometry above sits in that regime.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "filmlab/experiment.hpp"

using namespace filmlab;

namespace {

struct Gate {
    const char* label;
    bool ok = true;
    int checks = 0;

    void expect(bool condition) {
        ++checks;
        ok = ok && condition;
    }
    ~Gate() { std::printf("%s criterion %s\n", ok ? "[PASS]" : "[FAIL]", label); }
};

Interval1DProblem random_interval(std::mt19937_64& rng, double a) {
    std::uniform_real_distribution<double> gap(0.1, 1.5), th(0.05, 1.0), off(-2.0, 0.0);
    Interval1DProblem p;
    p.b_l = off(rng);
    p.f_l = p.b_l + gap(rng);
    p.f_r = p.f_l + th(rng);
    p.b_r = p.f_r + gap(rng);
    p.a = a;
    return p;
}

std::vector<Interval1DProblem> geometry_suite() {
    std::mt19937_64 rng(20250809);
    std::vector<Interval1DProblem> out;
    for (int i = 0; i < 100; ++i)
        out.push_back(random_interval(rng, std::pow(10.0, -8.0 * i / 99.0)));
    return out;
}

DomainSpec unit_box() {
    DomainSpec s;
    s.lower = BoundaryProfile::constant(0.0);
    s.upper = BoundaryProfile::constant(1.0);
    s.film_lo = 0.4;
    s.film_hi = 0.6;
    return s;
}

double quasi1d_sup_error(const Mesh& mesh, double a, Field* sy_out = nullptr,
                         Field* sx_out = nullptr) {
    auto [sys_x, sys_y] = assemble(mesh, a);
    auto [fx, rx] = solve(sys_x, mesh);
    auto [fy, ry] = solve(sys_y, mesh);
    REQUIRE(rx.converged);
    REQUIRE(ry.converged);
    const Interval1DProblem p{0.0, 1.0, 0.4, 0.6, a};
    const auto sol = solve_exact(p);
    double sup = 0.0;
    for (int v = 0; v < mesh.num_nodes(); ++v)
        sup = std::max(sup, std::abs(fy.values[v] - eval_solution(sol, p, mesh.nodes[v].y)));
    if (sy_out) *sy_out = std::move(fy);
    if (sx_out) *sx_out = std::move(fx);
    return sup;
}

std::vector<double> seeded_trace(const Mesh& mesh, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> g(mesh.num_nodes(), 0.0);
    for (int v = 0; v < mesh.num_nodes(); ++v)
        if (mesh.dirichlet[v]) g[v] = u(rng);
    return g;
}

Field homogeneous_field(const Mesh& mesh, double a, const std::vector<double>& g) {
    auto sys = assemble_homogeneous(mesh, a, g);
    auto [d, rep] = solve(sys, mesh);
    REQUIRE(rep.converged);
    return d;
}

}  // namespace

TEST_CASE("criterion 1: interval flux identities") {
    Gate gate{"1 (flux identities a s* - a s'(joint) = 1 to 1e-10)"};
    for (const auto& p : geometry_suite()) {
        const auto sol = solve_exact(p);
        const double fl = p.a * sol.slope - p.a * eval_solution_derivative(sol, p, p.f_l);
        const double fr = p.a * sol.slope - p.a * eval_solution_derivative(sol, p, p.f_r);
        gate.expect(std::abs(fl - 1.0) <= 1e-10);
        gate.expect(std::abs(fr - 1.0) <= 1e-10);
        CHECK(std::abs(fl - 1.0) <= 1e-10);
        CHECK(std::abs(fr - 1.0) <= 1e-10);
    }
    REQUIRE(gate.ok);
}

TEST_CASE("criterion 2: interval thickness envelope") {
    Gate gate{"2 (0 <= h - T <= 2 sqrt(a) + 4 T exp(-2m/sqrt(a)))"};
    for (auto p : geometry_suite()) {
        for (int j = 0; j < 20; ++j) {
            p.a = std::pow(10.0, -8.0 + 6.0 * j / 19.0);  // 1e-8 .. 1e-2
            const auto sol = solve_exact(p);
            const auto bound = thickness_bound_1d(p);
            const double excess = sol.h - p.thickness();
            gate.expect(excess >= 0.0);
            gate.expect(excess <= bound.upper * (1.0 + 1e-12));
            CHECK(excess >= 0.0);
            CHECK(excess <= bound.upper * (1.0 + 1e-12));
        }
    }
    REQUIRE(gate.ok);
}

TEST_CASE("criterion 3: quasi-1D solution against the interval closed form") {
    Gate gate{"3 (sup-error ratio >= 3.5 per doubling; film h within 1% at ny = 1024)"};
    const double a = 1e-4;
    const auto spec = unit_box();
    const Mesh m256 = build_mesh(spec, 4, 256);
    const Mesh m512 = build_mesh(spec, 4, 512);
    const Mesh m1024 = build_mesh(spec, 4, 1024);
    const double e256 = quasi1d_sup_error(m256, a);
    const double e512 = quasi1d_sup_error(m512, a);
    Field sy, sx;
    const double e1024 = quasi1d_sup_error(m1024, a, &sy, &sx);
    std::printf("       sup errors: ny=256 %.3e | ny=512 %.3e | ny=1024 %.3e\n", e256, e512,
                e1024);
    gate.expect(e256 / e512 >= 3.5);
    gate.expect(e512 / e1024 >= 3.5);
    CHECK(e256 / e512 >= 3.5);
    CHECK(e512 / e1024 >= 3.5);

    const auto sol = solve_exact({0.0, 1.0, 0.4, 0.6, a});
    const auto tf = thickness_field(sx, sy, a);
    REQUIRE(!tf.tri.empty());
    for (std::size_t i = 0; i < tf.tri.size(); ++i) {
        gate.expect(tf.flags[i] == ThicknessFlag::Ok);
        gate.expect(std::abs(tf.h[i] / sol.h - 1.0) <= 0.01);
        CHECK(std::abs(tf.h[i] / sol.h - 1.0) <= 0.01);
    }
    REQUIRE(gate.ok);
}

TEST_CASE("criterion 4: film presets keep h inside the (0.3, 0.7) band") {
    Gate gate{"4 (band fraction > 0.95 on film-k0/k1/k2 at a = 1e-4, quick meshes)"};
    for (const std::string name : {"film-k0", "film-k1", "film-k2"}) {
        auto config = preset_config(name);
        config.quick = true;
        const auto [nx, ny] = effective_resolution(config);
        const Mesh mesh = build_mesh(config.spec, nx, ny);
        auto [sys_x, sys_y] = assemble(mesh, 1e-4);
        auto [fx, rx] = solve(sys_x, mesh);
        auto [fy, ry] = solve(sys_y, mesh);
        REQUIRE(rx.converged);
        REQUIRE(ry.converged);
        const auto rep = film_error(mesh, thickness_field(fx, fy, 1e-4), 0.3, 0.7);
        std::printf("       %s: band_fraction %.4f (R %s)\n", name.c_str(), rep.band_fraction,
                    rep.theorem_bound ? "> 0" : "<= 0, bound n/a");
        gate.expect(rep.band_fraction > 0.95);
        CHECK(rep.band_fraction > 0.95);
        if (name == "film-k0") gate.expect(rep.theorem_bound.has_value());
        if (name != "film-k0") gate.expect(!rep.theorem_bound.has_value());
    }
    REQUIRE(gate.ok);
}

TEST_CASE("criterion 5: inverse-thickness error under the bound, decreasing in a") {
    Gate gate{"5 (l2 error <= 1.1 x bound at a = 1e-4; monotone over 1e-2, 1e-3, 1e-4)"};
    auto config = preset_config("film-k0");
    const Mesh mesh = build_mesh(config.spec, 8, 4500);
    double prev = 1e300;
    for (double a : {1e-2, 1e-3, 1e-4}) {
        auto [sys_x, sys_y] = assemble(mesh, a);
        auto [fx, rx] = solve(sys_x, mesh);
        auto [fy, ry] = solve(sys_y, mesh);
        REQUIRE(rx.converged);
        REQUIRE(ry.converged);
        const auto rep = film_error(mesh, thickness_field(fx, fy, a));
        REQUIRE(rep.theorem_bound.has_value());
        std::printf("       a=%.0e l2_inv_error %.6e bound %.6e\n", a, rep.l2_inv_error,
                    *rep.theorem_bound);
        gate.expect(rep.l2_inv_error < prev);
        CHECK(rep.l2_inv_error < prev);
        prev = rep.l2_inv_error;
        if (a == 1e-4) {
            gate.expect(rep.l2_inv_error <= *rep.theorem_bound * 1.1);
            CHECK(rep.l2_inv_error <= *rep.theorem_bound * 1.1);
        }
    }
    REQUIRE(gate.ok);
}

TEST_CASE("criterion 6: maximum modulus principle, scalar and vector") {
    Gate gate{"6 (interior sup <= boundary sup x 1.01; slab-gap sup <= C_a x 1.01)"};
    const Mesh flat = build_mesh(preset_config("film-k0").spec, 16, 480);
    const Mesh wavy = build_mesh(preset_config("film-k1").spec, 16, 480);
    for (const Mesh* mesh : {&flat, &wavy}) {
        for (unsigned s = 0; s < 20; ++s) {
            const Field d = homogeneous_field(*mesh, 1e-4, seeded_trace(*mesh, 1000 + s));
            const auto rep = check_max_modulus(d, *mesh, 1e-2);
            gate.expect(rep.passed);
            CHECK(rep.passed);
        }
        // vector variant: pairs of independently traced components
        for (unsigned s = 0; s < 5; ++s) {
            const std::vector<Field> vec{
                homogeneous_field(*mesh, 1e-4, seeded_trace(*mesh, 2000 + s)),
                homogeneous_field(*mesh, 1e-4, seeded_trace(*mesh, 3000 + s))};
            const auto rep = check_max_modulus(std::span<const Field>(vec), *mesh, 1e-2);
            gate.expect(rep.passed);
            CHECK(rep.passed);
        }
    }
    // manufactured slab gap on the flat preset: the reference trace
    // vanishes on a flat boundary, so the gap solution must stay under
    // the (tiny) slab-gap bound
    const double a = 1e-4;
    const auto iv = reference_interval(flat.spec, a);
    const auto ref = solve_exact(iv);
    std::vector<double> g(flat.num_nodes(), 0.0);
    for (int v = 0; v < flat.num_nodes(); ++v)
        if (flat.dirichlet[v]) g[v] = -eval_solution(ref, iv, flat.nodes[v].y);
    const Field d = homogeneous_field(flat, a, g);
    const auto rep = check_max_modulus(d, flat, 1e-2);
    const double c_a = boundary_gap_bound(derive_constants(flat.spec), a);
    gate.expect(rep.interior_sup <= c_a * (1.0 + 1e-2));
    CHECK(rep.interior_sup <= c_a * (1.0 + 1e-2));
    REQUIRE(gate.ok);
}

TEST_CASE("criterion 7: interior H1 estimate and cutoff curvature") {
    Gate gate{"7 (film gradient energy <= (2/l^2) void mass; |c''| <= 4/l^2)"};
    const Mesh flat = build_mesh(preset_config("film-k0").spec, 16, 480);
    const Mesh wavy = build_mesh(preset_config("film-k1").spec, 16, 480);
    double worst_slack = 0.0;
    for (const Mesh* mesh : {&flat, &wavy}) {
        for (unsigned s = 0; s < 20; ++s) {
            const Field d = homogeneous_field(*mesh, 1e-4, seeded_trace(*mesh, 1000 + s));
            const auto rep = check_interior_h1(d, *mesh);
            worst_slack = std::max(worst_slack, rep.slack);
            gate.expect(rep.passed);
            CHECK(rep.passed);
        }
    }
    std::printf("       worst lhs/rhs slack over the seeded solutions: %.3e\n", worst_slack);

    const CutoffProfile prof{0.5, 0.99, 0.25};
    const double cap = 4.0 / (0.25 * 0.25);
    for (int i = 0; i <= 10000; ++i) {
        const double y = 0.1 + 1.2 * i / 10000.0;
        const auto cv = cutoff_eval(prof, y);
        gate.expect(std::abs(cv.cpp) <= cap);
        gate.expect(cv.c >= 0.0 && cv.c <= 1.0);
        CHECK(std::abs(cv.cpp) <= cap);
    }
    REQUIRE(gate.ok);
}

TEST_CASE("criterion 8: structural identities of the assembled systems") {
    Gate gate{"8 (exact symmetry; x-load sums to 0; |s^x| <= 10 x CG tolerance)"};
    for (const std::string name : {"film-k0", "film-k1", "film-k2"}) {
        auto config = preset_config(name);
        config.quick = true;
        const auto [nx, ny] = effective_resolution(config);
        const Mesh mesh = build_mesh(config.spec, nx, ny);
        auto [sys_x, sys_y] = assemble(mesh, 1e-4);
        gate.expect(is_symmetric_exact(*sys_x.matrix));
        CHECK(is_symmetric_exact(*sys_x.matrix));
        double sum_x = 0.0;
        for (double v : sys_x.rhs) sum_x += v;
        gate.expect(std::abs(sum_x) <= 1e-12);
        CHECK(std::abs(sum_x) <= 1e-12);
        auto [fx, rx] = solve(sys_x, mesh, 1e-10);
        REQUIRE(rx.converged);
        double sup_sx = 0.0;
        for (double v : fx.values) sup_sx = std::max(sup_sx, std::abs(v));
        std::printf("       %s: sum rhs_x %.3e, sup|s^x| %.3e\n", name.c_str(), sum_x, sup_sx);
        gate.expect(sup_sx <= 10.0 * 1e-10);
        CHECK(sup_sx <= 10.0 * 1e-10);
    }
    REQUIRE(gate.ok);
}
