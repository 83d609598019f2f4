// Experiment runner: key=value configs, the shipped film presets, the
// per-coefficient solve/postprocess pipeline with CSV + PPM outputs,
// coefficient sweeps with a mesh-resolution floor, and the check
// battery behind the `check` verb.
//
// Exit code convention (shared with the CLI): 0 ok, 1 config error,
// 2 solver failure, 3 check failure.
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "filmlab/assembly.hpp"
#include "filmlab/domain.hpp"
#include "filmlab/exact1d.hpp"
#include "filmlab/mesh.hpp"
#include "filmlab/solver.hpp"
#include "filmlab/thickness.hpp"
#include "filmlab/verify.hpp"

namespace filmlab {

struct ExperimentConfig {
    DomainSpec spec;
    std::vector<double> a_list;
    int nx = 64;
    int ny = 0;  // 0: derived from the domain height at build time
    double band_lo = 0.3;
    double band_hi = 0.7;
    std::string out_dir = "out";
    std::string name = "custom";
    unsigned seed = 1;
    bool quick = false;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- presets ------------------------------------------------------------

// film-k<k>: flat bottom at 0, top 3 - k sin^2(pi x), film (0.5, 0.99).
// Full resolution targets ~3000 cells per unit height for the 1e-6
// coefficient; quick mode divides that by 10 for CI-scale runs.
inline ExperimentConfig preset_config(const std::string& name) {
    double k = 0.0;
    if (name == "film-k0") k = 0.0;
    else if (name == "film-k1") k = 1.0;
    else if (name == "film-k2") k = 2.0;
    else throw ConfigError("unknown preset: " + name);
    ExperimentConfig c;
    c.spec.lower = BoundaryProfile::constant(0.0);
    c.spec.upper = k == 0.0 ? BoundaryProfile::constant(3.0)
                            : BoundaryProfile::sinusoidal_squared(3.0, k, 1);
    c.spec.film_lo = 0.5;
    c.spec.film_hi = 0.99;
    c.a_list = {1e-4, 1e-6};
    c.nx = 96;
    c.ny = 9000;
    c.name = name;
    return c;
}

// ---- config parsing ------------------------------------------------------

namespace detail {

inline std::vector<double> parse_double_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + item + "' for key " + key);
        }
    }
    return out;
}

inline double parse_double(const std::string& s, const std::string& key) {
    const auto v = parse_double_list(s, key);
    if (v.size() != 1) throw ConfigError("expected a single number for key " + key);
    return v[0];
}

inline BoundaryProfile parse_profile(const std::map<std::string, std::string>& kv,
                                     const std::string& prefix, BoundaryProfile fallback) {
    BoundaryProfile p = fallback;
    auto get = [&](const std::string& suffix) -> std::optional<std::string> {
        const auto it = kv.find(prefix + suffix);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    if (const auto kind = get("_kind")) {
        if (*kind == "constant") p = BoundaryProfile::constant(p.base);
        else if (*kind == "sinsq") p.kind = ProfileKind::SinusoidalSquared;
        else if (*kind == "fourier") p.kind = ProfileKind::Fourier;
        else throw ConfigError("unknown profile kind '" + *kind + "' for " + prefix);
    }
    if (const auto v = get("_base")) p.base = parse_double(*v, prefix + "_base");
    if (const auto v = get("_amplitude")) p.amplitude = parse_double(*v, prefix + "_amplitude");
    if (const auto v = get("_frequency")) {
        p.frequency = static_cast<int>(parse_double(*v, prefix + "_frequency"));
        if (p.frequency < 1) throw ConfigError(prefix + "_frequency must be a positive integer");
    }
    const auto cos_v = get("_cos");
    const auto sin_v = get("_sin");
    if (cos_v || sin_v) {
        const auto cs = cos_v ? parse_double_list(*cos_v, prefix + "_cos") : std::vector<double>{};
        const auto sn = sin_v ? parse_double_list(*sin_v, prefix + "_sin") : std::vector<double>{};
        p.coefficients.clear();
        for (std::size_t j = 0; j < std::max(cs.size(), sn.size()); ++j)
            p.coefficients.push_back({j < cs.size() ? cs[j] : 0.0, j < sn.size() ? sn[j] : 0.0});
    }
    return p;
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
        value.erase(value.begin(), std::find_if(value.begin(), value.end(), notspace));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError("duplicate key " + key);
    }

    ExperimentConfig c;
    if (const auto it = kv.find("preset"); it != kv.end()) c = preset_config(it->second);
    static const std::set<std::string> known{
        "preset", "f_l", "f_r", "a_list", "nx", "ny", "band_lo", "band_hi", "out", "seed",
        "bl_kind", "bl_base", "bl_amplitude", "bl_frequency", "bl_cos", "bl_sin",
        "br_kind", "br_base", "br_amplitude", "br_frequency", "br_cos", "br_sin"};
    for (const auto& [key, value] : kv)
        if (!known.count(key)) throw ConfigError("unknown key " + key);

    c.spec.lower = detail::parse_profile(kv, "bl", c.spec.lower);
    c.spec.upper = detail::parse_profile(kv, "br", c.spec.upper);
    auto get = [&](const char* key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    if (const auto v = get("f_l")) c.spec.film_lo = detail::parse_double(*v, "f_l");
    if (const auto v = get("f_r")) c.spec.film_hi = detail::parse_double(*v, "f_r");
    if (const auto v = get("a_list")) c.a_list = detail::parse_double_list(*v, "a_list");
    if (const auto v = get("nx")) c.nx = static_cast<int>(detail::parse_double(*v, "nx"));
    if (const auto v = get("ny")) c.ny = static_cast<int>(detail::parse_double(*v, "ny"));
    if (const auto v = get("band_lo")) c.band_lo = detail::parse_double(*v, "band_lo");
    if (const auto v = get("band_hi")) c.band_hi = detail::parse_double(*v, "band_hi");
    if (const auto v = get("out")) c.out_dir = *v;
    if (const auto v = get("seed")) c.seed = static_cast<unsigned>(detail::parse_double(*v, "seed"));
    return c;
}

inline ExperimentConfig load_config(const std::string& path_or_preset) {
    namespace fs = std::filesystem;
    if (fs::exists(path_or_preset)) {
        std::ifstream is(path_or_preset);
        if (!is) throw ConfigError("cannot open config file " + path_or_preset);
        ExperimentConfig c = parse_config(is);
        if (c.name == "custom") c.name = fs::path(path_or_preset).stem().string();
        return c;
    }
    return preset_config(path_or_preset);
}

inline void validate_config(const ExperimentConfig& c) {
    if (c.a_list.empty()) throw ConfigError("a_list must not be empty");
    for (double a : c.a_list)
        if (!(a > 0.0)) throw ConfigError("every coefficient in a_list must be positive");
    if (!(c.band_lo < c.band_hi)) throw ConfigError("band_lo must be below band_hi");
    if (c.nx < 4) throw ConfigError("nx must be at least 4");
    derive_constants(c.spec);  // film placement
}

// effective mesh resolution: ny defaults to ~64 cells per unit height,
// quick mode runs a tenth of the requested vertical resolution
inline std::pair<int, int> effective_resolution(const ExperimentConfig& c) {
    const auto g = derive_constants(c.spec);
    const double height = g.b_r_max - g.b_l_min;
    int ny = c.ny > 0 ? c.ny : static_cast<int>(std::lround(64.0 * height));
    int nx = c.nx;
    if (c.quick) {
        nx = std::max(8, nx / 2);
        ny = std::max(48, ny / 10);
    }
    return {nx, std::max(8, ny)};
}

// ---- output helpers -----------------------------------------------------

inline std::string format_a(double a) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", a);
    return buf;
}

// Raster of the thickness map: white outside the domain, orange in the
// void, green where h lies in the band, blue for film cells out of
// band (or flagged).  512 columns; rows follow the domain height.
inline void write_heatmap(const Mesh& mesh, const ThicknessField& tf, double band_lo,
                          double band_hi, std::ostream& os) {
    const auto g = derive_constants(mesh.spec);
    const int width = 512;
    const double span = g.b_r_max - g.b_l_min;
    const int height = std::min(1536, std::max(64, static_cast<int>(std::lround(width * span))));

    std::vector<int> tri_to_film(mesh.num_triangles(), -1);
    for (std::size_t i = 0; i < tf.tri.size(); ++i) tri_to_film[tf.tri[i]] = static_cast<int>(i);

    const double T = mesh.spec.thickness();
    os << "P6\n" << width << ' ' << height << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(width) * 3);
    for (int py = 0; py < height; ++py) {
        const double y = g.b_r_max - (py + 0.5) / height * span;
        for (int px = 0; px < width; ++px) {
            const double x = (px + 0.5) / width;
            unsigned char r = 255, gg = 255, b = 255;  // outside the domain
            if (y > profile_eval(mesh.spec.lower, x) && y < profile_eval(mesh.spec.upper, x)) {
                if (indicator(mesh.spec, x, y)) {
                    // film: locate the containing triangle in the flat band
                    const int i = std::min(mesh.nx - 1, static_cast<int>(x * mesh.nx));
                    const double v = (y - mesh.spec.film_lo) / T * mesh.n2;
                    const int j = std::min(mesh.n2 - 1, static_cast<int>(v));
                    const double u = x * mesh.nx - i, w = v - j;
                    const int quad = i * (mesh.rows - 1) + mesh.n1 + j;
                    const int t = 2 * quad + (w <= u ? 0 : 1);
                    const int f = tri_to_film[t];
                    const bool in_band = f >= 0 && tf.flags[f] == ThicknessFlag::Ok &&
                                         tf.h[f] > band_lo && tf.h[f] < band_hi;
                    if (in_band) { r = 60; gg = 180; b = 75; }
                    else { r = 70; gg = 70; b = 200; }
                } else {
                    r = 255; gg = 165; b = 0;  // void
                }
            }
            row[3 * px] = r;
            row[3 * px + 1] = gg;
            row[3 * px + 2] = b;
        }
        os.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
}

namespace detail {

struct CaseResult {
    double a = 0.0;
    FilmErrorReport report;
    int iterations = 0;
    double sup_sx = 0.0;
    Field sx, sy;
    ThicknessField tf;
};

// one assemble+solve+postprocess pass; throws on solver failure
inline CaseResult run_case(const Mesh& mesh, double a, double band_lo, double band_hi,
                           double tol = 1e-10) {
    auto [sys_x, sys_y] = assemble(mesh, a);
    auto [fx, rx] = solve(sys_x, mesh, tol);
    auto [fy, ry] = solve(sys_y, mesh, tol);
    if (!rx.converged || !ry.converged)
        throw std::runtime_error("solver did not converge at a = " + format_a(a));
    CaseResult out;
    out.a = a;
    out.iterations = rx.iterations + ry.iterations;
    for (double v : fx.values) out.sup_sx = std::max(out.sup_sx, std::abs(v));
    out.tf = thickness_field(fx, fy, a);
    out.report = film_error(mesh, out.tf, band_lo, band_hi);
    out.sx = std::move(fx);
    out.sy = std::move(fy);
    return out;
}

inline double max_cell_height(const Mesh& mesh) {
    double h = 0.0;
    for (int i = 0; i < mesh.nx; ++i)
        for (int j = 0; j + 1 < mesh.rows; ++j)
            h = std::max(h, mesh.nodes[mesh.node_id(i, j + 1)].y - mesh.nodes[mesh.node_id(i, j)].y);
    return h;
}

inline void append_summary_row(std::ostream& os, const std::string& name, double a, int nx,
                               int ny, double R, const FilmErrorReport& rep, int iterations) {
    char buf[320];
    std::string bound = "n/a";
    if (rep.theorem_bound) {
        char bb[48];
        std::snprintf(bb, sizeof bb, "%.17g", *rep.theorem_bound);
        bound = bb;
    }
    std::snprintf(buf, sizeof buf, "%s,%.17g,%d,%d,%.17g,%.17g,%s,%.17g,%d\n", name.c_str(), a,
                  nx, ny, R, rep.l2_inv_error, bound.c_str(), rep.band_fraction, iterations);
    os << buf;
}

}  // namespace detail

// ---- verbs ----------------------------------------------------------------

inline int run_experiment(const ExperimentConfig& config) {
    try {
        validate_config(config);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    const auto [nx, ny] = effective_resolution(config);
    const Mesh mesh = build_mesh(config.spec, nx, ny);
    const auto g = derive_constants(config.spec);

    std::ofstream summary(fs::path(config.out_dir) / "summary.csv");
    summary << "preset,a,nx,ny,R,l2_inv_error,theorem_bound,band_fraction,iterations\n";
    for (double a : config.a_list) {
        detail::CaseResult cr;
        try {
            cr = detail::run_case(mesh, a, config.band_lo, config.band_hi);
        } catch (const std::exception& e) {
            std::cerr << "solver failure: " << e.what() << "\n";
            return 2;
        }
        std::ofstream csv(fs::path(config.out_dir) / ("thickness_" + format_a(a) + ".csv"));
        write_thickness_csv(mesh, cr.tf, csv);
        std::ofstream ppm(fs::path(config.out_dir) / ("heatmap_" + format_a(a) + ".ppm"),
                          std::ios::binary);
        write_heatmap(mesh, cr.tf, config.band_lo, config.band_hi, ppm);
        detail::append_summary_row(summary, config.name, a, nx, ny, g.R, cr.report,
                                   cr.iterations);
        std::cout << config.name << " a=" << format_a(a)
                  << " l2_inv_error=" << cr.report.l2_inv_error
                  << " band_fraction=" << cr.report.band_fraction
                  << " sup|s_x|=" << cr.sup_sx << "\n";
    }
    return 0;
}

inline int run_convergence(const ExperimentConfig& config) {
    try {
        validate_config(config);
        for (std::size_t i = 1; i < config.a_list.size(); ++i)
            if (!(config.a_list[i] < config.a_list[i - 1]))
                throw ConfigError("sweep requires a strictly decreasing a_list");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    const auto [nx, ny] = effective_resolution(config);
    const Mesh mesh = build_mesh(config.spec, nx, ny);
    const double hy = detail::max_cell_height(mesh);
    const bool flat = config.spec.lower.kind == ProfileKind::Constant &&
                      config.spec.upper.kind == ProfileKind::Constant;

    std::ofstream table(fs::path(config.out_dir) / "sweep.csv");
    table << "a,l2_inv_error,theorem_bound,sup_err_vs_1d,resolved\n";
    std::printf("%-12s %-14s %-14s %-14s %s\n", "a", "l2_inv_error", "theorem_bound",
                "sup_err_1d", "resolved");

    double prev_err = -1.0;
    bool monotone = true;
    for (double a : config.a_list) {
        detail::CaseResult cr;
        try {
            cr = detail::run_case(mesh, a, config.band_lo, config.band_hi);
        } catch (const std::exception& e) {
            std::cerr << "solver failure: " << e.what() << "\n";
            return 2;
        }
        const bool resolved = std::sqrt(a) >= 4.0 * hy;
        double sup_err = std::nan("");
        if (flat) {
            const Interval1DProblem p{profile_eval(config.spec.lower, 0.0),
                                      profile_eval(config.spec.upper, 0.0), config.spec.film_lo,
                                      config.spec.film_hi, a};
            const auto sol = solve_exact(p);
            sup_err = 0.0;
            for (int v = 0; v < mesh.num_nodes(); ++v)
                sup_err = std::max(sup_err, std::abs(cr.sy.values[v] -
                                                     eval_solution(sol, p, mesh.nodes[v].y)));
        }
        char bound[48] = "n/a";
        if (cr.report.theorem_bound)
            std::snprintf(bound, sizeof bound, "%.17g", *cr.report.theorem_bound);
        char buf[240];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.17g,%s\n", a, cr.report.l2_inv_error,
                      bound, sup_err, resolved ? "yes" : "under-resolved");
        table << buf;
        std::printf("%-12.3e %-14.6e %-14.6e %-14.6e %s\n", a, cr.report.l2_inv_error,
                    cr.report.theorem_bound ? *cr.report.theorem_bound : std::nan(""), sup_err,
                    resolved ? "yes" : "under-resolved");
        if (flat && resolved) {
            if (prev_err >= 0.0 && !(cr.report.l2_inv_error < prev_err)) monotone = false;
            prev_err = cr.report.l2_inv_error;
        }
    }
    if (flat && config.a_list.size() > 1 && !monotone) {
        std::cerr << "check failure: inverse-thickness error did not decrease monotonically "
                     "over the resolved sweep\n";
        return 3;
    }
    return 0;
}

inline int export_mesh(const ExperimentConfig& config) {
    try {
        validate_config(config);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    const auto [nx, ny] = effective_resolution(config);
    const Mesh mesh = build_mesh(config.spec, nx, ny);
    std::ofstream os(fs::path(config.out_dir) / "mesh.txt");
    write_mesh_text(mesh, os);
    std::cout << "wrote " << (fs::path(config.out_dir) / "mesh.txt").string() << " ("
              << mesh.num_nodes() << " nodes, " << mesh.num_triangles()
              << " triangles, min angle " << mesh.min_angle_deg << " deg)\n";
    return 0;
}

// ---- check battery --------------------------------------------------------

namespace detail {

inline Interval1DProblem random_interval(std::mt19937_64& rng, double a) {
    std::uniform_real_distribution<double> gap(0.1, 1.5), th(0.05, 1.0), off(-2.0, 0.0);
    Interval1DProblem p;
    p.b_l = off(rng);
    p.f_l = p.b_l + gap(rng);
    p.f_r = p.f_l + th(rng);
    p.b_r = p.f_r + gap(rng);
    p.a = a;
    return p;
}

inline std::vector<double> random_trace(const Mesh& mesh, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> g(mesh.num_nodes(), 0.0);
    for (int v = 0; v < mesh.num_nodes(); ++v)
        if (mesh.dirichlet[v]) g[v] = u(rng);
    return g;
}

}  // namespace detail

// Fixed-seed invariant battery; writes <out>/checks.jsonl and returns 3
// if any gated check fails.
inline int run_checks(const std::string& out_dir, unsigned seed = 1) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<CheckRecord> recs;
    auto gated = [&](const std::string& id, double lhs, double rhs) {
        recs.push_back({id, lhs, rhs, lhs - rhs, lhs <= rhs, true});
    };
    auto info = [&](const std::string& id, double lhs, double rhs) {
        recs.push_back({id, lhs, rhs, lhs - rhs, lhs <= rhs, false});
    };

    std::mt19937_64 rng(seed);

    // interval solution: flux identities across the coefficient range
    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double a = std::pow(10.0, -8.0 * i / 99.0);
            const auto p = detail::random_interval(rng, a);
            const auto sol = solve_exact(p);
            const double fl = p.a * sol.slope - p.a * eval_solution_derivative(sol, p, p.f_l);
            const double fr = p.a * sol.slope - p.a * eval_solution_derivative(sol, p, p.f_r);
            worst = std::max({worst, std::abs(fl - 1.0), std::abs(fr - 1.0)});
        }
        gated("exact1d-flux-identity", worst, 1e-10);
    }
    // interval solution: envelope over a 20-point sweep
    {
        double worst = 0.0;
        bool nonneg = true;
        for (int i = 0; i < 100; ++i) {
            auto p = detail::random_interval(rng, 1.0);
            for (int j = 0; j < 20; ++j) {
                p.a = std::pow(10.0, -8.0 + 6.0 * j / 19.0);
                const auto sol = solve_exact(p);
                const auto b = thickness_bound_1d(p);
                const double excess = sol.h - p.thickness();
                if (excess < 0.0) nonneg = false;
                worst = std::max(worst, excess / b.upper);
            }
        }
        gated("exact1d-envelope", worst, 1.0 + 1e-12);
        gated("exact1d-excess-nonnegative", nonneg ? 0.0 : 1.0, 0.5);
    }
    // golden thickness of the film slab
    {
        const auto sol = solve_exact({0.0, 3.0, 0.5, 0.99, 1e-4});
        gated("exact1d-golden-h", std::abs(sol.h / 0.51 - 1.0), 1e-13);
    }

    // ~6e-3 cell height: the 1e-4 boundary layers stay resolved
    const Mesh quick_flat = build_mesh(preset_config("film-k0").spec, 16, 480);
    const Mesh quick_wavy = build_mesh(preset_config("film-k1").spec, 16, 480);

    // assembly structure
    {
        auto [sx, sy] = assemble(quick_wavy, 1e-4);
        gated("assembly-bit-symmetry", is_symmetric_exact(*sx.matrix) ? 0.0 : 1.0, 0.5);
        double sum_x = 0.0;
        for (double v : sx.rhs) sum_x += v;
        gated("assembly-x-load-sum", std::abs(sum_x), 1e-12);
        double lo = 0.0, hi = 0.0;
        for (int d = 0; d < sy.dofs->n_free; ++d) {
            const double y = quick_wavy.nodes[sy.dofs->dof_to_node[d]].y;
            if (y == quick_wavy.spec.film_lo) lo += sy.rhs[d];
            if (y == quick_wavy.spec.film_hi) hi += sy.rhs[d];
        }
        gated("assembly-y-load-levels", std::abs(lo + 1.0) + std::abs(hi - 1.0), 1e-12);
    }
    // solve both presets at 1e-4: energy identity, x-component residual size,
    // thickness band
    for (const Mesh* mesh : {&quick_flat, &quick_wavy}) {
        const std::string tag = mesh == &quick_flat ? "k0" : "k1";
        auto [sys_x, sys_y] = assemble(*mesh, 1e-4);
        auto [fx, rx] = solve(sys_x, *mesh);
        auto [fy, ry] = solve(sys_y, *mesh);
        if (!rx.converged || !ry.converged) {
            gated("solver-converged-" + tag, 1.0, 0.5);
            continue;
        }
        gated("solver-converged-" + tag, 0.0, 0.5);
        const CsrMatrix& A = *sys_y.matrix;
        std::vector<double> u(sys_y.dofs->n_free);
        for (int d = 0; d < sys_y.dofs->n_free; ++d)
            u[d] = fy.values[sys_y.dofs->dof_to_node[d]];
        double uau = 0.0, ub = 0.0;
        for (int i = 0; i < A.n; ++i) {
            double row = 0.0;
            for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
                row += A.values[k] * u[A.col_indices[k]];
            uau += u[i] * row;
            ub += u[i] * sys_y.rhs[i];
        }
        gated("solver-energy-identity-" + tag, std::abs(uau / ub - 1.0), 1e-8);
        double sup_sx = 0.0;
        for (double v : fx.values) sup_sx = std::max(sup_sx, std::abs(v));
        gated("solver-sx-norm-" + tag, sup_sx, 10.0 * 1e-10);
        const auto rep = film_error(*mesh, thickness_field(fx, fy, 1e-4));
        gated("thickness-band-" + tag, 0.95, rep.band_fraction);
    }
    // cutoff curvature bound
    {
        const CutoffProfile prof{0.5, 0.99, 0.2};
        double attained = 0.0;
        bool in_range = true;
        for (int i = 0; i <= 10000; ++i) {
            const double y = 0.2 + (1.2 - 0.2) * i / 10000.0;
            const auto cv = cutoff_eval(prof, y);
            if (cv.c < 0.0 || cv.c > 1.0) in_range = false;
            attained = std::max(attained, std::abs(cv.cpp));
        }
        gated("cutoff-curvature", attained, 4.0 / (0.2 * 0.2) + 1e-12);
        gated("cutoff-range", in_range ? 0.0 : 1.0, 0.5);
    }
    // seeded homogeneous traces: max modulus + interior H1
    for (const Mesh* mesh : {&quick_flat, &quick_wavy}) {
        const std::string tag = mesh == &quick_flat ? "k0" : "k1";
        for (double a : {1e-2, 1e-4}) {
            double worst_mm = 0.0, worst_h1 = 0.0;
            for (unsigned s = 0; s < 20; ++s) {
                const auto g = detail::random_trace(*mesh, seed * 1000 + s);
                auto sys = assemble_homogeneous(*mesh, a, g);
                auto [d, rep] = solve(sys, *mesh);
                if (!rep.converged) {
                    worst_mm = worst_h1 = 1e300;
                    break;
                }
                const auto mm = check_max_modulus(d, *mesh, 1e-2);
                worst_mm = std::max(worst_mm, mm.interior_sup / mm.boundary_sup);
                const auto h1 = check_interior_h1(d, *mesh);
                worst_h1 = std::max(worst_h1, h1.slack);
            }
            gated("max-modulus-" + tag + "-a" + format_a(a), worst_mm, 1.0 + 1e-2);
            gated("interior-h1-" + tag + "-a" + format_a(a), worst_h1, 1.0 + 1e-6);
        }
    }
    // slab-gap trace: flat case is exactly zero and bounded by the gap bound
    {
        const double a = 1e-4;
        const auto iv = reference_interval(quick_flat.spec, a);
        const auto ref = solve_exact(iv);
        std::vector<double> g(quick_flat.num_nodes(), 0.0);
        for (int v = 0; v < quick_flat.num_nodes(); ++v)
            if (quick_flat.dirichlet[v])
                g[v] = -eval_solution(ref, iv, quick_flat.nodes[v].y);
        auto sys = assemble_homogeneous(quick_flat, a, g);
        auto [d, rep] = solve(sys, quick_flat);
        const auto mm = check_max_modulus(d, quick_flat, 1e-2);
        const double c_a = boundary_gap_bound(derive_constants(quick_flat.spec), a);
        gated("slab-gap-k0", rep.converged ? mm.interior_sup : 1e300, c_a * (1.0 + 1e-2));
    }
    // film-gap energy after the interior estimate: both readings of the
    // budget (4/m) C_a^2, recorded but not gated
    {
        DomainSpec spec = quick_flat.spec;
        spec.upper = BoundaryProfile::sinusoidal_squared(3.0, 0.2, 1);
        const double a = 1e-2;
        const Mesh mesh = build_mesh(spec, 24, 160);
        const auto iv = reference_interval(spec, a);
        const auto ref = solve_exact(iv);
        std::vector<double> g(mesh.num_nodes(), 0.0);
        for (int v = 0; v < mesh.num_nodes(); ++v)
            if (mesh.dirichlet[v]) g[v] = -eval_solution(ref, iv, mesh.nodes[v].y);
        auto sys = assemble_homogeneous(mesh, a, g);
        auto [d, rep] = solve(sys, mesh);
        const auto gc = derive_constants(spec);
        const double budget = 4.0 / gc.m * std::pow(boundary_gap_bound(gc, a), 2);
        const auto h1 = check_interior_h1(d, mesh);
        gated("film-gap-h1-lemma", rep.converged ? h1.lhs : 1e300, h1.rhs * (1.0 + 1e-6));
        info("film-gap-grad-reading", h1.lhs, budget);
        double film_mass = 0.0;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            if (mesh.triangles[t].region != Region::Film) continue;
            const auto& v = mesh.triangles[t].v;
            const double d0 = d.values[v[0]], d1 = d.values[v[1]], d2 = d.values[v[2]];
            film_mass += mesh.area(t) *
                         (d0 * d0 + d1 * d1 + d2 * d2 + d0 * d1 + d1 * d2 + d0 * d2) / 6.0;
        }
        info("film-gap-mass-reading", film_mass, budget);
    }

    std::ofstream os(fs::path(out_dir) / "checks.jsonl");
    write_jsonl(recs, os);
    int failures = 0;
    for (const auto& r : recs) {
        if (r.gated && !r.passed) {
            ++failures;
            std::cerr << "check failed: " << r.id << " (lhs " << r.lhs << " vs rhs " << r.rhs
                      << ")\n";
        }
        std::cout << (r.passed ? "[pass] " : (r.gated ? "[FAIL] " : "[info] ")) << r.id << "\n";
    }
    return failures == 0 ? 0 : 3;
}

}  // namespace filmlab
