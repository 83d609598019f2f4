// Post-processing of the vector solution into the local thickness
//   h = 2 / (sqrt(a) div s)
// on the film, the L2 inverse-thickness error against 1/T, and the
// thickness-band area fraction.  Divergence is piecewise constant (P1
// gradients), and h is kept per triangle; no nodal averaging.
#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "filmlab/exact1d.hpp"
#include "filmlab/solver.hpp"

namespace filmlab {

enum class ThicknessFlag : std::uint8_t { Ok, NonpositiveDiv, NearZeroDiv };

inline const char* to_string(ThicknessFlag f) {
    switch (f) {
        case ThicknessFlag::Ok: return "ok";
        case ThicknessFlag::NonpositiveDiv: return "nonpositive_div";
        case ThicknessFlag::NearZeroDiv: return "near_zero_div";
    }
    return "?";
}

// Per-film-triangle thickness data.  `div` is the full divergence
// d(s^x)/dx + d(s^y)/dy; `div_y` keeps the d(s^y)/dy part alone so the
// residual size of the x component can be monitored.  inv_h is always
// finite; h is NaN unless the flag is Ok.
struct ThicknessField {
    double a = 0.0;
    std::vector<int> tri;  // triangle indices into the mesh (film only)
    std::vector<double> div;
    std::vector<double> div_y;
    std::vector<double> inv_h;
    std::vector<double> h;
    std::vector<ThicknessFlag> flags;
};

struct FilmErrorReport {
    double l2_inv_error = 0.0;                 // || 1/h - 1/T ||_{L2(film)}
    std::optional<double> theorem_bound;       // empty when R <= 0
    double band_fraction = 0.0;
    double a = 0.0;
};

// div s per triangle (all triangles, not just film).
inline std::vector<double> divergence(const Field& sx, const Field& sy) {
    if (sx.mesh != sy.mesh || sx.mesh == nullptr)
        throw std::invalid_argument("divergence requires two fields on the same mesh");
    const Mesh& mesh = *sx.mesh;
    std::vector<double> out(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto g = mesh.gradients(t);
        const auto& v = mesh.triangles[t].v;
        double d = 0.0;
        for (int j = 0; j < 3; ++j)
            d += g[j].x * sx.values[v[j]] + g[j].y * sy.values[v[j]];
        out[t] = d;
    }
    return out;
}

inline ThicknessField thickness_field(const Field& sx, const Field& sy, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("thickness_field requires a > 0");
    const Mesh& mesh = *sx.mesh;
    const double root_a = std::sqrt(a);
    const double T = mesh.spec.thickness();
    const double near_zero = 1e-12 * (2.0 / T);
    const auto div_all = divergence(sx, sy);

    ThicknessField tf;
    tf.a = a;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (mesh.triangles[t].region != Region::Film) continue;
        const auto g = mesh.gradients(t);
        const auto& v = mesh.triangles[t].v;
        double dy = 0.0;
        for (int j = 0; j < 3; ++j) dy += g[j].y * sy.values[v[j]];
        const double d = div_all[t];
        tf.tri.push_back(t);
        tf.div.push_back(d);
        tf.div_y.push_back(dy);
        tf.inv_h.push_back(root_a * d / 2.0);
        if (std::abs(root_a * d) < near_zero) {
            tf.flags.push_back(ThicknessFlag::NearZeroDiv);
            tf.h.push_back(std::numeric_limits<double>::quiet_NaN());
        } else if (d < 0.0) {
            tf.flags.push_back(ThicknessFlag::NonpositiveDiv);
            tf.h.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            tf.flags.push_back(ThicknessFlag::Ok);
            tf.h.push_back(2.0 / (root_a * d));
        }
    }
    return tf;
}

inline FilmErrorReport film_error(const Mesh& mesh, const ThicknessField& tf,
                                  double band_lo = 0.3, double band_hi = 0.7) {
    if (!(band_lo < band_hi)) throw std::invalid_argument("band_lo must be below band_hi");
    const double T = mesh.spec.thickness();
    const double inv_T = 1.0 / T;
    std::vector<double> terms(tf.tri.size());
    double film_area = 0.0, band_area = 0.0;
    for (std::size_t i = 0; i < tf.tri.size(); ++i) {
        const double area = mesh.area(tf.tri[i]);
        const double e = tf.inv_h[i] - inv_T;
        terms[i] = area * e * e;
        film_area += area;
        if (tf.flags[i] == ThicknessFlag::Ok && tf.h[i] > band_lo && tf.h[i] < band_hi)
            band_area += area;
    }
    FilmErrorReport rep;
    rep.a = tf.a;
    rep.l2_inv_error = std::sqrt(pairwise_sum(terms));
    rep.band_fraction = film_area > 0.0 ? band_area / film_area : 0.0;
    const auto g = derive_constants(mesh.spec);
    if (g.R > 0.0) {
        const double r = std::sqrt(tf.a);
        rep.theorem_bound = 2.0 / std::pow(T, 1.5) * r +
                            4.0 / std::sqrt(T) * std::exp(-2.0 * g.m_bar / r) +
                            1.0 / std::sqrt(g.m) * std::exp(-g.R / r);
    }
    return rep;
}

// CSV: one row per film triangle.
inline void write_thickness_csv(const Mesh& mesh, const ThicknessField& tf, std::ostream& os) {
    os << "x,y,div_s,inv_h,h,flag\n";
    char buf[160];
    for (std::size_t i = 0; i < tf.tri.size(); ++i) {
        const Point2 c = mesh.centroid(tf.tri[i]);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", c.x, c.y, tf.div[i],
                      tf.inv_h[i], tf.h[i], to_string(tf.flags[i]));
        os << buf;
    }
}

}  // namespace filmlab
