// Mapped structured triangulation of the wavy slab.
//
// The grid is tensor-product in (x, band-local eta): per column x_i the
// node levels run through three bands,
//   band 1:  b_l(x_i) ... f_l      (n1 cells, terrain-following)
//   band 2:  f_l      ... f_r      (n2 cells, flat)
//   band 3:  f_r      ... b_r(x_i) (n3 cells, terrain-following)
// so the film interfaces y = f_l, f_r are grid lines in every column and
// no element straddles them.  Quads are split along the lower-left to
// upper-right diagonal.  Columns x = 0 and x = 1 are identified (single
// set of DOFs); triangles crossing the seam carry a per-vertex x-shift
// so their geometry is evaluated with x + 1 on the wrapped side.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "filmlab/domain.hpp"

namespace filmlab {

enum class Region : std::uint8_t { Film, Void };

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Triangle {
    std::array<int, 3> v{};   // node indices, counterclockwise
    std::uint8_t xshift = 0;  // bit j set: vertex j lives on the wrapped column, x += 1
    Region region = Region::Void;
};

struct Mesh {
    DomainSpec spec;
    int nx = 0;           // columns (x-period is 1, so also the cell count in x)
    int rows = 0;         // node levels per column
    int n1 = 0, n2 = 0, n3 = 0;  // cells per band
    std::vector<Point2> nodes;
    std::vector<Triangle> triangles;
    std::vector<std::uint8_t> dirichlet;  // per node, true on y = b_l(x) and y = b_r(x)
    double min_angle_deg = 0.0;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }
    int node_id(int i, int j) const { return i * rows + j; }

    std::array<Point2, 3> coords(int t) const {
        const Triangle& tri = triangles[t];
        std::array<Point2, 3> c;
        for (int j = 0; j < 3; ++j) {
            c[j] = nodes[tri.v[j]];
            if (tri.xshift >> j & 1) c[j].x += 1.0;
        }
        return c;
    }

    double area(int t) const {
        const auto c = coords(t);
        return 0.5 * ((c[1].x - c[0].x) * (c[2].y - c[0].y) -
                      (c[2].x - c[0].x) * (c[1].y - c[0].y));
    }

    Point2 centroid(int t) const {
        const auto c = coords(t);
        return {(c[0].x + c[1].x + c[2].x) / 3.0, (c[0].y + c[1].y + c[2].y) / 3.0};
    }

    // Constant P1 basis gradients on triangle t, grad[j] = grad phi_j.
    std::array<Point2, 3> gradients(int t) const {
        const auto c = coords(t);
        const double two_a = (c[1].x - c[0].x) * (c[2].y - c[0].y) -
                             (c[2].x - c[0].x) * (c[1].y - c[0].y);
        std::array<Point2, 3> g;
        g[0] = {(c[1].y - c[2].y) / two_a, (c[2].x - c[1].x) / two_a};
        g[1] = {(c[2].y - c[0].y) / two_a, (c[0].x - c[2].x) / two_a};
        g[2] = {(c[0].y - c[1].y) / two_a, (c[1].x - c[0].x) / two_a};
        return g;
    }
};

namespace detail {

// Cells per band, proportional to the average band heights, each band
// at least one cell, total capped at ny + 2.
inline std::array<int, 3> band_cells(const DomainSpec& spec, int ny) {
    const double h1 = simpson01([&](double x) { return spec.film_lo - profile_eval(spec.lower, x); });
    const double h2 = spec.thickness();
    const double h3 = simpson01([&](double x) { return profile_eval(spec.upper, x) - spec.film_hi; });
    const double total = h1 + h2 + h3;
    std::array<int, 3> n{};
    const std::array<double, 3> h{h1, h2, h3};
    for (int b = 0; b < 3; ++b)
        n[b] = std::max(1, static_cast<int>(std::llround(ny * h[b] / total)));
    while (n[0] + n[1] + n[2] > ny + 2) {
        int big = 0;
        if (n[1] > n[big]) big = 1;
        if (n[2] > n[big]) big = 2;
        if (n[big] <= 1) break;
        --n[big];
    }
    return n;
}

inline double tri_min_angle(const std::array<Point2, 3>& c) {
    double worst = 180.0;
    for (int j = 0; j < 3; ++j) {
        const Point2& a = c[j];
        const Point2& b = c[(j + 1) % 3];
        const Point2& d = c[(j + 2) % 3];
        const double ux = b.x - a.x, uy = b.y - a.y;
        const double vx = d.x - a.x, vy = d.y - a.y;
        const double cosang = (ux * vx + uy * vy) /
                              (std::sqrt(ux * ux + uy * uy) * std::sqrt(vx * vx + vy * vy));
        const double ang = std::acos(std::min(1.0, std::max(-1.0, cosang))) * 180.0 / kPi;
        worst = std::min(worst, ang);
    }
    return worst;
}

}  // namespace detail

inline Mesh build_mesh(const DomainSpec& spec, int nx, int ny) {
    if (nx < 4) throw std::invalid_argument("build_mesh requires nx >= 4");
    if (ny < 8) throw std::invalid_argument("build_mesh requires ny >= 8");
    derive_constants(spec);  // validates the film placement

    Mesh mesh;
    mesh.spec = spec;
    mesh.nx = nx;
    const auto n = detail::band_cells(spec, ny);
    mesh.n1 = n[0];
    mesh.n2 = n[1];
    mesh.n3 = n[2];
    mesh.rows = n[0] + n[1] + n[2] + 1;

    mesh.nodes.resize(static_cast<std::size_t>(nx) * mesh.rows);
    mesh.dirichlet.assign(mesh.nodes.size(), 0);
    for (int i = 0; i < nx; ++i) {
        const double x = static_cast<double>(i) / nx;
        const double ylo = profile_eval(spec.lower, x);
        const double yhi = profile_eval(spec.upper, x);
        int j = 0;
        for (int c = 0; c <= n[0]; ++c, ++j) {
            const double y = (c == n[0]) ? spec.film_lo
                                         : ylo + (spec.film_lo - ylo) * c / n[0];
            mesh.nodes[mesh.node_id(i, j)] = {x, y};
        }
        for (int c = 1; c <= n[1]; ++c, ++j) {
            const double y = (c == n[1]) ? spec.film_hi
                                         : spec.film_lo + spec.thickness() * c / n[1];
            mesh.nodes[mesh.node_id(i, j)] = {x, y};
        }
        for (int c = 1; c <= n[2]; ++c, ++j) {
            const double y = (c == n[2]) ? yhi : spec.film_hi + (yhi - spec.film_hi) * c / n[2];
            mesh.nodes[mesh.node_id(i, j)] = {x, y};
        }
        mesh.dirichlet[mesh.node_id(i, 0)] = 1;
        mesh.dirichlet[mesh.node_id(i, mesh.rows - 1)] = 1;
        for (int jj = 1; jj < mesh.rows; ++jj) {
            if (!(mesh.nodes[mesh.node_id(i, jj)].y > mesh.nodes[mesh.node_id(i, jj - 1)].y))
                throw std::runtime_error("mesh column levels are not strictly increasing");
        }
    }

    mesh.triangles.reserve(static_cast<std::size_t>(2) * nx * (mesh.rows - 1));
    for (int i = 0; i < nx; ++i) {
        const int i2 = (i + 1) % nx;
        const std::uint8_t wrap = (i2 == 0) ? 1 : 0;  // column nx maps back to column 0
        for (int j = 0; j + 1 < mesh.rows; ++j) {
            const Region reg = (j >= n[0] && j < n[0] + n[1]) ? Region::Film : Region::Void;
            const int v00 = mesh.node_id(i, j);
            const int v10 = mesh.node_id(i2, j);
            const int v11 = mesh.node_id(i2, j + 1);
            const int v01 = mesh.node_id(i, j + 1);
            Triangle t1{{v00, v10, v11}, static_cast<std::uint8_t>(wrap ? 0b110 : 0), reg};
            Triangle t2{{v00, v11, v01}, static_cast<std::uint8_t>(wrap ? 0b010 : 0), reg};
            mesh.triangles.push_back(t1);
            mesh.triangles.push_back(t2);
        }
    }

    double min_angle = 180.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (!(mesh.area(t) > 0.0)) throw std::runtime_error("mesh produced a non-positive triangle");
        min_angle = std::min(min_angle, detail::tri_min_angle(mesh.coords(t)));
    }
    mesh.min_angle_deg = min_angle;
    if (min_angle < 5.0)
        std::cerr << "build_mesh: minimum triangle angle " << min_angle
                  << " deg is below 5 deg; consider raising nx\n";
    return mesh;
}

inline Region locate_region(const Mesh& mesh, int t) {
    return mesh.triangles[t].region;
}

// Plain-text export: "nodes M triangles K", M coordinate lines, then K
// index triples with a region tag.
inline void write_mesh_text(const Mesh& mesh, std::ostream& os) {
    os << "nodes " << mesh.num_nodes() << " triangles " << mesh.num_triangles() << "\n";
    char buf[64];
    for (const Point2& p : mesh.nodes) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        os << buf;
    }
    for (const Triangle& t : mesh.triangles) {
        os << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << ' '
           << (t.region == Region::Film ? "film" : "void") << "\n";
    }
}

}  // namespace filmlab
