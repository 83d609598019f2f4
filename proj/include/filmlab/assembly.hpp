// P1 assembly of the bilinear form
//   B(s, u) = a * integral_D grad s . grad u + integral_{D\Omega} s u
// on the mapped triangulation, plus the film load
//   F_i = integral_Omega d(phi_i)/d(x_c)   for component c in {x, y}.
//
// Dirichlet rows and columns are eliminated symmetrically, so the
// reduced matrix is SPD; inhomogeneous boundary data is lifted into the
// right-hand side.  The local matrices are computed for l <= m and the
// same double is scattered to (l, m) and (m, l), which makes the stored
// matrix symmetric bit for bit.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "filmlab/mesh.hpp"

namespace filmlab {

struct CsrMatrix {
    int n = 0;
    std::vector<int> row_offsets;
    std::vector<int> col_indices;
    std::vector<double> values;

    double& at(int i, int j) {
        const auto first = col_indices.begin() + row_offsets[i];
        const auto last = col_indices.begin() + row_offsets[i + 1];
        const auto it = std::lower_bound(first, last, j);
        if (it == last || *it != j) throw std::logic_error("entry outside sparsity pattern");
        return values[static_cast<std::size_t>(it - col_indices.begin())];
    }
    double get(int i, int j) const {
        const auto first = col_indices.begin() + row_offsets[i];
        const auto last = col_indices.begin() + row_offsets[i + 1];
        const auto it = std::lower_bound(first, last, j);
        return (it == last || *it != j) ? 0.0 : values[static_cast<std::size_t>(it - col_indices.begin())];
    }
};

struct DofMap {
    std::vector<int> node_to_dof;  // -1 on Dirichlet nodes
    std::vector<int> dof_to_node;
    int n_free = 0;
};

enum class MassVariant { Consistent, Lumped };

enum class Axis : char { X = 'x', Y = 'y' };

// One reduced linear system A u = b.  The two load components share the
// matrix and DOF map; `boundary_values` holds the prescribed nodal
// values used when a solution is expanded back to the full node set.
struct SparseSystem {
    std::shared_ptr<const CsrMatrix> matrix;
    std::shared_ptr<const DofMap> dofs;
    std::shared_ptr<const std::vector<double>> boundary_values;  // full node vector
    std::vector<double> rhs;  // over free DOFs
    Axis component = Axis::Y;
};

namespace detail {

inline std::shared_ptr<DofMap> make_dof_map(const Mesh& mesh) {
    auto dm = std::make_shared<DofMap>();
    dm->node_to_dof.assign(mesh.num_nodes(), -1);
    for (int v = 0; v < mesh.num_nodes(); ++v) {
        if (!mesh.dirichlet[v]) {
            dm->node_to_dof[v] = dm->n_free++;
            dm->dof_to_node.push_back(v);
        }
    }
    return dm;
}

inline std::shared_ptr<CsrMatrix> make_pattern(const Mesh& mesh, const DofMap& dm) {
    // neighbor lists over free DOFs, from triangle connectivity
    std::vector<std::vector<int>> nbr(dm.n_free);
    for (const Triangle& t : mesh.triangles) {
        for (int l = 0; l < 3; ++l) {
            const int dl = dm.node_to_dof[t.v[l]];
            if (dl < 0) continue;
            for (int m = 0; m < 3; ++m) {
                const int dmc = dm.node_to_dof[t.v[m]];
                if (dmc >= 0) nbr[dl].push_back(dmc);
            }
        }
    }
    auto csr = std::make_shared<CsrMatrix>();
    csr->n = dm.n_free;
    csr->row_offsets.assign(dm.n_free + 1, 0);
    for (int i = 0; i < dm.n_free; ++i) {
        auto& row = nbr[i];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        csr->row_offsets[i + 1] = csr->row_offsets[i] + static_cast<int>(row.size());
    }
    csr->col_indices.reserve(csr->row_offsets.back());
    for (auto& row : nbr) csr->col_indices.insert(csr->col_indices.end(), row.begin(), row.end());
    csr->values.assign(csr->col_indices.size(), 0.0);
    return csr;
}

struct LocalMatrices {
    std::array<std::array<double, 3>, 3> op;  // a * stiffness (+ mass in the void)
};

inline LocalMatrices local_operator(const Mesh& mesh, int t, double a, MassVariant variant) {
    const double area = mesh.area(t);
    const auto g = mesh.gradients(t);
    const bool in_void = mesh.triangles[t].region == Region::Void;
    LocalMatrices lm{};
    for (int l = 0; l < 3; ++l) {
        for (int m = l; m < 3; ++m) {
            double v = a * area * (g[l].x * g[m].x + g[l].y * g[m].y);
            if (in_void) {
                if (variant == MassVariant::Consistent)
                    v += area / 12.0 * (l == m ? 2.0 : 1.0);
                else if (l == m)
                    v += area / 3.0;
            }
            lm.op[l][m] = v;
            lm.op[m][l] = v;
        }
    }
    return lm;
}

}  // namespace detail

// Assembles the shared operator matrix and the two film load vectors.
// Returns (x-component system, y-component system).
inline std::pair<SparseSystem, SparseSystem> assemble(const Mesh& mesh, double a,
                                                      MassVariant variant = MassVariant::Consistent) {
    if (!(a > 0.0)) throw std::invalid_argument("assemble requires a > 0");
    auto dm = detail::make_dof_map(mesh);
    auto csr = detail::make_pattern(mesh, *dm);
    std::vector<double> rhs_x(dm->n_free, 0.0), rhs_y(dm->n_free, 0.0);

    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto lm = detail::local_operator(mesh, t, a, variant);
        const Triangle& tri = mesh.triangles[t];
        std::array<int, 3> dof{};
        for (int l = 0; l < 3; ++l) dof[l] = dm->node_to_dof[tri.v[l]];
        for (int l = 0; l < 3; ++l) {
            if (dof[l] < 0) continue;
            for (int m = 0; m < 3; ++m)
                if (dof[m] >= 0) csr->at(dof[l], dof[m]) += lm.op[l][m];
        }
        if (tri.region == Region::Film) {
            const double area = mesh.area(t);
            const auto g = mesh.gradients(t);
            for (int l = 0; l < 3; ++l) {
                if (dof[l] < 0) continue;
                rhs_x[dof[l]] += area * g[l].x;
                rhs_y[dof[l]] += area * g[l].y;
            }
        }
    }

    auto zero_bc = std::make_shared<const std::vector<double>>(mesh.num_nodes(), 0.0);
    SparseSystem sx{csr, dm, zero_bc, std::move(rhs_x), Axis::X};
    SparseSystem sy{csr, dm, zero_bc, std::move(rhs_y), Axis::Y};
    return {std::move(sx), std::move(sy)};
}

// Zero-load variant with prescribed Dirichlet values, lifted into the
// right-hand side.  `boundary_values` must cover every node; only the
// entries at Dirichlet nodes are read.
inline SparseSystem assemble_homogeneous(const Mesh& mesh, double a,
                                         const std::vector<double>& boundary_values,
                                         MassVariant variant = MassVariant::Consistent) {
    if (!(a > 0.0)) throw std::invalid_argument("assemble_homogeneous requires a > 0");
    if (static_cast<int>(boundary_values.size()) != mesh.num_nodes())
        throw std::invalid_argument("boundary_values must have one entry per mesh node");
    for (int v = 0; v < mesh.num_nodes(); ++v)
        if (mesh.dirichlet[v] && !std::isfinite(boundary_values[v]))
            throw std::invalid_argument("missing boundary value at a Dirichlet node");

    auto dm = detail::make_dof_map(mesh);
    auto csr = detail::make_pattern(mesh, *dm);
    std::vector<double> rhs(dm->n_free, 0.0);

    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto lm = detail::local_operator(mesh, t, a, variant);
        const Triangle& tri = mesh.triangles[t];
        for (int l = 0; l < 3; ++l) {
            const int dl = dm->node_to_dof[tri.v[l]];
            if (dl < 0) continue;
            for (int m = 0; m < 3; ++m) {
                const int dmc = dm->node_to_dof[tri.v[m]];
                if (dmc >= 0)
                    csr->at(dl, dmc) += lm.op[l][m];
                else
                    rhs[dl] -= lm.op[l][m] * boundary_values[tri.v[m]];
            }
        }
    }

    auto bc = std::make_shared<const std::vector<double>>(boundary_values);
    return SparseSystem{csr, dm, bc, std::move(rhs), Axis::Y};
}

inline bool is_symmetric_exact(const CsrMatrix& m) {
    for (int i = 0; i < m.n; ++i)
        for (int k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k)
            if (m.get(m.col_indices[k], i) != m.values[k]) return false;
    return true;
}

// MatrixMarket coordinate output (symmetric: lower triangle, 1-based).
inline void write_matrix_market(const SparseSystem& s, std::ostream& os) {
    const CsrMatrix& m = *s.matrix;
    int nnz_lower = 0;
    for (int i = 0; i < m.n; ++i)
        for (int k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k)
            if (m.col_indices[k] <= i) ++nnz_lower;
    os << "%%MatrixMarket matrix coordinate real symmetric\n";
    os << m.n << ' ' << m.n << ' ' << nnz_lower << "\n";
    char buf[96];
    for (int i = 0; i < m.n; ++i)
        for (int k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k)
            if (m.col_indices[k] <= i) {
                std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i + 1, m.col_indices[k] + 1,
                              m.values[k]);
                os << buf;
            }
}

}  // namespace filmlab
