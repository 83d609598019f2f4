// Jacobi-preconditioned conjugate gradients for the reduced SPD systems.
// Zero initial guess, so identical inputs give identical iterates; the
// residual is recomputed from scratch every 50 iterations to suppress
// recurrence drift.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "filmlab/assembly.hpp"

namespace filmlab {

// Nodal values over the full node set; Dirichlet nodes carry their
// prescribed values.  The mesh pointer is non-owning.
struct Field {
    const Mesh* mesh = nullptr;
    std::vector<double> values;
    Axis component = Axis::Y;
};

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

namespace detail {

inline void matvec(const CsrMatrix& m, const std::vector<double>& x, std::vector<double>& y) {
    for (int i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (int k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k)
            s += m.values[k] * x[m.col_indices[k]];
        y[i] = s;
    }
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Field expand(const SparseSystem& sys, const Mesh& mesh, const std::vector<double>& u) {
    Field f;
    f.mesh = &mesh;
    f.component = sys.component;
    f.values = *sys.boundary_values;
    for (int d = 0; d < sys.dofs->n_free; ++d) f.values[sys.dofs->dof_to_node[d]] = u[d];
    return f;
}

}  // namespace detail

inline std::pair<Field, SolveReport> solve(const SparseSystem& sys, const Mesh& mesh,
                                           double tol = 1e-10, int max_iter = 0) {
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("solve requires tol in (0, 1)");
    const CsrMatrix& A = *sys.matrix;
    const int n = A.n;
    if (max_iter <= 0) max_iter = 20 * n;

    std::vector<double> x(n, 0.0);
    const std::vector<double>& b = sys.rhs;
    const double bnorm = std::sqrt(detail::dot(b, b));
    if (bnorm == 0.0) return {detail::expand(sys, mesh, x), SolveReport{0, 0.0, true}};

    std::vector<double> inv_diag(n);
    for (int i = 0; i < n; ++i) {
        const double d = A.get(i, i);
        if (!(d > 0.0)) throw std::runtime_error("non-positive diagonal entry; system is not SPD");
        inv_diag[i] = 1.0 / d;
    }

    std::vector<double> r = b, z(n), p(n), q(n);
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = detail::dot(r, z);
    double rnorm = bnorm;
    int iter = 0;
    bool converged = rnorm <= tol * bnorm;

    while (!converged && iter < max_iter) {
        detail::matvec(A, p, q);
        const double pq = detail::dot(p, q);
        if (!(pq > 0.0)) throw std::runtime_error("curvature lost; system is not SPD");
        const double alpha = rz / pq;
        for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
        ++iter;
        if (iter % 50 == 0) {
            detail::matvec(A, x, q);  // exact residual
            for (int i = 0; i < n; ++i) r[i] = b[i] - q[i];
        } else {
            for (int i = 0; i < n; ++i) r[i] -= alpha * q[i];
        }
        rnorm = std::sqrt(detail::dot(r, r));
        if (rnorm <= tol * bnorm) {
            converged = true;
            break;
        }
        for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_next = detail::dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    // exact final residual, independent of the recurrence
    detail::matvec(A, x, q);
    for (int i = 0; i < n; ++i) q[i] = b[i] - q[i];
    const double final_rel = std::sqrt(detail::dot(q, q)) / bnorm;
    SolveReport rep{iter, final_rel, final_rel <= tol};
    return {detail::expand(sys, mesh, x), rep};
}

}  // namespace filmlab
