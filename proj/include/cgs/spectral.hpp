#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "cgs/errors.hpp"
#include "cgs/graph.hpp"

namespace cgs {

/// Dense symmetric matrix, row-major. Just enough for the Jacobi solver.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(int n, double fill = 0.0) : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {}

    int size() const { return n_; }
    double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

    double off_diagonal_norm() const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (i != j) s += at(i, j) * at(i, j);
        return std::sqrt(s);
    }

    double trace() const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += at(i, i);
        return s;
    }

  private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Combinatorial Laplacian L = D - A.
inline DenseMatrix laplacian(const Graph& g) {
    const int n = g.vertex_count();
    DenseMatrix l(n);
    for (int v = 0; v < n; ++v) {
        l.at(v, v) = static_cast<double>(g.degree(v));
        for (const auto& nb : g.neighbors(v)) l.at(v, nb.vertex) = -1.0;
    }
    return l;
}

/**
 * Full symmetric eigendecomposition. eigenvalues ascending; column k of
 * `vectors` is the unit eigenvector for eigenvalues[k]. lambda2() is the
 * algebraic connectivity when the matrix is a connected graph's Laplacian.
 */
struct Spectrum {
    std::vector<double> eigenvalues;
    DenseMatrix vectors;
    int sweeps = 0;

    double lambda2() const { return eigenvalues[1]; }

    std::vector<double> eigenvector(int k) const {
        std::vector<double> v(eigenvalues.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors.at(static_cast<int>(i), k);
        return v;
    }
};

/**
 * Cyclic Jacobi rotations on a symmetric matrix. Converged once the
 * off-diagonal Frobenius norm drops below 1e-12 x the full norm; throws
 * ConvergenceError if 100 sweeps leave it above 1e-8 x the norm.
 */
inline Spectrum eigen_lambda2(const DenseMatrix& matrix) {
    const int n = matrix.size();
    DenseMatrix a = matrix;
    DenseMatrix v = DenseMatrix::identity(n);
    const double norm = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-12 * norm;
    const int max_sweeps = 100;

    int sweeps = 0;
    while (a.off_diagonal_norm() >= target && sweeps < max_sweeps) {
        ++sweeps;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p);
                    const double vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (a.off_diagonal_norm() > 1e-8 * norm)
        throw ConvergenceError("jacobi sweeps exhausted before off-diagonal norm converged");

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int i, int j) { return a.at(i, i) < a.at(j, j); });

    Spectrum out;
    out.sweeps = sweeps;
    out.eigenvalues.resize(n);
    out.vectors = DenseMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a.at(perm[k], perm[k]);
        for (int i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, perm[k]);
    }
    return out;
}

inline Spectrum eigen_lambda2(const Graph& g) { return eigen_lambda2(laplacian(g)); }

/**
 * Fiedler's variational quotient 2n * sum_{(u,v) in E} (x_u - x_v)^2 divided
 * by the double sum over all ordered vertex pairs of (x_u - x_v)^2. Every
 * non-constant x gives a value >= lambda2; equality at the Fiedler vector.
 */
inline double fiedler_quotient(const Graph& g, const std::vector<double>& x) {
    const int n = g.vertex_count();
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    if (*mx - *mn <= 1e-12) throw ConstantVectorError();

    double num = 0.0;
    for (const auto& [u, v] : g.edges()) {
        const double d = x[u] - x[v];
        num += d * d;
    }
    // the denominator counts each unordered pair twice, matching the 2n factor
    double den = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            const double d = x[u] - x[v];
            den += d * d;
        }
    }
    return 2.0 * n * num / den;
}

} // namespace cgs
