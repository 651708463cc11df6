#pragma once

// Dense symmetric-matrix numerics: cyclic Jacobi eigendecomposition,
// PSD testing, numerical rank, and PSD square-root factorizations used to
// extract squares from Gram matrices. Matrix sizes here stay small (a few
// hundred at most), so Jacobi is accurate and fast enough.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "soslab/errors.hpp"

namespace soslab {

/// Symmetric matrix with one storage cell per index pair, so
/// entries(i,j) == entries(j,i) holds exactly by construction.
class SymmetricMatrix {
  public:
    explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {
        if (n < 1) throw DimensionMismatch("SymmetricMatrix: dimension must be >= 1");
    }

    static SymmetricMatrix identity(int n) {
        SymmetricMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int size() const { return n_; }

    double& at(int i, int j) { return a_[pack(i, j)]; }
    double at(int i, int j) const { return a_[pack(i, j)]; }

    double trace() const {
        double t = 0;
        for (int i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (double v : a_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// Trace inner product <A, B> = tr(AB).
    double inner(const SymmetricMatrix& b) const {
        if (b.n_ != n_) throw DimensionMismatch("SymmetricMatrix::inner");
        double s = 0;
        for (int i = 0; i < n_; ++i) {
            s += at(i, i) * b.at(i, i);
            for (int j = i + 1; j < n_; ++j) s += 2.0 * at(i, j) * b.at(i, j);
        }
        return s;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(n_, 0.0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) y[i] += at(i, j) * x[j];
        return y;
    }

    SymmetricMatrix& operator+=(const SymmetricMatrix& b) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
        return *this;
    }

    SymmetricMatrix& scale(double c) {
        for (double& v : a_) v *= c;
        return *this;
    }

    static SymmetricMatrix outer(const std::vector<double>& v) {
        SymmetricMatrix m(static_cast<int>(v.size()));
        for (int i = 0; i < m.n_; ++i)
            for (int j = i; j < m.n_; ++j) m.at(i, j) = v[i] * v[j];
        return m;
    }

  private:
    std::size_t pack(int i, int j) const {
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
               (j - i);
    }

    int n_;
    std::vector<double> a_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;                // descending
    std::vector<std::vector<double>> eigenvectors;  // eigenvectors[k] pairs with eigenvalues[k]
};

/// Cyclic Jacobi. Reconstruction error stays near machine precision, far
/// inside the 1e-10 * max(1, |M|_max) contract.
inline EigenDecomposition eigendecompose(const SymmetricMatrix& m) {
    if (!m.all_finite()) throw NumericalError("eigendecompose: non-finite entries");
    const int n = m.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        v[i][i] = 1.0;
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    }

    auto off_norm = [&]() {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
        return std::sqrt(2.0 * s);
    };
    double scale = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));
    const double tol = 1e-15 * std::max(scale, 1e-300) * n;

    for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p][q];
                if (std::abs(apq) <= 0.1 * tol / n) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });

    EigenDecomposition r;
    r.eigenvalues.resize(n);
    r.eigenvectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        r.eigenvalues[k] = a[order[k]][order[k]];
        for (int i = 0; i < n; ++i) r.eigenvectors[k][i] = v[i][order[k]];
    }
    return r;
}

inline double lambda_min(const SymmetricMatrix& m) {
    return eigendecompose(m).eigenvalues.back();
}
inline double lambda_max(const SymmetricMatrix& m) {
    return eigendecompose(m).eigenvalues.front();
}

/// lambda_min(M) >= -tol * max(1, lambda_max).
inline bool is_psd(const SymmetricMatrix& m, double tol = 1e-8) {
    const auto& ev = eigendecompose(m).eigenvalues;
    return ev.back() >= -tol * std::max(1.0, ev.front());
}

struct RankReport {
    int rank = 0;
    std::vector<double> eigenvalues;  // descending
    double tolerance = 0;
};

/// Rank = number of eigenvalues with |lambda| above tau * max(|lambda|, 1).
inline RankReport numerical_rank(const SymmetricMatrix& m, double tau = 1e-7) {
    RankReport r;
    r.eigenvalues = eigendecompose(m).eigenvalues;
    double maxabs = 0;
    for (double v : r.eigenvalues) maxabs = std::max(maxabs, std::abs(v));
    r.tolerance = tau * std::max(maxabs, 1.0);
    for (double v : r.eigenvalues)
        if (std::abs(v) > r.tolerance) ++r.rank;
    return r;
}

/// Rows g_k = sqrt(lambda_k) v_k for the rank(M) leading eigenpairs, so that
/// sum_k g_k g_k^T reconstructs M. Throws NotPsd when M fails is_psd.
inline std::vector<std::vector<double>> psd_square_root_rows(const SymmetricMatrix& m,
                                                             double tol = 1e-8,
                                                             double rank_tau = 1e-7) {
    const EigenDecomposition ed = eigendecompose(m);
    if (ed.eigenvalues.back() < -tol * std::max(1.0, ed.eigenvalues.front()))
        throw NotPsd("psd_square_root_rows: matrix is not PSD within tolerance");
    double maxabs = 0;
    for (double v : ed.eigenvalues) maxabs = std::max(maxabs, std::abs(v));
    const double cut = rank_tau * std::max(maxabs, 1.0);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < ed.eigenvalues.size(); ++k) {
        if (ed.eigenvalues[k] <= cut) continue;
        std::vector<double> g = ed.eigenvectors[k];
        const double s = std::sqrt(ed.eigenvalues[k]);
        for (double& x : g) x *= s;
        rows.push_back(std::move(g));
    }
    return rows;
}

/// Cholesky factor L (lower, M = L L^T); nullopt when M is not positive
/// definite. Used for interior-point line searches.
inline std::optional<std::vector<std::vector<double>>> cholesky(const SymmetricMatrix& m) {
    const int n = m.size();
    std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m.at(i, j);
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0) return std::nullopt;
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

}  // namespace soslab
