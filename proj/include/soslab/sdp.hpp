#pragma once

// Dense primal-dual interior-point solver for standard-form semidefinite
// programs
//
//     minimize <C, X>   subject to  <A_i, X> = b_i,  X PSD,
//
// with a feasibility mode and Farkas-type infeasibility certificates.
//
// The implementation follows the homogeneous self-dual embedding with the
// XZ+ZX (AHO) linearization and a Mehrotra predictor-corrector. Problems here
// are tiny (n up to a few dozen), so each Newton step solves the full KKT
// system by column-pivoted QR; rank-deficient constraint sets (common after
// monomial pruning) fall out of the least-squares solve without special
// casing.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "soslab/errors.hpp"
#include "soslab/numerics.hpp"

namespace soslab {

enum class SdpMode { Minimize, Feasibility };

struct SdpProblem {
    int n = 0;  // matrix dimension
    SymmetricMatrix c{1};
    std::vector<SymmetricMatrix> a;
    std::vector<double> b;
    SdpMode mode = SdpMode::Minimize;

    static SdpProblem feasibility(int n) {
        SdpProblem p;
        p.n = n;
        p.c = SymmetricMatrix(n);
        p.mode = SdpMode::Feasibility;
        return p;
    }

    static SdpProblem minimize(int n, SymmetricMatrix objective) {
        SdpProblem p;
        p.n = n;
        p.c = std::move(objective);
        p.mode = SdpMode::Minimize;
        return p;
    }

    void add_constraint(SymmetricMatrix ai, double bi) {
        if (ai.size() != n) throw DimensionMismatch("SdpProblem::add_constraint");
        a.push_back(std::move(ai));
        b.push_back(bi);
    }

    std::size_t num_constraints() const { return a.size(); }

    void validate() const {
        if (n < 1) throw DimensionMismatch("SdpProblem: n must be >= 1");
        if (c.size() != n) throw DimensionMismatch("SdpProblem: objective dimension");
        for (const auto& ai : a)
            if (ai.size() != n) throw DimensionMismatch("SdpProblem: constraint dimension");
        for (double bi : b)
            if (!std::isfinite(bi)) throw NumericalError("SdpProblem: non-finite b");
        if (!c.all_finite()) throw NumericalError("SdpProblem: non-finite C");
    }
};

enum class SdpStatus { Optimal, Feasible, Infeasible, MaxIterations };

inline std::string to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Optimal: return "optimal";
        case SdpStatus::Feasible: return "feasible";
        case SdpStatus::Infeasible: return "infeasible";
        case SdpStatus::MaxIterations: return "max_iterations";
    }
    return "unknown";
}

struct SdpOutcome {
    SdpStatus status = SdpStatus::MaxIterations;
    SymmetricMatrix x{1};
    std::vector<double> y;  // dual multipliers (Optimal/Feasible) or Farkas certificate
    double objective = 0;
    double dual_objective = 0;
    double primal_residual = 0;     // max_i |<A_i,X> - b_i|
    double dual_residual = 0;       // max entry of |sum y A + Z - C|
    double x_lambda_min = 0;        // smallest eigenvalue of returned X
    double certificate_value = 0;   // b^T y for the certificate (1 after normalization)
    double certificate_psd_gap = 0; // lambda_max(sum y_i A_i) for the certificate
    int iterations = 0;
    std::string note;
};

struct SdpConfig {
    double eps_feas = 1e-8;
    double eps_psd = 1e-8;
    double eps_cert = 1e-6;
    int max_iterations = 200;
};

namespace detail {

// svec with sqrt(2)-scaled off-diagonals, so dot(svec(A), svec(B)) = <A,B>.
class Svec {
  public:
    explicit Svec(int n) : n_(n), dim_(n * (n + 1) / 2) {}

    int dim() const { return dim_; }

    std::vector<double> pack(const SymmetricMatrix& m) const {
        std::vector<double> v(dim_);
        int k = 0;
        for (int i = 0; i < n_; ++i) {
            v[k++] = m.at(i, i);
            for (int j = i + 1; j < n_; ++j) v[k++] = kSqrt2 * m.at(i, j);
        }
        return v;
    }

    SymmetricMatrix unpack(const std::vector<double>& v) const {
        SymmetricMatrix m(n_);
        int k = 0;
        for (int i = 0; i < n_; ++i) {
            m.at(i, i) = v[k++];
            for (int j = i + 1; j < n_; ++j) m.at(i, j) = v[k++] / kSqrt2;
        }
        return m;
    }

  private:
    static constexpr double kSqrt2 = 1.4142135623730951;
    int n_;
    int dim_;
};

inline std::vector<std::vector<double>> dense(const SymmetricMatrix& m) {
    const int n = m.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    return a;
}

// (AB + BA)/2 for symmetric A, B.
inline SymmetricMatrix sym_product(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    const int n = a.size();
    const auto da = dense(a), db = dense(b);
    SymmetricMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0;
            for (int k = 0; k < n; ++k) s += da[i][k] * db[k][j] + db[i][k] * da[k][j];
            r.at(i, j) = 0.5 * s;
        }
    return r;
}

// Matrix of dX -> (dX Z + Z dX)/2 in svec coordinates, built column by column.
inline std::vector<std::vector<double>> sym_kron(const SymmetricMatrix& z, const Svec& sv) {
    const int s = sv.dim();
    std::vector<std::vector<double>> e(s, std::vector<double>(s));
    std::vector<double> unit(s, 0.0);
    for (int k = 0; k < s; ++k) {
        unit[k] = 1.0;
        const SymmetricMatrix bk = sv.unpack(unit);
        const auto col = sv.pack(sym_product(bk, z));
        for (int r = 0; r < s; ++r) e[r][k] = col[r];
        unit[k] = 0.0;
    }
    return e;
}

/// Least-squares solve of a dense system by Householder QR with column
/// pivoting; rank-deficient systems get a basic solution.
inline std::vector<double> qr_least_squares(std::vector<std::vector<double>> a,
                                            std::vector<double> rhs) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<int> perm(cols);
    std::vector<double> colnorm(cols, 0.0);
    for (int j = 0; j < cols; ++j) {
        perm[j] = j;
        for (int i = 0; i < rows; ++i) colnorm[j] += a[i][j] * a[i][j];
    }
    double max_diag = 0.0;
    int rank = 0;
    const int steps = std::min(rows, cols);
    for (int k = 0; k < steps; ++k) {
        int best = k;
        for (int j = k + 1; j < cols; ++j)
            if (colnorm[perm[j]] > colnorm[perm[best]]) best = j;
        std::swap(perm[k], perm[best]);
        const int pc = perm[k];
        double norm = 0;
        for (int i = k; i < rows; ++i) norm += a[i][pc] * a[i][pc];
        norm = std::sqrt(norm);
        if (k == 0) max_diag = norm;
        if (norm <= 1e-13 * std::max(max_diag, 1e-300)) break;
        ++rank;
        // Householder vector stored in-place in column pc below row k
        double alpha = a[k][pc] >= 0 ? -norm : norm;
        double v0 = a[k][pc] - alpha;
        a[k][pc] = alpha;
        std::vector<double> v(rows - k);
        v[0] = v0;
        for (int i = k + 1; i < rows; ++i) v[i - k] = a[i][pc];
        double vtv = 0;
        for (double x : v) vtv += x * x;
        if (vtv > 0) {
            for (int jj = k + 1; jj < cols; ++jj) {
                const int c = perm[jj];
                double dot = v[0] * a[k][c];
                for (int i = k + 1; i < rows; ++i) dot += v[i - k] * a[i][c];
                const double f = 2.0 * dot / vtv;
                a[k][c] -= f * v[0];
                for (int i = k + 1; i < rows; ++i) a[i][c] -= f * v[i - k];
                colnorm[c] -= a[k][c] * a[k][c];
            }
            double dot = v[0] * rhs[k];
            for (int i = k + 1; i < rows; ++i) dot += v[i - k] * rhs[i];
            const double f = 2.0 * dot / vtv;
            rhs[k] -= f * v[0];
            for (int i = k + 1; i < rows; ++i) rhs[i] -= f * v[i - k];
        }
        for (int i = k + 1; i < rows; ++i) a[i][pc] = 0.0;
    }
    std::vector<double> x(cols, 0.0);
    for (int k = rank - 1; k >= 0; --k) {
        double s = rhs[k];
        for (int j = k + 1; j < rank; ++j) s -= a[k][perm[j]] * x[perm[j]];
        x[perm[k]] = s / a[k][perm[k]];
    }
    return x;
}

/// Largest step alpha with M + alpha dM PSD (M positive definite), via
/// lambda_min of L^-1 dM L^-T.
inline double max_psd_step(const SymmetricMatrix& m, const SymmetricMatrix& dm) {
    const auto lopt = cholesky(m);
    if (!lopt) return 0.0;
    const auto& l = *lopt;
    const int n = m.size();
    // W = L^-1 dM: forward substitution per column of dM
    std::vector<std::vector<double>> w(n, std::vector<double>(n));
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < n; ++i) {
            double s = dm.at(i, c);
            for (int k = 0; k < i; ++k) s -= l[i][k] * w[k][c];
            w[i][c] = s / l[i][i];
        }
    }
    // B = W L^-T, i.e. solve B L^T = W row-wise
    SymmetricMatrix bmat(n);
    for (int r = 0; r < n; ++r) {
        std::vector<double> row(n);
        for (int j = 0; j < n; ++j) {
            double s = w[r][j];
            for (int k = 0; k < j; ++k) s -= l[j][k] * row[k];
            row[j] = s / l[j][j];
        }
        for (int j = r; j < n; ++j) bmat.at(r, j) = row[j];
        for (int j = 0; j < r; ++j) bmat.at(j, r) = 0.5 * (bmat.at(j, r) + row[j]);
    }
    const double lmin = eigendecompose(bmat).eigenvalues.back();
    if (lmin >= -1e-14) return 1e100;
    return -1.0 / lmin;
}

}  // namespace detail

/// Solves the SDP. Deterministic: no randomness anywhere in the pipeline.
inline SdpOutcome solve(const SdpProblem& prob, const SdpConfig& cfg = {}) {
    prob.validate();
    const int n = prob.n;
    const int m = static_cast<int>(prob.a.size());
    const bool feas_mode = prob.mode == SdpMode::Feasibility;
    if (feas_mode && m == 0) {
        SdpOutcome out;
        out.status = SdpStatus::Feasible;
        out.x = SymmetricMatrix::identity(n);
        out.x_lambda_min = 1.0;
        out.note = "no constraints";
        return out;
    }
    const SymmetricMatrix c_eff = feas_mode ? SymmetricMatrix(n) : prob.c;

    const detail::Svec sv(n);
    const int s = sv.dim();
    const int nsys = 2 * s + m + 2;

    std::vector<std::vector<double>> amat(m);  // svec rows of A_i
    for (int i = 0; i < m; ++i) amat[i] = sv.pack(prob.a[i]);
    const std::vector<double> cvec = sv.pack(c_eff);

    // HSD state
    SymmetricMatrix x = SymmetricMatrix::identity(n);
    SymmetricMatrix z = SymmetricMatrix::identity(n);
    std::vector<double> y(m, 0.0);
    double tau = 1.0, kappa = 1.0;

    SdpOutcome out;
    out.x = x;
    out.y.assign(m, 0.0);

    auto dot = [](const std::vector<double>& u, const std::vector<double>& v) {
        double t = 0;
        for (std::size_t i = 0; i < u.size(); ++i) t += u[i] * v[i];
        return t;
    };

    auto try_accept = [&](SdpOutcome& o) -> bool {
        // scaled candidate solution
        if (tau < 1e-10) return false;
        SymmetricMatrix xs = x;
        xs.scale(1.0 / tau);
        double pres = 0;
        for (int i = 0; i < m; ++i) pres = std::max(pres, std::abs(prob.a[i].inner(xs) - prob.b[i]));
        if (pres > cfg.eps_feas) return false;
        std::vector<double> ys(m);
        for (int i = 0; i < m; ++i) ys[i] = y[i] / tau;
        const double pobj = prob.c.inner(xs);
        const double dobj = dot(prob.b, ys);
        if (!feas_mode) {
            // dual feasibility: Zs = C - sum ys A must be PSD-ish; gap small
            SymmetricMatrix zres(n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double v = prob.c.at(i, j);
                    for (int k = 0; k < m; ++k) v -= ys[k] * prob.a[k].at(i, j);
                    zres.at(i, j) = v;
                }
            const double zmin = eigendecompose(zres).eigenvalues.back();
            const double scale_c = 1.0 + prob.c.max_abs();
            if (zmin < -100 * cfg.eps_feas * scale_c) return false;
            const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
            if (gap > 1e-7) return false;
            o.dual_residual = std::max(0.0, -zmin);
        }
        o.status = feas_mode ? SdpStatus::Feasible : SdpStatus::Optimal;
        o.x = xs;
        o.y = ys;
        o.objective = pobj;
        o.dual_objective = dobj;
        o.primal_residual = pres;
        o.x_lambda_min = eigendecompose(xs).eigenvalues.back();
        return true;
    };

    auto try_infeasibility = [&](SdpOutcome& o) -> bool {
        const double bty = dot(prob.b, y);
        if (bty <= 1e-12) return false;
        std::vector<double> yc(m);
        for (int i = 0; i < m; ++i) yc[i] = y[i] / bty;
        SymmetricMatrix s_sum(n);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) s_sum.at(i, j) += yc[k] * prob.a[k].at(i, j);
        const double lmax = eigendecompose(s_sum).eigenvalues.front();
        if (lmax > cfg.eps_cert) return false;
        o.status = SdpStatus::Infeasible;
        o.y = yc;
        o.certificate_value = 1.0;
        o.certificate_psd_gap = lmax;
        o.note = "Farkas certificate: b^T y = 1, lambda_max(sum y_i A_i) = " +
                 std::to_string(lmax);
        return true;
    };

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        out.iterations = iter;
        if (try_accept(out)) return out;
        // Only trust an infeasibility certificate once tau is collapsing
        // relative to kappa, or the certificate is numerically immaculate.
        if (tau < 0.01 * std::max(1.0, kappa) && try_infeasibility(out)) return out;

        const double mu = (x.inner(z) + tau * kappa) / (n + 1);
        if (mu < 1e-14 && tau < 1e-7 && try_infeasibility(out)) return out;

        // residuals
        std::vector<double> rp(m);  // b tau - A(X)
        for (int i = 0; i < m; ++i) rp[i] = prob.b[i] * tau - prob.a[i].inner(x);
        SymmetricMatrix rd(n);  // C tau - sum y A - Z
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double v = c_eff.at(i, j) * tau - z.at(i, j);
                for (int k = 0; k < m; ++k) v -= y[k] * prob.a[k].at(i, j);
                rd.at(i, j) = v;
            }
        const double rg = dot(prob.b, y) - c_eff.inner(x) - kappa;  // want 0

        const auto ez = detail::sym_kron(z, sv);
        const auto ex = detail::sym_kron(x, sv);
        const std::vector<double> rdv = sv.pack(rd);

        // assemble KKT matrix (same for predictor and corrector)
        std::vector<std::vector<double>> kkt(nsys, std::vector<double>(nsys, 0.0));
        // rows 0..m-1: A dx - b dtau = eta rp
        for (int i = 0; i < m; ++i) {
            for (int k = 0; k < s; ++k) kkt[i][k] = amat[i][k];
            kkt[i][2 * s + m] = -prob.b[i];
        }
        // rows m..m+s-1: -A^T dy - dz + c dtau = -eta rd
        for (int r = 0; r < s; ++r) {
            auto& row = kkt[m + r];
            for (int i = 0; i < m; ++i) row[s + i] = -amat[i][r];
            row[s + m + r] = -1.0;
            row[2 * s + m] = cvec[r];
        }
        // row m+s: -c^T dx + b^T dy - dkappa = -eta rg
        {
            auto& row = kkt[m + s];
            for (int k = 0; k < s; ++k) row[k] = -cvec[k];
            for (int i = 0; i < m; ++i) row[s + i] = prob.b[i];
            row[2 * s + m + 1] = -1.0;
        }
        // rows m+s+1..m+2s: Ez dx + Ex dz = rc
        for (int r = 0; r < s; ++r) {
            auto& row = kkt[m + s + 1 + r];
            for (int k = 0; k < s; ++k) {
                row[k] = ez[r][k];
                row[s + m + k] = ex[r][k];
            }
        }
        // row m+2s+1: kappa dtau + tau dkappa = rtk
        {
            auto& row = kkt[m + 2 * s + 1];
            row[2 * s + m] = kappa;
            row[2 * s + m + 1] = tau;
        }

        const SymmetricMatrix hxz = detail::sym_product(x, z);

        auto solve_dir = [&](double eta, double sigma_mu, const SymmetricMatrix* corr,
                             double corr_tk) {
            std::vector<double> rhs(nsys, 0.0);
            for (int i = 0; i < m; ++i) rhs[i] = eta * rp[i];
            for (int r = 0; r < s; ++r) rhs[m + r] = -eta * rdv[r];
            rhs[m + s] = -eta * rg;
            SymmetricMatrix rc(n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double v = -hxz.at(i, j);
                    if (i == j) v += sigma_mu;
                    if (corr) v -= corr->at(i, j);
                    rc.at(i, j) = v;
                }
            const auto rcv = sv.pack(rc);
            for (int r = 0; r < s; ++r) rhs[m + s + 1 + r] = rcv[r];
            rhs[m + 2 * s + 1] = sigma_mu - tau * kappa - corr_tk;
            return detail::qr_least_squares(kkt, rhs);
        };

        auto step_parts = [&](const std::vector<double>& u) {
            struct Dir {
                SymmetricMatrix dx{1}, dz{1};
                std::vector<double> dy;
                double dtau, dkappa;
            } d;
            d.dx = sv.unpack(std::vector<double>(u.begin(), u.begin() + s));
            d.dy.assign(u.begin() + s, u.begin() + s + m);
            d.dz = sv.unpack(std::vector<double>(u.begin() + s + m, u.begin() + 2 * s + m));
            d.dtau = u[2 * s + m];
            d.dkappa = u[2 * s + m + 1];
            return d;
        };

        auto max_step = [&](const auto& d) {
            double a = std::min(detail::max_psd_step(x, d.dx), detail::max_psd_step(z, d.dz));
            if (d.dtau < 0) a = std::min(a, -tau / d.dtau);
            if (d.dkappa < 0) a = std::min(a, -kappa / d.dkappa);
            return a;
        };

        // predictor
        const auto da = step_parts(solve_dir(1.0, 0.0, nullptr, 0.0));
        const double alpha_aff = std::min(1.0, 0.99 * max_step(da));

        // adaptive centering
        double mu_aff = 0.0;
        {
            SymmetricMatrix xa = x, za = z;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    xa.at(i, j) += alpha_aff * da.dx.at(i, j);
                    za.at(i, j) += alpha_aff * da.dz.at(i, j);
                }
            mu_aff = (xa.inner(za) + (tau + alpha_aff * da.dtau) * (kappa + alpha_aff * da.dkappa)) /
                     (n + 1);
        }
        double sigma = std::pow(std::max(0.0, mu_aff / mu), 3);
        sigma = std::min(sigma, 1.0);

        // corrector
        const SymmetricMatrix corr = detail::sym_product(da.dx, da.dz);
        const auto dc =
            step_parts(solve_dir(1.0 - sigma, sigma * mu, &corr, da.dtau * da.dkappa));

        const double gamma = std::min(0.99, 0.9 + 0.09 * std::min(1.0, 1e-4 / std::max(mu, 1e-300)));
        double alpha = std::min(1.0, gamma * max_step(dc));
        if (!(alpha > 0) || !std::isfinite(alpha)) {
            out.status = SdpStatus::MaxIterations;
            out.note = "stalled: zero step";
            break;
        }

        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                x.at(i, j) += alpha * dc.dx.at(i, j);
                z.at(i, j) += alpha * dc.dz.at(i, j);
            }
        for (int i = 0; i < m; ++i) y[i] += alpha * dc.dy[i];
        tau += alpha * dc.dtau;
        kappa += alpha * dc.dkappa;
    }

    if (try_accept(out)) return out;
    if (try_infeasibility(out)) return out;

    out.status = SdpStatus::MaxIterations;
    out.iterations = cfg.max_iterations;
    if (tau > 1e-10) {
        SymmetricMatrix xs = x;
        xs.scale(1.0 / tau);
        out.x = xs;
        double pres = 0;
        for (int i = 0; i < m; ++i)
            pres = std::max(pres, std::abs(prob.a[i].inner(out.x) - prob.b[i]));
        out.primal_residual = pres;
        out.objective = prob.c.inner(out.x);
        out.x_lambda_min = eigendecompose(out.x).eigenvalues.back();
        out.y.assign(m, 0.0);
        for (int i = 0; i < m; ++i) out.y[i] = y[i] / tau;
    }
    if (out.note.empty()) out.note = "iteration budget exhausted";
    return out;
}

/// Trace-objective variant: a low-rank bias for completion problems.
inline SdpOutcome minimize_trace(SdpProblem prob, const SdpConfig& cfg = {}) {
    prob.c = SymmetricMatrix::identity(prob.n);
    prob.mode = SdpMode::Minimize;
    return solve(prob, cfg);
}

}  // namespace soslab
