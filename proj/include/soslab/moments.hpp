#pragma once

// The dual side: linear functionals on degree-2d forms as quadratic forms
// Q_ell on the degree-d monomial basis (Q_ell(f) = ell(f^2)), Hankel matrices,
// extreme-ray testing by kernel maximality, rank-1 point recovery, and the
// Cayley-Bacharach construction of a rank-7 extreme ray for ternary sextics.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "soslab/errors.hpp"
#include "soslab/exact.hpp"
#include "soslab/numerics.hpp"
#include "soslab/poly.hpp"
#include "soslab/rng.hpp"

namespace soslab {

/// A linear functional on degree-2d monomials together with its matrix view:
/// Q[i][j] = ell(m_i * m_j) over the degree-d basis. Well-defined because the
/// entry depends only on the product monomial.
struct MomentFunctional {
    MonomialBasis basis;  // degree-d monomials
    std::map<Exponents, double, GrevlexLess> values;

    SymmetricMatrix matrix() const {
        const int s = basis.size();
        SymmetricMatrix q(s);
        for (int i = 0; i < s; ++i)
            for (int j = i; j < s; ++j) {
                const auto it = values.find(exponents_sum(basis.monomials[i], basis.monomials[j]));
                if (it == values.end())
                    throw DimensionMismatch("MomentFunctional: missing product moment");
                q.at(i, j) = it->second;
            }
        return q;
    }

    double apply(const Polynomial& p) const {
        double acc = 0;
        for (const auto& [e, c] : p.terms()) {
            const auto it = values.find(e);
            if (it == values.end()) throw DimensionMismatch("MomentFunctional: missing moment");
            acc += to_double(c) * it->second;
        }
        return acc;
    }
};

/// (d+1) x (d+1) matrix with entry (i,j) = moments[i+j]; the moment matrix of
/// a linear functional on binary forms of degree 2d.
inline SymmetricMatrix hankel_matrix(const std::vector<double>& moments) {
    if (moments.size() % 2 != 1)
        throw DimensionMismatch("hankel_matrix: need an odd number of moments (2d+1)");
    const int d = static_cast<int>(moments.size() / 2);
    SymmetricMatrix h(d + 1);
    for (int i = 0; i <= d; ++i)
        for (int j = i; j <= d; ++j) h.at(i, j) = moments[i + j];
    return h;
}

/// Point evaluation functional ell_v on degree-2d monomials; its matrix is
/// the rank-1 outer product of the degree-d monomial vector at v. The affine
/// representative is normalized to unit length (the choice only scales the
/// functional).
inline MomentFunctional point_evaluation_functional(const std::vector<double>& v,
                                                    const MonomialBasis& basis) {
    double norm2 = 0;
    for (double x : v) norm2 += x * x;
    if (norm2 == 0) throw ZeroInput("point_evaluation_functional: zero vector");
    std::vector<double> unit = v;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : unit) x *= inv;

    MomentFunctional f;
    f.basis = basis;
    const MonomialBasis b2 = monomial_basis(basis.nvars, 2 * basis.degree, basis.exact_degree);
    const auto vals = basis_values(b2, unit);
    for (int k = 0; k < b2.size(); ++k) f.values[b2.monomials[k]] = vals[k];
    return f;
}

struct RecoveredPoint {
    std::vector<double> point;  // projective representative, largest entry 1
};
struct NotRankOne {};
struct NotVeroneseConsistent {};
using PointRecovery = std::variant<RecoveredPoint, NotRankOne, NotVeroneseConsistent>;

/// If Q = w w^T with w a consistent evaluation of the degree-d basis at some
/// point, recover that projective point (sign-resolved via the pure powers).
inline PointRecovery recover_point_from_rank1(const SymmetricMatrix& q,
                                              const MonomialBasis& basis, double tol = 1e-7) {
    const RankReport rr = numerical_rank(q, tol);
    if (rr.rank != 1) return NotRankOne{};
    const auto ed = eigendecompose(q);
    std::vector<double> w = ed.eigenvectors.front();
    const double scale = std::sqrt(std::max(ed.eigenvalues.front(), 0.0));
    for (double& x : w) x *= scale;

    const int nv = basis.nvars;
    const int d = basis.degree;
    // locate pure powers x_j^d in the basis
    std::vector<int> pure(nv, -1);
    for (int k = 0; k < basis.size(); ++k)
        for (int j = 0; j < nv; ++j)
            if (basis.monomials[k][j] == d) pure[j] = k;
    int jstar = -1;
    double wmax = 0;
    for (int j = 0; j < nv; ++j)
        if (pure[j] >= 0 && std::abs(w[pure[j]]) > wmax) {
            wmax = std::abs(w[pure[j]]);
            jstar = j;
        }
    const double wnorm = [&] {
        double m = 0;
        for (double x : w) m = std::max(m, std::abs(x));
        return std::max(m, 1e-300);
    }();
    if (jstar < 0 || wmax <= tol * wnorm) return NotVeroneseConsistent{};
    if (d % 2 == 0 && w[pure[jstar]] < 0)
        for (double& x : w) x = -x;

    // ratios v_i / v_jstar from the monomials x_jstar^(d-1) x_i
    std::vector<double> point(nv, 0.0);
    point[jstar] = 1.0;
    for (int i = 0; i < nv; ++i) {
        if (i == jstar) continue;
        Exponents e(nv, 0);
        e[jstar] = d - 1;
        e[i] = 1;
        int idx = -1;
        for (int k = 0; k < basis.size(); ++k)
            if (basis.monomials[k] == e) idx = k;
        if (idx < 0) return NotVeroneseConsistent{};
        point[i] = w[idx] / w[pure[jstar]];
    }
    // consistency: w must be proportional to the full evaluation vector
    const auto expect = basis_values(basis, point);
    const double c = w[pure[jstar]];  // evaluation at x_jstar^d is 1
    for (int k = 0; k < basis.size(); ++k)
        if (std::abs(w[k] - c * expect[k]) > 1e3 * tol * std::max(wnorm, std::abs(c)))
            return NotVeroneseConsistent{};

    // deterministic representative: scale so the largest coordinate is 1
    int arg = 0;
    for (int i = 0; i < nv; ++i)
        if (std::abs(point[i]) > std::abs(point[arg])) arg = i;
    const double s = point[arg];
    for (double& x : point) x /= s;
    return RecoveredPoint{std::move(point)};
}

struct ExtremeRayReport {
    bool is_extreme = false;
    int rank = 0;
    std::vector<std::vector<double>> kernel;       // basis of ker Q
    int solution_space_dim = 0;                    // dim {A in L : A ker(Q) = 0}
    std::vector<double> witness_coefficients;      // a second direction when not extreme
};

/// Kernel-maximality test: Q spans an extreme ray of the spectrahedral cone
/// {PSD} intersect span(subspace) iff the only members of the subspace killing
/// ker(Q) are multiples of Q. Decided by the rank of the linear system
/// {A in L : A k = 0 for all kernel vectors k}.
inline ExtremeRayReport is_extreme_ray(const SymmetricMatrix& q,
                                       const std::vector<SymmetricMatrix>& subspace,
                                       double tol = 1e-7) {
    const int n = q.size();
    const int t = static_cast<int>(subspace.size());
    if (t == 0) throw DimensionMismatch("is_extreme_ray: empty subspace");
    for (const auto& l : subspace)
        if (l.size() != n) throw DimensionMismatch("is_extreme_ray: subspace dimension");

    // membership check: least-squares fit of Q in the subspace
    std::vector<double> q_coefficients(t, 0.0);
    {
        std::vector<std::vector<double>> gram(t, std::vector<double>(t));
        std::vector<double> rhs(t);
        for (int a = 0; a < t; ++a) {
            rhs[a] = subspace[a].inner(q);
            for (int b = a; b < t; ++b) gram[a][b] = gram[b][a] = subspace[a].inner(subspace[b]);
        }
        // solve via eigen pseudo-inverse of the Gram
        SymmetricMatrix g(t);
        for (int a = 0; a < t; ++a)
            for (int b = a; b < t; ++b) g.at(a, b) = gram[a][b];
        const auto ed = eigendecompose(g);
        std::vector<double> coef(t, 0.0);
        for (int k = 0; k < t; ++k) {
            if (ed.eigenvalues[k] <= 1e-12 * std::max(1.0, ed.eigenvalues.front())) continue;
            double proj = 0;
            for (int a = 0; a < t; ++a) proj += ed.eigenvectors[k][a] * rhs[a];
            proj /= ed.eigenvalues[k];
            for (int a = 0; a < t; ++a) coef[a] += proj * ed.eigenvectors[k][a];
        }
        SymmetricMatrix fit(n);
        for (int a = 0; a < t; ++a)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) fit.at(i, j) += coef[a] * subspace[a].at(i, j);
        double err = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) err = std::max(err, std::abs(fit.at(i, j) - q.at(i, j)));
        if (err > 1e-6 * std::max(1.0, q.max_abs()))
            throw NotInSubspace("is_extreme_ray: Q is not in the given subspace");
        q_coefficients = coef;
    }

    ExtremeRayReport rep;
    const RankReport rr = numerical_rank(q, tol);
    rep.rank = rr.rank;
    const auto ed = eigendecompose(q);
    for (int k = rr.rank; k < n; ++k) rep.kernel.push_back(ed.eigenvectors[k]);

    // system rows: for each kernel vector k and coordinate i,
    //   sum_a c_a (L_a k)_i = 0
    // (no kernel vectors means no rows: every subspace member qualifies)
    const int rows = static_cast<int>(rep.kernel.size()) * n;
    std::vector<std::vector<double>> sys(rows, std::vector<double>(t, 0.0));
    int r = 0;
    for (const auto& k : rep.kernel) {
        for (int i = 0; i < n; ++i, ++r)
            for (int a = 0; a < t; ++a) {
                double s = 0;
                for (int j = 0; j < n; ++j) s += subspace[a].at(i, j) * k[j];
                sys[r][a] = s;
            }
    }
    // null space dimension of sys via the spectrum of sys^T sys
    SymmetricMatrix normal(t);
    for (int a = 0; a < t; ++a)
        for (int b = a; b < t; ++b) {
            double s = 0;
            for (int rr2 = 0; rr2 < rows; ++rr2) s += sys[rr2][a] * sys[rr2][b];
            normal.at(a, b) = s;
        }
    const auto en = eigendecompose(normal);
    const double cut = tol * std::max(en.eigenvalues.front(), 1.0);
    std::vector<std::vector<double>> null_vecs;
    for (int k = 0; k < t; ++k)
        if (en.eigenvalues[k] <= cut) null_vecs.push_back(en.eigenvectors[k]);
    rep.solution_space_dim = static_cast<int>(null_vecs.size());
    rep.is_extreme = (rep.solution_space_dim == 1);
    if (rep.solution_space_dim >= 2) {
        // counterexample direction: the null vector least aligned with Q
        double qnorm = 1e-300;
        for (double c : q_coefficients) qnorm += c * c;
        double best = 2.0;
        for (const auto& v : null_vecs) {
            double d = 0;
            for (int a = 0; a < t; ++a) d += v[a] * q_coefficients[a];
            const double align = d * d / qnorm;
            if (align < best) {
                best = align;
                rep.witness_coefficients = v;
            }
        }
    }
    return rep;
}

/// The span of degree-2d moment matrices: one 0/1 matrix E_m per degree-2d
/// monomial m, with (E_m)_{ij} = 1 exactly when m_i * m_j = m. This is the
/// image of the map ell -> Q_ell.
inline std::vector<SymmetricMatrix> moment_subspace(int nvars, int d) {
    const MonomialBasis basis = monomial_basis(nvars, d, true);
    std::map<Exponents, SymmetricMatrix, GrevlexLess> mats;
    for (int i = 0; i < basis.size(); ++i)
        for (int j = i; j < basis.size(); ++j) {
            const Exponents m = exponents_sum(basis.monomials[i], basis.monomials[j]);
            auto it = mats.find(m);
            if (it == mats.end()) it = mats.emplace(m, SymmetricMatrix(basis.size())).first;
            it->second.at(i, j) = 1.0;
        }
    std::vector<SymmetricMatrix> out;
    for (auto& [m, mat] : mats) out.push_back(std::move(mat));
    return out;
}

struct CayleyBacharach {
    std::vector<std::array<long long, 3>> points;  // 9 intersection points, integer reps
    std::vector<double> lambda;                    // relation on unit representatives, lambda_9 = 1
    std::vector<double> mu;                        // mu_1..8 = 1, mu_9 critical
    SymmetricMatrix q_matrix{10};
    std::vector<double> eigenvalues;
    int rank = 0;
    int evaluation_rank = 0;  // rank of the 9x10 evaluation matrix (exact)
    ExtremeRayReport extreme;
    std::uint64_t attempts = 0;
};

/// Two cubics, each a product of three real lines in general position, meet
/// in nine real points; evaluations of cubics there satisfy one linear
/// relation with all coefficients nonzero. Weighting the point evaluations
/// with eight unit coefficients and the critical ninth weight
/// mu_9 = -lambda_9 / sum_{i<=8} lambda_i^2/mu_i produces a PSD rank-7 form
/// spanning an extreme ray of the ternary-sextic moment spectrahedron.
/// The relation is computed exactly; genericity is checked constructively and
/// fresh lines are drawn from the seed until every check passes.
inline CayleyBacharach cayley_bacharach(std::uint64_t seed) {
    const MonomialBasis cubics = monomial_basis(3, 3, true);
    for (std::uint64_t attempt = 0; attempt < 50; ++attempt) {
        SplitMix64 rng(seed, 0xcb0 + attempt);
        // six lines with small integer coefficients: q1 = l0 l1 l2, q2 = l3 l4 l5
        std::vector<std::array<long long, 3>> lines(6);
        for (auto& l : lines) {
            for (auto& c : l) c = rng.uniform_int(-5, 5);
            if (l[0] == 0 && l[1] == 0 && l[2] == 0) l[0] = 1;
        }
        auto cross = [](const std::array<long long, 3>& a, const std::array<long long, 3>& b) {
            return std::array<long long, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                            a[0] * b[1] - a[1] * b[0]};
        };
        auto is_zero = [](const std::array<long long, 3>& v) {
            return v[0] == 0 && v[1] == 0 && v[2] == 0;
        };
        std::vector<std::array<long long, 3>> pts;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i)
            for (int j = 3; j < 6 && ok; ++j) {
                const auto p = cross(lines[i], lines[j]);
                if (is_zero(p)) ok = false;
                pts.push_back(p);
            }
        if (!ok) continue;
        // points pairwise distinct projectively
        for (std::size_t a = 0; a < pts.size() && ok; ++a)
            for (std::size_t b = a + 1; b < pts.size() && ok; ++b)
                if (is_zero(cross(pts[a], pts[b]))) ok = false;
        // no point on a third line
        for (std::size_t a = 0; a < pts.size() && ok; ++a) {
            const int li = static_cast<int>(a) / 3, lj = 3 + static_cast<int>(a) % 3;
            for (int l = 0; l < 6 && ok; ++l) {
                if (l == li || l == lj) continue;
                const long long dot = lines[l][0] * pts[a][0] + lines[l][1] * pts[a][1] +
                                      lines[l][2] * pts[a][2];
                if (dot == 0) ok = false;
            }
        }
        if (!ok) continue;

        // exact evaluation matrix (9 x 10) on integer representatives
        RatMatrix ev = rat_zero(9, 10);
        for (int a = 0; a < 9; ++a) {
            RatVector p = {Rational(pts[a][0]), Rational(pts[a][1]), Rational(pts[a][2])};
            const auto row = basis_values(cubics, p);
            for (int k = 0; k < 10; ++k) ev[a][k] = row[k];
        }
        const int ev_rank = rat_rank(ev);
        if (ev_rank != 8) continue;

        // exact left kernel: lambda with lambda^T Ev = 0
        RatMatrix evt = rat_zero(10, 9);
        for (int a = 0; a < 9; ++a)
            for (int k = 0; k < 10; ++k) evt[k][a] = ev[a][k];
        const RatMatrix left = rat_null_space(evt, 9);
        if (left.size() != 1) continue;
        RatVector lam = left[0];
        bool nonzero = true;
        for (const auto& l : lam) nonzero = nonzero && l != 0;
        if (!nonzero) continue;
        const Rational scale = lam[8];
        for (auto& l : lam) l /= scale;  // lambda_9 = 1 exactly

        // switch to unit-norm representatives: scaling v by c scales f(v) by
        // c^3, so the relation coefficients pick up |v|^3
        CayleyBacharach cb;
        cb.points = pts;
        cb.attempts = attempt + 1;
        cb.evaluation_rank = ev_rank;
        std::vector<std::vector<double>> w(9);
        cb.lambda.resize(9);
        for (int a = 0; a < 9; ++a) {
            std::vector<double> v = {double(pts[a][0]), double(pts[a][1]), double(pts[a][2])};
            const double nrm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            for (double& x : v) x /= nrm;
            w[a] = basis_values(cubics, v);
            cb.lambda[a] = to_double(lam[a]) * nrm * nrm * nrm;
        }
        const double l9 = cb.lambda[8];
        for (double& l : cb.lambda) l /= l9;

        cb.mu.assign(9, 1.0);
        double denom = 0;
        for (int a = 0; a < 8; ++a) denom += cb.lambda[a] * cb.lambda[a] / cb.mu[a];
        cb.mu[8] = -cb.lambda[8] / denom;  // critical value: PSD with maximal kernel

        SymmetricMatrix q(10);
        for (int a = 0; a < 9; ++a)
            for (int i = 0; i < 10; ++i)
                for (int j = i; j < 10; ++j) q.at(i, j) += cb.mu[a] * w[a][i] * w[a][j];
        cb.q_matrix = q;
        const auto ed = eigendecompose(q);
        cb.eigenvalues = ed.eigenvalues;
        if (ed.eigenvalues.back() < -1e-6 * ed.eigenvalues.front()) continue;
        cb.rank = numerical_rank(q).rank;
        if (cb.rank != 7) continue;
        cb.extreme = is_extreme_ray(q, moment_subspace(3, 3));
        if (!cb.extreme.is_extreme) continue;
        return cb;
    }
    throw DegenerateConfiguration("cayley_bacharach: no valid configuration within retry budget");
}

}  // namespace soslab
