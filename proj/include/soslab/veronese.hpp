#pragma once

// Quadrics vanishing on Veronese embeddings, inner projections away from
// points, quadratic persistence, Castelnuovo's bound, and the Pythagoras
// lower bound. Everything here runs over exact rationals: the quantities are
// integer invariants and floating-point rank decisions would be fragile.

#include <optional>
#include <string>
#include <vector>

#include "soslab/errors.hpp"
#include "soslab/exact.hpp"
#include "soslab/poly.hpp"
#include "soslab/rng.hpp"

namespace soslab {

inline Int binomial(int a, int b) {
    if (b < 0 || b > a) return Int(0);
    Int r(1);
    for (int i = 0; i < b; ++i) {
        r *= (a - i);
        r /= (i + 1);
    }
    return r;
}

/// A linear space of quadrics on R^ambient, each stored as a symmetric
/// rational coefficient matrix Q (the quadric is v^T Q v).
struct QuadricSpace {
    int ambient = 0;
    std::vector<RatMatrix> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

namespace detail {
inline void rat_matrix_primitive(RatMatrix& m) {
    RatVector flat;
    for (const auto& row : m)
        for (const auto& v : row) flat.push_back(v);
    rat_make_primitive(flat);
    std::size_t k = 0;
    for (auto& row : m)
        for (auto& v : row) v = flat[k++];
}

inline Rational quadric_value(const RatMatrix& q, const RatVector& v) {
    Rational acc(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (q[i][j] != 0 && v[j] != 0) acc += v[i] * q[i][j] * v[j];
    }
    return acc;
}
}  // namespace detail

/// The degree-d Veronese image of a projective point: all degree-d monomials
/// in its n+1 coordinates, listed in the fixed basis order.
inline RatVector veronese_point(int n, int d, const RatVector& point) {
    if (static_cast<int>(point.size()) != n + 1)
        throw DimensionMismatch("veronese_point: need n+1 coordinates");
    const MonomialBasis r1 = monomial_basis(n + 1, d, true);
    return basis_values(r1, point);
}

/// Basis of I(nu_d(P^n))_2, the quadrics through the Veronese variety: for
/// every degree-2d monomial with several representations m_i * m_j, the
/// pairwise differences of those representations. The count comes out to
/// C(dim R_1 + 1, 2) - C(n + 2d, 2d).
inline QuadricSpace veronese_quadrics(int n, int d) {
    if (n < 1 || d < 1) throw DimensionMismatch("veronese_quadrics: need n, d >= 1");
    if (binomial(n + d, d) > 60)
        throw TooLarge("veronese_quadrics: dim R_1 exceeds the desk-scale guard (60)");
    const MonomialBasis r1 = monomial_basis(n + 1, d, true);
    const int big_n = r1.size();

    std::map<Exponents, std::vector<std::pair<int, int>>, GrevlexLess> products;
    for (int i = 0; i < big_n; ++i)
        for (int j = i; j < big_n; ++j)
            products[exponents_sum(r1.monomials[i], r1.monomials[j])].emplace_back(i, j);

    QuadricSpace qs;
    qs.ambient = big_n;
    auto pair_matrix = [&](std::pair<int, int> ij) {
        RatMatrix q = rat_zero(big_n, big_n);
        auto [i, j] = ij;
        if (i == j)
            q[i][i] = 1;
        else
            q[i][j] = q[j][i] = Rational(1, 2);
        return q;
    };
    for (const auto& [mono, pairs] : products) {
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            RatMatrix q = pair_matrix(pairs[k - 1]);
            const RatMatrix q2 = pair_matrix(pairs[k]);
            for (int i = 0; i < big_n; ++i)
                for (int j = 0; j < big_n; ++j) q[i][j] -= q2[i][j];
            detail::rat_matrix_primitive(q);
            qs.basis.push_back(std::move(q));
        }
    }
    return qs;
}

/// Projection of the quadric space away from a point v of the variety. After
/// a change of coordinates T with first column v, the quadrics of the
/// projected variety are those with vanishing first row and column, which is
/// exactly the subspace {Q : Q v = 0}; with T = [v, e_j (j != pivot)] their
/// matrices in the new coordinates are the old ones with the pivot row and
/// column deleted. The ambient dimension drops by one.
inline QuadricSpace project_from_point(const QuadricSpace& qs, const RatVector& v,
                                       int* pivot_out = nullptr) {
    if (static_cast<int>(v.size()) != qs.ambient)
        throw DimensionMismatch("project_from_point: point has wrong ambient dimension");
    int pivot = -1;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
            pivot = static_cast<int>(i);
            break;
        }
    if (pivot < 0) throw NotOnVariety("project_from_point: zero vector is not a point");
    for (const auto& q : qs.basis)
        if (detail::quadric_value(q, v) != 0)
            throw NotOnVariety("project_from_point: point is not annihilated by the quadrics");
    if (pivot_out) *pivot_out = pivot;

    const int t = qs.dim();
    // rows: coordinates of (sum_b c_b Q_b) v; null space = surviving quadrics
    RatMatrix cond = rat_zero(qs.ambient, t);
    for (int b = 0; b < t; ++b) {
        const RatVector qv = rat_matvec(qs.basis[b], v);
        for (int r = 0; r < qs.ambient; ++r) cond[r][b] = qv[r];
    }
    const RatMatrix null = rat_null_space(cond, t);

    QuadricSpace out;
    out.ambient = qs.ambient - 1;
    for (const auto& c : null) {
        RatMatrix q = rat_zero(out.ambient, out.ambient);
        for (int b = 0; b < t; ++b) {
            if (c[b] == 0) continue;
            const RatMatrix& src = qs.basis[b];
            for (int i = 0, ii = 0; i < qs.ambient; ++i) {
                if (i == pivot) continue;
                for (int j = 0, jj = 0; j < qs.ambient; ++j) {
                    if (j == pivot) continue;
                    if (src[i][j] != 0) q[ii][jj] += c[b] * src[i][j];
                    ++jj;
                }
                ++ii;
            }
        }
        detail::rat_matrix_primitive(q);
        out.basis.push_back(std::move(q));
    }
    return out;
}

/// Push-forward of an ambient point under the projection away from v (pivot
/// as chosen by project_from_point): solve T z = w and drop the first
/// coordinate. Returns the zero vector when w is the projection center.
inline RatVector project_point_image(const RatVector& w, const RatVector& v, int pivot) {
    const Rational z0 = w[pivot] / v[pivot];
    RatVector out;
    out.reserve(w.size() - 1);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        out.push_back(w[i] - z0 * v[i]);
    }
    return out;
}

struct ProjectionStep {
    std::vector<long long> source_point;  // the P^n point whose Veronese image was used
    int dim_before = 0;
    int dim_after = 0;
    int drop = 0;
    int codim_bound = 0;  // codimension of the variety before this step
};

struct ProjectionTrace {
    int n = 0, d = 0;
    int ambient_dim = 0;  // projective dimension N of the initial embedding
    int initial_dim_i2 = 0;
    std::vector<ProjectionStep> steps;
    bool complete = false;  // reached dim I_2 = 0
    int qp = 0;             // number of projections when complete
};

/// Quadratic persistence of nu_d(P^n): project away from random rational
/// points of the variety until no quadrics survive. Conditions accumulate in
/// the original coordinates ({Q : Q v_i = 0 for all i}, equivalent to chained
/// projections), so the per-step drop is an exact rank increment. Each step
/// tries three candidate points and keeps the largest drop.
inline ProjectionTrace quadratic_persistence(int n, int d, std::uint64_t seed,
                                             int max_steps = -1) {
    const QuadricSpace qs = veronese_quadrics(n, d);
    const int t0 = qs.dim();
    ProjectionTrace trace;
    trace.n = n;
    trace.d = d;
    trace.ambient_dim = qs.ambient - 1;
    trace.initial_dim_i2 = t0;

    IncrementalEchelon ech(t0);
    SplitMix64 rng(seed, 0x9f);
    int step_count = 0;

    auto candidate_rows = [&](const std::vector<long long>& pt,
                              std::vector<RatVector>& rows) {
        RatVector p(pt.begin(), pt.end());
        const RatVector v = veronese_point(n, d, p);
        rows.clear();
        for (int r = 0; r < qs.ambient; ++r) {
            RatVector row(t0);
            bool nonzero = false;
            for (int b = 0; b < t0; ++b) {
                Rational acc(0);
                for (int j = 0; j < qs.ambient; ++j)
                    if (qs.basis[b][r][j] != 0 && v[j] != 0) acc += qs.basis[b][r][j] * v[j];
                row[b] = acc;
                nonzero = nonzero || acc != 0;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    };

    while (t0 - ech.rank() > 0 && (max_steps < 0 || step_count < max_steps)) {
        std::vector<long long> best_pt;
        std::vector<RatVector> best_rows;
        int best_gain = 0;
        for (int attempt = 0; attempt < 20 && best_gain == 0; ++attempt) {
            for (int cand = 0; cand < 3; ++cand) {
                std::vector<long long> pt(n + 1);
                bool all_zero = true;
                for (auto& x : pt) {
                    x = rng.uniform_int(-10, 10);
                    all_zero = all_zero && x == 0;
                }
                if (all_zero) pt[0] = 1;
                std::vector<RatVector> rows;
                candidate_rows(pt, rows);
                const int gain = ech.probe(rows);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_pt = pt;
                    best_rows = std::move(rows);
                }
            }
        }
        if (best_gain == 0)
            throw DegenerateConfiguration("quadratic_persistence: no candidate point drops quadrics");

        ProjectionStep st;
        st.source_point = best_pt;
        st.dim_before = t0 - ech.rank();
        st.codim_bound = (qs.ambient - 1 - step_count) - n;
        for (auto& row : best_rows) ech.add_row(std::move(row));
        st.dim_after = t0 - ech.rank();
        st.drop = st.dim_before - st.dim_after;
        if (st.drop > st.codim_bound)
            throw NumericalError("quadratic_persistence: drop exceeded the codimension bound");
        trace.steps.push_back(std::move(st));
        ++step_count;
    }
    trace.complete = (t0 - ech.rank() == 0);
    trace.qp = step_count;
    return trace;
}

struct CastelnuovoReport {
    Int bound;      // C(codim + 1, 2)
    int dim_i2;
    bool equality;  // holds iff the variety has minimal degree
};

inline CastelnuovoReport castelnuovo_check(const QuadricSpace& qs, int dim_x, int codim_x) {
    if (dim_x < 0 || codim_x < 0 || dim_x + codim_x + 1 != qs.ambient)
        throw DimensionMismatch("castelnuovo_check: inconsistent dimensions");
    CastelnuovoReport r;
    r.bound = binomial(codim_x + 1, 2);
    r.dim_i2 = qs.dim();
    r.equality = (Int(r.dim_i2) == r.bound);
    return r;
}

/// Pythagoras lower bound Pi(X) >= N + 1 - qp(X) for X nondegenerate in P^N.
inline int pythagoras_lower_bound(int ambient_n, int qp) {
    if (qp < 0 || qp > ambient_n + 1)
        throw DimensionMismatch("pythagoras_lower_bound: need 0 <= qp <= N + 1");
    return ambient_n + 1 - qp;
}

}  // namespace soslab
