#pragma once

// Exact rational dense linear algebra: elimination, rank, null spaces,
// inverses, and a small phase-1 simplex for exact LP feasibility. Sizes in
// this project stay in the low hundreds, so plain fraction arithmetic with
// per-row normalization is all we need.

#include <optional>
#include <vector>

#include "soslab/errors.hpp"
#include "soslab/rational.hpp"

namespace soslab {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;  // row major

inline RatMatrix rat_zero(std::size_t rows, std::size_t cols) {
    return RatMatrix(rows, RatVector(cols, Rational(0)));
}

inline RatMatrix rat_identity(std::size_t n) {
    RatMatrix m = rat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RatVector rat_matvec(const RatMatrix& m, const RatVector& v) {
    RatVector r(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (m[i][j] != 0 && v[j] != 0) r[i] += m[i][j] * v[j];
    return r;
}

inline RatMatrix rat_matmul(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMatrix r = rat_zero(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (b[l][j] != 0) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

/// Scales a row so that its entries are coprime integers (first nonzero > 0).
inline void rat_make_primitive(RatVector& row) {
    Int lcm_den(1), gcd_num(0);
    for (const auto& q : row) {
        if (q == 0) continue;
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator_of(q));
    }
    if (lcm_den == 0) return;
    std::vector<Int> ints(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        ints[i] = numerator_of(row[i]) * (lcm_den / denominator_of(row[i]));
        gcd_num = boost::multiprecision::gcd(gcd_num, ints[i]);
    }
    if (gcd_num == 0) return;
    Int lead(0);
    for (const auto& v : ints)
        if (v != 0) {
            lead = v;
            break;
        }
    if (lead < 0)
        for (auto& v : ints) v = -v;
    // gcd_num is nonnegative; the constructor requires a positive denominator
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = Rational(ints[i], gcd_num);
}

/// In-place reduced row echelon form. Returns the pivot columns.
inline std::vector<int> rat_rref(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

inline int rat_rank(RatMatrix m) { return static_cast<int>(rat_rref(m).size()); }

/// Basis of the right null space {x : m x = 0}, one vector per free column.
inline RatMatrix rat_null_space(RatMatrix m, std::size_t cols) {
    if (!m.empty()) cols = m[0].size();
    const std::vector<int> pivots = rat_rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    RatMatrix basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVector v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            if (k < m.size()) v[pivots[k]] = -m[k][free_col];
        rat_make_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rational rat_determinant(RatMatrix m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        const Rational inv = Rational(1) / m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            const Rational f = m[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

inline std::optional<RatMatrix> rat_inverse(const RatMatrix& a) {
    const std::size_t n = a.size();
    RatMatrix work = a;
    for (std::size_t i = 0; i < n; ++i) {
        const RatMatrix id = rat_identity(n);
        work[i].insert(work[i].end(), id[i].begin(), id[i].end());
    }
    rat_rref(work);
    RatMatrix inv = rat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (work[i][j] != (i == j ? Rational(1) : Rational(0))) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = work[i][n + j];
    }
    return inv;
}

/// Maintains a row space in echelon form; rows can be added one at a time and
/// the rank queried incrementally. Rows are kept primitive-integer to limit
/// coefficient growth.
class IncrementalEchelon {
  public:
    explicit IncrementalEchelon(std::size_t cols) : cols_(cols) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    std::size_t cols() const { return cols_; }

    /// Reduces `row` against the current echelon; inserts the remainder if it
    /// is nonzero. Returns true when the rank grew.
    bool add_row(RatVector row) {
        if (row.size() != cols_) throw DimensionMismatch("IncrementalEchelon::add_row");
        reduce(row);
        int lead = lead_index(row);
        if (lead < 0) return false;
        const Rational inv = Rational(1) / row[lead];
        for (auto& v : row) v *= inv;
        rat_make_primitive(row);
        // keep rows ordered by leading column
        std::size_t pos = 0;
        while (pos < rows_.size() && leads_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(row));
        leads_.insert(leads_.begin() + pos, lead);
        return true;
    }

    /// Rank increase if all of `rows` were added (does not modify state).
    int probe(const std::vector<RatVector>& rows) const {
        IncrementalEchelon copy = *this;
        int gained = 0;
        for (const auto& r : rows)
            if (copy.add_row(r)) ++gained;
        return gained;
    }

  private:
    void reduce(RatVector& row) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const int lead = leads_[k];
            if (row[lead] == 0) continue;
            const Rational f = row[lead] / rows_[k][lead];
            for (std::size_t j = lead; j < cols_; ++j)
                if (rows_[k][j] != 0) row[j] -= f * rows_[k][j];
        }
    }

    static int lead_index(const RatVector& row) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) return static_cast<int>(j);
        return -1;
    }

    std::size_t cols_;
    std::vector<RatVector> rows_;
    std::vector<int> leads_;
};

/// Exact feasibility of {lambda >= 0 : A lambda = b} via phase-1 simplex with
/// Bland's rule (no cycling; everything rational).
inline bool lp_feasible_nonneg(const RatMatrix& a, const RatVector& b) {
    const std::size_t m = a.size();
    if (m == 0) return true;
    const std::size_t n = a[0].size();
    // tableau rows: m constraints + objective; columns: n original + m
    // artificial + rhs. Start from the all-artificial basis.
    RatMatrix t = rat_zero(m + 1, n + m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? -a[i][j] : a[i][j];
        t[i][n + i] = 1;
        t[i][n + m] = flip ? -b[i] : b[i];
    }
    // objective: minimize sum of artificials; expressed in terms of nonbasic
    // columns by subtracting the constraint rows.
    for (std::size_t j = 0; j <= n + m; ++j) {
        Rational s(0);
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = -s;
    }
    for (std::size_t i = 0; i < m; ++i) t[m][n + i] = 0;

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    while (true) {
        // Bland: entering column = lowest index with negative reduced cost
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (t[m][j] < 0) {
                enter = j;
                break;
            }
        if (enter == n + m) break;
        // leaving row: min ratio, ties by lowest basis index
        std::size_t leave = m;
        Rational best_ratio(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            const Rational ratio = t[i][n + m] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction cannot happen in phase 1
        const Rational inv = Rational(1) / t[leave][enter];
        for (auto& v : t[leave]) v *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    return -t[m][n + m] == 0;  // optimal artificial sum
}

}  // namespace soslab
