#pragma once

// Sparse multivariate polynomial arithmetic over exact rationals, monomial
// bases in graded reverse lexicographic order, homogenization and evaluation.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "soslab/errors.hpp"
#include "soslab/rational.hpp"

namespace soslab {

/// Exponent vector of a monomial; entry i is the power of variable x_i.
using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

inline Exponents exponents_sum(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

/// Strict weak order: degree first, ties broken reverse-lexicographically
/// (within a degree, a < b iff the last position where they differ has a
/// larger exponent in a). This is the usual grevlex order with x0 largest.
struct GrevlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

/// Listing order for monomial bases: degree ascending, grevlex-descending
/// within a degree. monomial_basis() and the Newton-pruned bases both use it.
struct BasisOrderLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return GrevlexLess{}(b, a);
    }
};

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored; all exponent vectors have length nvars(). Immutable in
/// spirit: operations return new values.
class Polynomial {
  public:
    using TermMap = std::map<Exponents, Rational, GrevlexLess>;

    explicit Polynomial(int nvars) : nvars_(nvars) {
        if (nvars < 1) throw DimensionMismatch("Polynomial: nvars must be >= 1");
    }

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static Polynomial monomial(const Exponents& e, const Rational& c) {
        Polynomial p(static_cast<int>(e.size()));
        p.add_term(e, c);
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const int d = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != d) return false;
        return true;
    }

    Rational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Accumulates c * x^e, dropping the term if the sum cancels to zero.
    void add_term(const Exponents& e, const Rational& c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw DimensionMismatch("Polynomial::add_term: exponent length mismatch");
        for (int v : e)
            if (v < 0) throw Error("Polynomial::add_term: negative exponent");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        check_same_vars(o);
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        check_same_vars(o);
        Polynomial r(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) r.add_term(exponents_sum(ea, eb), ca * cb);
        return r;
    }

    Polynomial scaled(const Rational& c) const {
        Polynomial r(nvars_);
        if (c == 0) return r;
        for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
        return r;
    }

    /// Exact value at a rational point; point length must equal nvars().
    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw DimensionMismatch("Polynomial::evaluate: point length mismatch");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < nvars_; ++i)
                if (e[i] > 0) t *= rational_pow(point[i], e[i]);
            acc += t;
        }
        return acc;
    }

    double evaluate(const std::vector<double>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw DimensionMismatch("Polynomial::evaluate: point length mismatch");
        double acc = 0;
        for (const auto& [e, c] : terms_) {
            double t = to_double(c);
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// Largest absolute coefficient, as a double. 0 for the zero polynomial.
    double max_abs_coeff() const {
        double m = 0;
        for (const auto& [e, c] : terms_) m = std::max(m, std::abs(to_double(c)));
        return m;
    }

    /// Homogenization x0^d * p(x1/x0, ..., xn/x0) in nvars()+1 variables:
    /// variable 0 is new, old variable i becomes variable i+1.
    Polynomial homogenized() const {
        if (is_zero()) throw ZeroInput("homogenize: zero polynomial");
        const int d = degree();
        Polynomial r(nvars_ + 1);
        for (const auto& [e, c] : terms_) {
            Exponents ne(nvars_ + 1);
            ne[0] = d - total_degree(e);
            std::copy(e.begin(), e.end(), ne.begin() + 1);
            r.add_term(ne, c);
        }
        return r;
    }

    /// Substitutes x0 = 1 and drops the first variable (inverse of
    /// homogenized() on its image).
    Polynomial dehomogenized() const {
        if (nvars_ < 2) throw DimensionMismatch("dehomogenize: needs >= 2 variables");
        Polynomial r(nvars_ - 1);
        for (const auto& [e, c] : terms_) r.add_term(Exponents(e.begin() + 1, e.end()), c);
        return r;
    }

    std::vector<Exponents> support() const {
        std::vector<Exponents> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += rational_str(c);
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                out += "*x" + std::to_string(i);
                if (e[i] > 1) out += "^" + std::to_string(e[i]);
            }
        }
        return out;
    }

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  private:
    void check_same_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw DimensionMismatch("Polynomial: mixed variable counts");
    }

    int nvars_;
    TermMap terms_;
};

/// Polynomial with double coefficients; the numeric counterpart of Polynomial
/// used for solver output (extracted squares, certificates).
struct FloatPolynomial {
    int nvars = 0;
    std::map<Exponents, double, GrevlexLess> terms;

    double evaluate(const std::vector<double>& point) const {
        double acc = 0;
        for (const auto& [e, c] : terms) {
            double t = c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }
};

/// Ordered list of monomials: degrees ascending, grevlex-descending within a
/// degree (so the degree-2 bivariate basis reads x0^2, x0*x1, x1^2 and the
/// univariate basis up to degree 2 reads 1, x, x^2). The order is fixed and
/// deterministic; Gram matrix indexing depends on it.
struct MonomialBasis {
    int nvars = 0;
    int degree = 0;
    bool exact_degree = true;
    std::vector<Exponents> monomials;

    int size() const { return static_cast<int>(monomials.size()); }
};

namespace detail {
inline void enumerate_exact_degree(int nvars, int d, Exponents& cur, int pos,
                                   std::vector<Exponents>& out) {
    if (pos == nvars - 1) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (int k = d; k >= 0; --k) {
        cur[pos] = k;
        enumerate_exact_degree(nvars, d - k, cur, pos + 1, out);
    }
    cur[pos] = 0;
}
}  // namespace detail

/// All monomials of exact degree d (or of degree <= d if exact_degree is
/// false) in nvars variables.
inline MonomialBasis monomial_basis(int nvars, int d, bool exact_degree = true) {
    if (nvars < 1 || d < 0) throw DimensionMismatch("monomial_basis: invalid arguments");
    MonomialBasis b;
    b.nvars = nvars;
    b.degree = d;
    b.exact_degree = exact_degree;
    Exponents cur(nvars, 0);
    const int d0 = exact_degree ? d : 0;
    for (int deg = d0; deg <= d; ++deg) {
        std::vector<Exponents> block;
        detail::enumerate_exact_degree(nvars, deg, cur, 0, block);
        std::sort(block.begin(), block.end(), BasisOrderLess{});
        for (auto& e : block) b.monomials.push_back(std::move(e));
    }
    return b;
}

/// Evaluates every basis monomial at a point.
template <typename Scalar>
std::vector<Scalar> basis_values(const MonomialBasis& basis, const std::vector<Scalar>& point) {
    if (static_cast<int>(point.size()) != basis.nvars)
        throw DimensionMismatch("basis_values: point length mismatch");
    std::vector<Scalar> w;
    w.reserve(basis.monomials.size());
    for (const auto& e : basis.monomials) {
        Scalar t(1);
        for (int i = 0; i < basis.nvars; ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        w.push_back(t);
    }
    return w;
}

/// Named catalogue of the forms used throughout: the Motzkin form, the
/// Choi-Lam-Reznick form, and the univariate quartic 1 + x + 3x^2 - x^3 + x^4.
inline Polynomial builtin_form(const std::string& name) {
    if (name == "motzkin") {
        // x^2 y^4 + x^4 y^2 + z^6 - 3 x^2 y^2 z^2
        Polynomial m(3);
        m.add_term({2, 4, 0}, 1);
        m.add_term({4, 2, 0}, 1);
        m.add_term({0, 0, 6}, 1);
        m.add_term({2, 2, 2}, -3);
        return m;
    }
    if (name == "clr") {
        // x^4 y^2 + y^4 z^2 + z^4 x^2 - 3 x^2 y^2 z^2
        Polynomial s(3);
        s.add_term({4, 2, 0}, 1);
        s.add_term({0, 4, 2}, 1);
        s.add_term({2, 0, 4}, 1);
        s.add_term({2, 2, 2}, -3);
        return s;
    }
    if (name == "quartic-demo") {
        Polynomial p(1);
        p.add_term({0}, 1);
        p.add_term({1}, 1);
        p.add_term({2}, 3);
        p.add_term({3}, -1);
        p.add_term({4}, 1);
        return p;
    }
    throw UnknownForm("builtin_form: unknown name '" + name + "'");
}

inline std::vector<std::string> builtin_form_names() { return {"motzkin", "clr", "quartic-demo"}; }

}  // namespace soslab
