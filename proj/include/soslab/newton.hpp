#pragma once

// Newton polytopes with an exact rational membership oracle, half-polytope
// lattice point enumeration (the candidate supports of squares), and the
// vertex-based necessary conditions for being a sum of squares.

#include <algorithm>
#include <vector>

#include "soslab/exact.hpp"
#include "soslab/poly.hpp"

namespace soslab {

/// Convex hull of a set of exponent vectors, stored by its extreme points.
/// Membership is decided exactly over the rationals, also for degenerate
/// (lower-dimensional) hulls: the LP works in the affine hull automatically.
class LatticePolytope {
  public:
    LatticePolytope(int dim, std::vector<Exponents> vertices)
        : dim_(dim), vertices_(std::move(vertices)) {}

    int dim() const { return dim_; }
    const std::vector<Exponents>& vertices() const { return vertices_; }

    /// Exact test for q in conv(vertices): feasibility of
    /// {lambda >= 0, sum lambda_i v_i = q, sum lambda_i = 1}.
    bool contains(const RatVector& q) const {
        if (static_cast<int>(q.size()) != dim_)
            throw DimensionMismatch("LatticePolytope::contains: dimension mismatch");
        if (vertices_.empty()) return false;
        RatMatrix a = rat_zero(dim_ + 1, vertices_.size());
        RatVector b(dim_ + 1);
        for (std::size_t j = 0; j < vertices_.size(); ++j) {
            for (int i = 0; i < dim_; ++i) a[i][j] = vertices_[j][i];
            a[dim_][j] = 1;
        }
        for (int i = 0; i < dim_; ++i) b[i] = q[i];
        b[dim_] = 1;
        return lp_feasible_nonneg(a, b);
    }

    bool contains(const Exponents& q) const {
        RatVector r(q.begin(), q.end());
        return contains(r);
    }

    /// Max total degree over the vertices (= degree of the polynomial the
    /// polytope came from).
    int max_degree() const {
        int d = 0;
        for (const auto& v : vertices_) d = std::max(d, total_degree(v));
        return d;
    }

  private:
    int dim_;
    std::vector<Exponents> vertices_;
};

/// Exact Newton polytope: a support point is kept iff it is not in the convex
/// hull of the other support points.
inline LatticePolytope newton_polytope(const Polynomial& p) {
    if (p.is_zero()) throw ZeroInput("newton_polytope: zero polynomial");
    const std::vector<Exponents> support = p.support();
    std::vector<Exponents> vertices;
    for (std::size_t k = 0; k < support.size(); ++k) {
        std::vector<Exponents> others;
        for (std::size_t j = 0; j < support.size(); ++j)
            if (j != k) others.push_back(support[j]);
        LatticePolytope rest(p.nvars(), std::move(others));
        RatVector q(support[k].begin(), support[k].end());
        if (support.size() == 1 || !rest.contains(q)) vertices.push_back(support[k]);
    }
    return LatticePolytope(p.nvars(), std::move(vertices));
}

/// All nonnegative integer q with 2q inside the polytope, i.e. the lattice
/// points of (1/2) N_p. Any square appearing in an SOS decomposition of p has
/// its support here. Empty when some vertex has an odd coordinate sum (then p
/// is not a sum of squares anyway).
inline std::vector<Exponents> half_lattice_points(const LatticePolytope& np) {
    const int deg = np.max_degree();
    if (deg % 2 != 0) throw NotEvenDegree("half_lattice_points: odd total degree");
    for (const auto& v : np.vertices())
        if (total_degree(v) % 2 != 0) return {};

    const int dim = np.dim();
    Exponents box(dim, 0);
    for (const auto& v : np.vertices())
        for (int i = 0; i < dim; ++i) box[i] = std::max(box[i], v[i] / 2);

    std::vector<Exponents> result;
    Exponents q(dim, 0);
    while (true) {
        Exponents twice(dim);
        for (int i = 0; i < dim; ++i) twice[i] = 2 * q[i];
        if (np.contains(twice)) result.push_back(q);
        int pos = dim - 1;
        while (pos >= 0 && q[pos] == box[pos]) q[pos--] = 0;
        if (pos < 0) break;
        ++q[pos];
    }
    std::sort(result.begin(), result.end(), BasisOrderLess{});
    return result;
}

struct NecessaryCheck {
    bool pass = true;
    std::string reason;  // empty when pass
};

/// Cheap pre-rejection before any SDP: an SOS polynomial has even degree and
/// every Newton polytope vertex has even coordinates and positive coefficient.
inline NecessaryCheck sos_necessary_check(const Polynomial& p) {
    if (p.is_zero()) return {true, ""};
    if (p.degree() % 2 != 0) return {false, "odd total degree"};
    const LatticePolytope np = newton_polytope(p);
    for (const auto& v : np.vertices()) {
        for (int e : v)
            if (e % 2 != 0) return {false, "vertex with odd exponent"};
        if (p.coeff(v) < 0) return {false, "negative coefficient on a vertex monomial"};
    }
    return {true, ""};
}

}  // namespace soslab
