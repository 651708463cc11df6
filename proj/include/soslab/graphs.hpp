#pragma once

// Specification-pattern graphs and PSD matrix completion. A partially
// specified symmetric matrix (all diagonal entries given) corresponds to a
// graph G on the row indices with an edge wherever an off-diagonal entry is
// given. Condition (*) -- every fully specified principal minor nonnegative --
// is sufficient for PSD completability exactly when G is chordal, and chordal
// completions achieve rank at most the clique number.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "soslab/errors.hpp"
#include "soslab/numerics.hpp"
#include "soslab/rng.hpp"
#include "soslab/sdp.hpp"
#include "soslab/sos.hpp"

namespace soslab {

class SpecificationGraph {
  public:
    SpecificationGraph(int n, const std::vector<std::pair<int, int>>& edges)
        : n_(n), adj_(n, std::vector<bool>(n, false)) {
        if (n < 1) throw DimensionMismatch("SpecificationGraph: need n >= 1");
        for (auto [i, j] : edges) {
            if (i == j) throw Error("SpecificationGraph: loops are not allowed");
            if (i < 0 || j < 0 || i >= n || j >= n)
                throw DimensionMismatch("SpecificationGraph: vertex out of range");
            adj_[i][j] = adj_[j][i] = true;
        }
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (adj_[i][j]) edges_.emplace_back(i, j);
    }

    static SpecificationGraph cycle(int n) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
        return SpecificationGraph(n, e);
    }

    static SpecificationGraph complete(int n) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
        return SpecificationGraph(n, e);
    }

    static SpecificationGraph path(int n) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
        return SpecificationGraph(n, e);
    }

    int size() const { return n_; }
    bool has_edge(int i, int j) const { return i != j && adj_[i][j]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    std::vector<int> neighbors(int v) const {
        std::vector<int> nb;
        for (int u = 0; u < n_; ++u)
            if (adj_[v][u]) nb.push_back(u);
        return nb;
    }

  private:
    int n_;
    std::vector<std::vector<bool>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

struct ChordalityReport {
    bool chordal = false;
    std::vector<int> peo;            // perfect elimination ordering when chordal
    std::vector<int> witness_cycle;  // an induced cycle of length >= 4 otherwise
};

/// Shortest induced cycle of length >= 4, or nullopt for chordal graphs.
/// For each vertex y and nonadjacent pair x, z of its neighbors, a shortest
/// z-x path avoiding N[y] closes a hole through y; shortest paths are induced,
/// so the minimum over all such cycles is the smallest hole.
inline std::optional<std::vector<int>> smallest_chordless_cycle(const SpecificationGraph& g) {
    const int n = g.size();
    std::optional<std::vector<int>> best;
    for (int y = 0; y < n; ++y) {
        const auto nb = g.neighbors(y);
        for (std::size_t a = 0; a < nb.size(); ++a) {
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                const int x = nb[a], z = nb[b];
                if (g.has_edge(x, z)) continue;
                // BFS from z to x, interior vertices outside N[y]
                std::vector<int> prev(n, -2);
                std::queue<int> q;
                q.push(z);
                prev[z] = -1;
                while (!q.empty() && prev[x] == -2) {
                    const int u = q.front();
                    q.pop();
                    for (int w = 0; w < n; ++w) {
                        if (!g.has_edge(u, w) || prev[w] != -2) continue;
                        if (w != x && (w == y || g.has_edge(y, w))) continue;
                        prev[w] = u;
                        q.push(w);
                    }
                }
                if (prev[x] == -2) continue;
                std::vector<int> cycle{y};
                for (int u = x; u != -1; u = prev[u]) cycle.push_back(u);
                if (!best || cycle.size() < best->size()) best = cycle;
            }
        }
    }
    return best;
}

/// Maximum cardinality search plus elimination-order verification. Ties in
/// MCS break toward the lowest vertex index, so results are deterministic.
inline ChordalityReport is_chordal(const SpecificationGraph& g) {
    const int n = g.size();
    std::vector<int> weight(n, 0), order;
    std::vector<bool> numbered(n, false);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!numbered[v] && (best == -1 || weight[v] > weight[best])) best = v;
        numbered[best] = true;
        order.push_back(best);
        for (int u : g.neighbors(best))
            if (!numbered[u]) ++weight[u];
    }
    // MCS visit order reversed is the elimination order candidate.
    ChordalityReport rep;
    rep.peo.assign(order.rbegin(), order.rend());
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[rep.peo[k]] = k;

    for (int k = 0; k < n; ++k) {
        const int v = rep.peo[k];
        std::vector<int> later;
        for (int u : g.neighbors(v))
            if (pos[u] > k) later.push_back(u);
        if (later.empty()) continue;
        int parent = later[0];
        for (int u : later)
            if (pos[u] < pos[parent]) parent = u;
        for (int u : later)
            if (u != parent && !g.has_edge(parent, u)) {
                rep.chordal = false;
                const auto hole = smallest_chordless_cycle(g);
                if (hole) rep.witness_cycle = *hole;
                rep.peo.clear();
                return rep;
            }
    }
    rep.chordal = true;
    return rep;
}

/// Maximal cliques of a chordal graph via the elimination ordering; at most n
/// of them. Throws NotChordal on other graphs.
inline std::vector<std::vector<int>> maximal_cliques_chordal(const SpecificationGraph& g) {
    const ChordalityReport rep = is_chordal(g);
    if (!rep.chordal) throw NotChordal("maximal_cliques_chordal: graph is not chordal");
    const int n = g.size();
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[rep.peo[k]] = k;
    std::vector<std::vector<int>> candidates;
    for (int k = 0; k < n; ++k) {
        const int v = rep.peo[k];
        std::vector<int> c{v};
        for (int u : g.neighbors(v))
            if (pos[u] > k) c.push_back(u);
        std::sort(c.begin(), c.end());
        candidates.push_back(std::move(c));
    }
    std::vector<std::vector<int>> cliques;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < candidates.size() && maximal; ++j) {
            if (i == j || candidates[j].size() < candidates[i].size()) continue;
            if (candidates[j] == candidates[i] && j < i) maximal = false;  // dedupe
            else if (candidates[j] != candidates[i] &&
                     std::includes(candidates[j].begin(), candidates[j].end(),
                                   candidates[i].begin(), candidates[i].end()))
                maximal = false;
        }
        if (maximal) cliques.push_back(candidates[i]);
    }
    return cliques;
}

/// Maximal cliques of an arbitrary graph (Bron-Kerbosch with pivoting; the
/// graphs here are tiny).
inline std::vector<std::vector<int>> maximal_cliques(const SpecificationGraph& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> r, p, x;
    for (int v = 0; v < g.size(); ++v) p.push_back(v);

    auto bk = [&](auto&& self, std::vector<int> rr, std::vector<int> pp,
                  std::vector<int> xx) -> void {
        if (pp.empty() && xx.empty()) {
            out.push_back(rr);
            return;
        }
        int pivot = -1, best = -1;
        for (int u : pp) {
            int cnt = 0;
            for (int w : pp)
                if (g.has_edge(u, w)) ++cnt;
            if (cnt > best) {
                best = cnt;
                pivot = u;
            }
        }
        std::vector<int> ext;
        for (int v : pp)
            if (pivot == -1 || !g.has_edge(pivot, v)) ext.push_back(v);
        for (int v : ext) {
            std::vector<int> r2 = rr, p2, x2;
            r2.push_back(v);
            for (int w : pp)
                if (g.has_edge(v, w)) p2.push_back(w);
            for (int w : xx)
                if (g.has_edge(v, w)) x2.push_back(w);
            std::sort(r2.begin(), r2.end());
            self(self, r2, p2, x2);
            pp.erase(std::find(pp.begin(), pp.end(), v));
            xx.push_back(v);
        }
    };
    bk(bk, r, p, x);
    std::sort(out.begin(), out.end());
    return out;
}

inline int clique_number(const SpecificationGraph& g) {
    std::size_t w = 0;
    for (const auto& c : maximal_cliques(g)) w = std::max(w, c.size());
    return static_cast<int>(w);
}

/// Symmetric matrix with unspecified entries; the diagonal must be fully
/// specified before completion is attempted.
class PartialSymmetricMatrix {
  public:
    explicit PartialSymmetricMatrix(int n) : n_(n) {
        if (n < 1) throw DimensionMismatch("PartialSymmetricMatrix: need n >= 1");
    }

    int size() const { return n_; }

    void set(int i, int j, double v) {
        check_range(i, j);
        specified_[key(i, j)] = v;
    }

    std::optional<double> get(int i, int j) const {
        check_range(i, j);
        auto it = specified_.find(key(i, j));
        if (it == specified_.end()) return std::nullopt;
        return it->second;
    }

    bool diagonal_specified() const {
        for (int i = 0; i < n_; ++i)
            if (!specified_.count({i, i})) return false;
        return true;
    }

    SpecificationGraph pattern() const {
        std::vector<std::pair<int, int>> edges;
        for (const auto& [ij, v] : specified_)
            if (ij.first != ij.second) edges.push_back(ij);
        return SpecificationGraph(n_, edges);
    }

    const std::map<std::pair<int, int>, double>& entries() const { return specified_; }

  private:
    static std::pair<int, int> key(int i, int j) { return {std::min(i, j), std::max(i, j)}; }
    void check_range(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_)
            throw DimensionMismatch("PartialSymmetricMatrix: index out of range");
    }

    int n_;
    std::map<std::pair<int, int>, double> specified_;
};

struct MinorCheck {
    bool pass = true;
    std::vector<int> violating_clique;
    double lambda_min = 0;
};

/// Condition (*): the fully specified principal submatrix on every maximal
/// clique must be PSD (which covers all fully specified principal minors).
inline MinorCheck check_specified_minors(const PartialSymmetricMatrix& m, double tol = 1e-8) {
    if (!m.diagonal_specified()) throw Error("check_specified_minors: diagonal not specified");
    for (const auto& clique : maximal_cliques(m.pattern())) {
        const int k = static_cast<int>(clique.size());
        SymmetricMatrix sub(k);
        for (int a = 0; a < k; ++a)
            for (int b = a; b < k; ++b) sub.at(a, b) = *m.get(clique[a], clique[b]);
        const double lmin = eigendecompose(sub).eigenvalues.back();
        if (lmin < -tol * std::max(1.0, sub.max_abs())) return {false, clique, lmin};
    }
    return {};
}

enum class CompletionStatus { Completed, NoCompletion, MinorViolation, Indeterminate };
enum class CompletionStrategy { Chordal, Sdp };

struct CompletionResult {
    CompletionStatus status = CompletionStatus::Indeterminate;
    std::optional<SymmetricMatrix> matrix;
    int rank = 0;
    std::vector<int> violating_clique;
    std::vector<double> certificate;  // Farkas y over the completion constraints
    double certificate_psd_gap = 0;
    std::string note;
};

namespace detail {

// Gram vectors of a PSD block, one row per index; rank-truncated at the
// null-space tolerance.
inline std::vector<std::vector<double>> factor_psd_block(const SymmetricMatrix& block,
                                                         double null_tol = 1e-9) {
    const auto ed = eigendecompose(block);
    const double lmax = std::max(ed.eigenvalues.front(), 0.0);
    const double cut = null_tol * std::max(lmax, 1.0);
    std::vector<int> keep;
    for (std::size_t k = 0; k < ed.eigenvalues.size(); ++k)
        if (ed.eigenvalues[k] > cut) keep.push_back(static_cast<int>(k));
    const int n = block.size();
    std::vector<std::vector<double>> rows(n, std::vector<double>(keep.size(), 0.0));
    for (std::size_t t = 0; t < keep.size(); ++t) {
        const double s = std::sqrt(ed.eigenvalues[keep[t]]);
        for (int i = 0; i < n; ++i) rows[i][t] = s * ed.eigenvectors[keep[t]][i];
    }
    return rows;
}

inline double vdot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Gram-Schmidt completion: extends `ons` (orthonormal) to cover extra
// directions from the standard basis of R^dim; returns `count` new vectors.
inline std::vector<std::vector<double>> complete_orthonormal(
    const std::vector<std::vector<double>>& ons, int dim, int count) {
    std::vector<std::vector<double>> base = ons, fresh;
    for (int seed = 0; seed < dim && static_cast<int>(fresh.size()) < count; ++seed) {
        std::vector<double> v(dim, 0.0);
        v[seed] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : base) {
                const double d = vdot(v, q);
                for (int i = 0; i < dim; ++i) v[i] -= d * q[i];
            }
        const double nrm = std::sqrt(vdot(v, v));
        if (nrm < 1e-8) continue;
        for (double& x : v) x /= nrm;
        base.push_back(v);
        fresh.push_back(v);
    }
    return fresh;
}

}  // namespace detail

/// PSD completion of a chordal pattern by merging the maximal cliques along a
/// clique tree. Each merge factors the incoming clique block into Gram
/// vectors and maps them isometrically so the overlap vectors coincide with
/// the ones already placed; the union then lives in max(r1, r2) dimensions,
/// which keeps the final rank at most the largest clique rank (<= omega(G)).
inline CompletionResult complete_psd_chordal(const PartialSymmetricMatrix& m, double tol = 1e-8) {
    if (!m.diagonal_specified()) throw Error("complete_psd: diagonal not specified");
    const SpecificationGraph g = m.pattern();
    const ChordalityReport rep = is_chordal(g);
    if (!rep.chordal) throw NotChordal("complete_psd: chordal strategy on a non-chordal pattern");
    const MinorCheck mc = check_specified_minors(m, tol);
    if (!mc.pass) {
        CompletionResult r;
        r.status = CompletionStatus::MinorViolation;
        r.violating_clique = mc.violating_clique;
        r.note = "specified principal minor has negative eigenvalue " +
                 std::to_string(mc.lambda_min);
        return r;
    }

    const auto cliques = maximal_cliques_chordal(g);
    const int nc = static_cast<int>(cliques.size());
    const int n = m.size();

    // Clique tree: maximum-weight spanning tree on intersection sizes (Prim;
    // zero-weight links bridge disconnected components).
    std::vector<bool> in_tree(nc, false);
    std::vector<int> tree_parent(nc, -1);
    std::vector<int> merge_order;
    in_tree[0] = true;
    merge_order.push_back(0);
    for (int step = 1; step < nc; ++step) {
        int best_c = -1, best_p = -1, best_w = -1;
        for (int c = 0; c < nc; ++c) {
            if (in_tree[c]) continue;
            for (int p = 0; p < nc; ++p) {
                if (!in_tree[p]) continue;
                std::vector<int> inter;
                std::set_intersection(cliques[c].begin(), cliques[c].end(), cliques[p].begin(),
                                      cliques[p].end(), std::back_inserter(inter));
                const int w = static_cast<int>(inter.size());
                if (w > best_w) {
                    best_w = w;
                    best_c = c;
                    best_p = p;
                }
            }
        }
        in_tree[best_c] = true;
        tree_parent[best_c] = best_p;
        merge_order.push_back(best_c);
    }

    // Blob state: Gram vectors per placed vertex.
    std::vector<std::vector<double>> vec(n);
    std::vector<bool> placed(n, false);
    int r_dim = 0;

    auto clique_block = [&](const std::vector<int>& k) {
        SymmetricMatrix block(static_cast<int>(k.size()));
        for (std::size_t a = 0; a < k.size(); ++a)
            for (std::size_t b = a; b < k.size(); ++b) block.at(a, b) = *m.get(k[a], k[b]);
        return block;
    };

    for (int ci : merge_order) {
        const auto& k = cliques[ci];
        auto wrows = detail::factor_psd_block(clique_block(k));
        const int rb = wrows.empty() ? 0 : static_cast<int>(wrows[0].size());
        std::vector<int> s_verts;
        for (int v : k)
            if (placed[v]) s_verts.push_back(v);

        const int r_new = std::max(r_dim, rb);
        if (r_new > r_dim) {
            for (int v = 0; v < n; ++v)
                if (placed[v]) vec[v].resize(r_new, 0.0);
            r_dim = r_new;
        }

        // Orthonormal basis q_t of span{w_s : s in overlap} with matched
        // images p_t built from the already-placed vectors.
        std::vector<std::vector<double>> qs, ps;
        if (!s_verts.empty()) {
            const int sc = static_cast<int>(s_verts.size());
            SymmetricMatrix gw(sc);
            for (int a = 0; a < sc; ++a)
                for (int b = a; b < sc; ++b) {
                    auto ia = std::find(k.begin(), k.end(), s_verts[a]) - k.begin();
                    auto ib = std::find(k.begin(), k.end(), s_verts[b]) - k.begin();
                    gw.at(a, b) = detail::vdot(wrows[ia], wrows[ib]);
                }
            const auto ed = eigendecompose(gw);
            const double cut = 1e-9 * std::max(ed.eigenvalues.front(), 1.0);
            for (std::size_t t = 0; t < ed.eigenvalues.size(); ++t) {
                if (ed.eigenvalues[t] <= cut) continue;
                const double inv = 1.0 / std::sqrt(ed.eigenvalues[t]);
                std::vector<double> q(rb, 0.0), p(r_dim, 0.0);
                for (int a = 0; a < sc; ++a) {
                    const double coef = inv * ed.eigenvectors[t][a];
                    auto ia = std::find(k.begin(), k.end(), s_verts[a]) - k.begin();
                    for (int x = 0; x < rb; ++x) q[x] += coef * wrows[ia][x];
                    for (int x = 0; x < r_dim; ++x) p[x] += coef * vec[s_verts[a]][x];
                }
                // p is orthonormal up to accumulated drift; tidy it up
                for (const auto& prev : ps) {
                    const double d = detail::vdot(p, prev);
                    for (int x = 0; x < r_dim; ++x) p[x] -= d * prev[x];
                }
                const double nrm = std::sqrt(detail::vdot(p, p));
                if (nrm > 1e-8)
                    for (double& x : p) x /= nrm;
                qs.push_back(std::move(q));
                ps.push_back(std::move(p));
            }
        }
        const int c = static_cast<int>(qs.size());
        const auto q_extra = detail::complete_orthonormal(qs, rb, rb - c);
        const auto p_extra = detail::complete_orthonormal(ps, r_dim, rb - c);
        for (std::size_t t = 0; t < q_extra.size(); ++t) {
            qs.push_back(q_extra[t]);
            ps.push_back(p_extra[t]);
        }
        // Phi = sum_t p_t q_t^T, an isometry R^rb -> R^r_dim
        for (std::size_t a = 0; a < k.size(); ++a) {
            const int v = k[a];
            if (placed[v]) continue;
            std::vector<double> img(r_dim, 0.0);
            for (std::size_t t = 0; t < qs.size(); ++t) {
                const double d = detail::vdot(qs[t], wrows[a]);
                for (int x = 0; x < r_dim; ++x) img[x] += d * ps[t][x];
            }
            vec[v] = std::move(img);
            placed[v] = true;
        }
    }

    SymmetricMatrix full(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) full.at(i, j) = detail::vdot(vec[i], vec[j]);
    // Specified entries are reproduced up to factorization drift; restore them
    // exactly.
    for (const auto& [ij, v] : m.entries()) full.at(ij.first, ij.second) = v;

    CompletionResult result;
    result.status = CompletionStatus::Completed;
    result.rank = numerical_rank(full).rank;
    result.matrix = std::move(full);
    return result;
}

/// Completion constraints as an SDP (any pattern): fix every specified entry,
/// leave the rest free.
inline SdpProblem completion_sdp(const PartialSymmetricMatrix& m) {
    if (!m.diagonal_specified()) throw Error("complete_psd: diagonal not specified");
    SdpProblem prob = SdpProblem::feasibility(m.size());
    for (const auto& [ij, v] : m.entries()) {
        SymmetricMatrix a(m.size());
        a.at(ij.first, ij.second) = ij.first == ij.second ? 1.0 : 0.5;
        prob.add_constraint(std::move(a), v);
    }
    return prob;
}

inline CompletionResult complete_psd_sdp(const PartialSymmetricMatrix& m,
                                         const SdpConfig& cfg = {}) {
    const SdpOutcome out = solve(completion_sdp(m), cfg);
    CompletionResult result;
    if (out.status == SdpStatus::Feasible || out.status == SdpStatus::Optimal) {
        SymmetricMatrix full = out.x;
        for (const auto& [ij, v] : m.entries()) full.at(ij.first, ij.second) = v;
        result.status = CompletionStatus::Completed;
        result.rank = numerical_rank(full).rank;
        result.matrix = std::move(full);
        return result;
    }
    if (out.status == SdpStatus::Infeasible) {
        result.status = CompletionStatus::NoCompletion;
        result.certificate = out.y;
        result.certificate_psd_gap = out.certificate_psd_gap;
        result.note = out.note;
        return result;
    }
    result.status = CompletionStatus::Indeterminate;
    result.note = out.note;
    return result;
}

inline CompletionResult complete_psd(const PartialSymmetricMatrix& m,
                                     CompletionStrategy strategy, double tol = 1e-8) {
    return strategy == CompletionStrategy::Chordal ? complete_psd_chordal(m, tol)
                                                   : complete_psd_sdp(m);
}

/// SOS certification of a quadratic form modulo the edge ideal I(G): the Gram
/// matrix is pinned on the diagonal and the edges of G, free elsewhere, so
/// membership in Sigma(G) is exactly PSD completability of that partial Gram.
inline CertifyResult certify_sos_mod_graph(const Polynomial& q, const SpecificationGraph& g,
                                           const CertifyOptions& opts = {}) {
    if (q.nvars() != g.size())
        throw DimensionMismatch("certify_sos_mod_graph: variable count != vertex count");
    for (const auto& [e, c] : q.terms())
        if (total_degree(e) != 2)
            throw Error("certify_sos_mod_graph: input must be a quadratic form");

    const int n = g.size();
    PartialSymmetricMatrix gram(n);
    for (int i = 0; i < n; ++i) {
        Exponents sq(n, 0);
        sq[i] = 2;
        gram.set(i, i, to_double(q.coeff(sq)));
    }
    for (auto [i, j] : g.edges()) {
        Exponents e(n, 0);
        e[i] = e[j] = 1;
        gram.set(i, j, 0.5 * to_double(q.coeff(e)));
    }
    // one monomial per specified entry, in the order completion_sdp emits its
    // constraints (the entry map's (i,j) order)
    std::vector<Exponents> constraint_monomials;
    for (const auto& [ij, v] : gram.entries()) {
        Exponents e(n, 0);
        if (ij.first == ij.second)
            e[ij.first] = 2;
        else
            e[ij.first] = e[ij.second] = 1;
        constraint_monomials.push_back(e);
    }
    // terms on non-edges are zero modulo I(G); reject them as data errors
    for (const auto& [e, c] : q.terms()) {
        int vi = -1, vj = -1;
        for (int i = 0; i < n; ++i)
            if (e[i] == 1) (vi < 0 ? vi : vj) = i;
        if (vi >= 0 && vj >= 0 && !g.has_edge(vi, vj))
            throw Error("certify_sos_mod_graph: coefficient on a non-edge product");
    }

    const SdpOutcome out = solve(completion_sdp(gram), opts.sdp);
    CertifyResult result;
    const MonomialBasis linear = monomial_basis(n, 1, true);
    if (out.status == SdpStatus::Feasible || out.status == SdpStatus::Optimal) {
        GramCertificate cert;
        cert.basis = linear;
        cert.gram = out.x;
        cert.squares = detail::squares_from_gram(linear, out.x);
        double res = 0;  // reconstruction error on the specified coordinates only
        for (const auto& [ij, v] : gram.entries()) res = std::max(res, std::abs(out.x.at(ij.first, ij.second) - v));
        cert.residual = res;
        result.status = CertifyStatus::Sos;
        result.certificate = std::move(cert);
        return result;
    }
    if (out.status == SdpStatus::Infeasible) {
        NotSosCertificate cert;
        cert.basis = linear;
        cert.product_monomials = constraint_monomials;
        cert.has_functional = true;
        SymmetricMatrix qm(n);
        double lq = 0;
        for (std::size_t k = 0; k < constraint_monomials.size(); ++k) {
            const auto& e = constraint_monomials[k];
            int vi = -1, vj = -1;
            for (int i = 0; i < n; ++i) {
                if (e[i] == 2) vi = vj = i;
                if (e[i] == 1) (vi < 0 ? vi : vj) = i;
            }
            // ell(x_i x_j) = -y_k / 2 on edges so that Q_ell equals the Farkas
            // matrix -sum y_k A_k, which is PSD; then ell(q) = -b.y = -1
            const double v = vi == vj ? -out.y[k] : -0.5 * out.y[k];
            cert.values.push_back(v);
            lq += v * to_double(q.coeff(constraint_monomials[k]));
            qm.at(vi, vj) = v;
        }
        cert.q_matrix = qm;
        cert.value_on_p = lq;
        cert.delta = -lq;
        cert.q_lambda_min = eigendecompose(qm).eigenvalues.back();
        result.status = CertifyStatus::NotSos;
        result.refutation = std::move(cert);
        return result;
    }
    result.status = CertifyStatus::Indeterminate;
    result.note = out.note;
    return result;
}

/// Empirical Gram dimension: over seeded completable instances (projections
/// of random PSD matrices), the largest minimum completion rank found. The
/// per-instance rank probe minimizes <R, X> for a few random positive definite
/// R (extreme points of the completion body have low rank) and, on chordal
/// patterns, also takes the clique-merge completion.
inline int gram_dimension_experiment(const SpecificationGraph& g, int trials,
                                     std::uint64_t seed) {
    const int n = g.size();
    const bool chordal = is_chordal(g).chordal;
    int result = 0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng(seed, 1000 + t);
        std::vector<std::vector<double>> b(n, std::vector<double>(n));
        for (auto& row : b)
            for (double& x : row) x = rng.normal();
        SymmetricMatrix m0(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m0.at(i, j) = detail::vdot(b[i], b[j]);
        PartialSymmetricMatrix inst(n);
        for (int i = 0; i < n; ++i) inst.set(i, i, m0.at(i, i));
        for (auto [i, j] : g.edges()) inst.set(i, j, m0.at(i, j));

        int best = n + 1;
        if (chordal) {
            const auto r = complete_psd_chordal(inst);
            if (r.status == CompletionStatus::Completed) best = std::min(best, r.rank);
        }
        SdpProblem prob = completion_sdp(inst);
        for (int probe = 0; probe < 3; ++probe) {
            std::vector<std::vector<double>> c(n, std::vector<double>(n));
            for (auto& row : c)
                for (double& x : row) x = rng.normal();
            SymmetricMatrix obj(n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    obj.at(i, j) = detail::vdot(c[i], c[j]) + (i == j ? 0.05 : 0.0);
            SdpProblem pm = prob;
            pm.mode = SdpMode::Minimize;
            pm.c = obj;
            const SdpOutcome out = solve(pm);
            if (out.status == SdpStatus::Optimal) best = std::min(best, numerical_rank(out.x).rank);
        }
        result = std::max(result, best == n + 1 ? 0 : best);
    }
    return result;
}

}  // namespace soslab
