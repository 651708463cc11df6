#pragma once

// JSON readers/writers for the file formats the CLI speaks: polynomials with
// exact rational coefficients, specification graphs, partially specified
// matrices, SDP problems and outcomes, certificates, completions and traces.

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

#include "soslab/errors.hpp"
#include "soslab/graphs.hpp"
#include "soslab/moments.hpp"
#include "soslab/numerics.hpp"
#include "soslab/poly.hpp"
#include "soslab/sdp.hpp"
#include "soslab/sos.hpp"
#include "soslab/veronese.hpp"

namespace soslab {

using Json = nlohmann::json;

namespace jsonio {

inline Json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();  // arbitrary precision falls back to a decimal string
}

inline Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw Error("expected integer or integer string");
}

inline Json rational_to_json(const Rational& q) {
    return Json{{"num", int_to_json(numerator_of(q))}, {"den", int_to_json(denominator_of(q))}};
}

}  // namespace jsonio

inline Json to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t = jsonio::rational_to_json(c);
        t["exps"] = e;
        terms.push_back(std::move(t));
    }
    return Json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

inline Polynomial polynomial_from_json(const Json& j) {
    if (!j.contains("nvars") || !j.contains("terms"))
        throw Error("polynomial JSON needs 'nvars' and 'terms'");
    Polynomial p(j.at("nvars").get<int>());
    for (const auto& t : j.at("terms")) {
        const Int num = jsonio::int_from_json(t.at("num"));
        const Int den = jsonio::int_from_json(t.at("den"));
        if (den <= 0) throw Error("polynomial JSON: 'den' must be positive");
        p.add_term(t.at("exps").get<Exponents>(), Rational(num, den));
    }
    return p;
}

inline Json to_json(const FloatPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms) terms.push_back(Json{{"exps", e}, {"coeff", c}});
    return Json{{"nvars", p.nvars}, {"terms", std::move(terms)}};
}

inline Json to_json(const SymmetricMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline SymmetricMatrix symmetric_from_json(const Json& j) {
    const int n = static_cast<int>(j.size());
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) m.at(i, k) = j.at(i).at(k).get<double>();
    return m;
}

inline Json to_json(const SpecificationGraph& g) {
    Json edges = Json::array();
    for (auto [i, j] : g.edges()) edges.push_back(Json::array({i, j}));
    return Json{{"n", g.size()}, {"edges", std::move(edges)}};
}

inline SpecificationGraph graph_from_json(const Json& j) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return SpecificationGraph(j.at("n").get<int>(), edges);
}

inline Json to_json(const PartialSymmetricMatrix& m) {
    Json entries = Json::array();
    for (const auto& [ij, v] : m.entries())
        entries.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"v", v}});
    return Json{{"n", m.size()}, {"entries", std::move(entries)}};
}

inline PartialSymmetricMatrix partial_matrix_from_json(const Json& j) {
    PartialSymmetricMatrix m(j.at("n").get<int>());
    for (const auto& e : j.at("entries"))
        m.set(e.at("i").get<int>(), e.at("j").get<int>(), e.at("v").get<double>());
    return m;
}

inline Json to_json(const SdpProblem& p) {
    Json constraints = Json::array();
    for (std::size_t i = 0; i < p.a.size(); ++i)
        constraints.push_back(Json{{"a", to_json(p.a[i])}, {"b", p.b[i]}});
    return Json{{"n", p.n},
                {"mode", p.mode == SdpMode::Minimize ? "minimize" : "feasibility"},
                {"c", to_json(p.c)},
                {"constraints", std::move(constraints)}};
}

inline SdpProblem sdp_problem_from_json(const Json& j) {
    SdpProblem p;
    p.n = j.at("n").get<int>();
    const std::string mode = j.value("mode", std::string("minimize"));
    p.mode = mode == "feasibility" ? SdpMode::Feasibility : SdpMode::Minimize;
    p.c = j.contains("c") ? symmetric_from_json(j.at("c")) : SymmetricMatrix(p.n);
    for (const auto& c : j.at("constraints"))
        p.add_constraint(symmetric_from_json(c.at("a")), c.at("b").get<double>());
    p.validate();
    return p;
}

inline Json to_json(const SdpOutcome& o) {
    Json j{{"status", to_string(o.status)},
           {"iterations", o.iterations},
           {"objective", o.objective},
           {"dual_objective", o.dual_objective},
           {"residuals",
            Json{{"primal", o.primal_residual},
                 {"dual", o.dual_residual},
                 {"x_lambda_min", o.x_lambda_min}}},
           {"y", o.y}};
    if (o.status == SdpStatus::Optimal || o.status == SdpStatus::Feasible ||
        o.status == SdpStatus::MaxIterations)
        j["x"] = to_json(o.x);
    if (o.status == SdpStatus::Infeasible)
        j["certificate"] = Json{{"y", o.y},
                                {"b_dot_y", o.certificate_value},
                                {"lambda_max_sum_yA", o.certificate_psd_gap}};
    if (!o.note.empty()) j["note"] = o.note;
    return j;
}

inline Json to_json(const MonomialBasis& b) {
    Json mons = Json::array();
    for (const auto& e : b.monomials) mons.push_back(e);
    return Json{{"nvars", b.nvars},
                {"degree", b.degree},
                {"exact_degree", b.exact_degree},
                {"monomials", std::move(mons)}};
}

inline Json to_json(const GramCertificate& c) {
    Json squares = Json::array();
    for (const auto& s : c.squares) squares.push_back(to_json(s));
    return Json{{"basis", to_json(c.basis)},
                {"gram", to_json(c.gram)},
                {"squares", std::move(squares)},
                {"residual", c.residual}};
}

inline Json to_json(const NotSosCertificate& c) {
    Json j;
    if (c.has_functional) {
        Json values = Json::array();
        for (std::size_t k = 0; k < c.product_monomials.size(); ++k)
            values.push_back(Json{{"exps", c.product_monomials[k]}, {"value", c.values[k]}});
        j["functional"] = std::move(values);
        j["q_matrix"] = to_json(c.q_matrix);
        j["value_on_p"] = c.value_on_p;
        j["delta"] = c.delta;
        j["q_lambda_min"] = c.q_lambda_min;
    }
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

inline Json to_json(const CertifyResult& r) {
    Json j{{"status", r.status == CertifyStatus::Sos        ? "sos"
                      : r.status == CertifyStatus::NotSos   ? "not_sos"
                                                            : "indeterminate"}};
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    if (r.refutation) j["refutation"] = to_json(*r.refutation);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json to_json(const CompletionResult& r) {
    Json j{{"status", r.status == CompletionStatus::Completed        ? "completed"
                      : r.status == CompletionStatus::NoCompletion   ? "no_completion"
                      : r.status == CompletionStatus::MinorViolation ? "minor_violation"
                                                                     : "indeterminate"},
           {"rank", r.rank}};
    if (r.matrix) j["matrix"] = to_json(*r.matrix);
    if (!r.violating_clique.empty()) j["violating_clique"] = r.violating_clique;
    if (!r.certificate.empty())
        j["certificate"] =
            Json{{"y", r.certificate}, {"lambda_max_sum_yA", r.certificate_psd_gap}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json to_json(const ProjectionTrace& t) {
    Json steps = Json::array();
    for (const auto& s : t.steps)
        steps.push_back(Json{{"point", s.source_point},
                             {"dim_before", s.dim_before},
                             {"dim_after", s.dim_after},
                             {"drop", s.drop},
                             {"codim_bound", s.codim_bound}});
    return Json{{"n", t.n},
                {"d", t.d},
                {"ambient_dim", t.ambient_dim},
                {"initial_dim_i2", t.initial_dim_i2},
                {"steps", std::move(steps)},
                {"complete", t.complete},
                {"qp", t.qp}};
}

inline Json to_json(const CayleyBacharach& cb) {
    Json pts = Json::array();
    for (const auto& p : cb.points) pts.push_back(Json::array({p[0], p[1], p[2]}));
    return Json{{"points", std::move(pts)},
                {"lambda", cb.lambda},
                {"mu", cb.mu},
                {"eigenvalues", cb.eigenvalues},
                {"rank", cb.rank},
                {"evaluation_rank", cb.evaluation_rank},
                {"q_matrix", to_json(cb.q_matrix)},
                {"extreme_ray",
                 Json{{"is_extreme", cb.extreme.is_extreme},
                      {"solution_space_dim", cb.extreme.solution_space_dim}}},
                {"attempts", cb.attempts}};
}

}  // namespace soslab
