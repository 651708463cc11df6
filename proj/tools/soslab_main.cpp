// sos-lab: command-line front end. Subcommands mirror the library modules;
// all input and output is JSON, seeded operations are deterministic per seed,
// and exit codes distinguish mathematical "no" answers from errors:
//   0 success / positive answer     2 negative answer with certificate
//   1 usage or I/O error            3 indeterminate (solver gave up)

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "soslab/soslab.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string output;
    bool compact = false;
    double tol_feas = 1e-8;
    double tol_psd = 1e-8;
    double tol_rank = 1e-7;
};

soslab::Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw soslab::Error("cannot open input file: " + path);
    soslab::Json j;
    in >> j;
    return j;
}

/// Polynomial inputs accept either a file path or a forms://<name> URI into
/// the builtin catalogue.
soslab::Polynomial load_polynomial(const std::string& spec) {
    const std::string prefix = "forms://";
    if (spec.rfind(prefix, 0) == 0) return soslab::builtin_form(spec.substr(prefix.size()));
    return soslab::polynomial_from_json(read_json_file(spec));
}

int emit(const soslab::Json& doc, const GlobalOpts& g, int exit_code) {
    const std::string text = g.compact ? doc.dump() : doc.dump(2);
    if (g.output.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(g.output);
        if (!out) throw soslab::Error("cannot open output file: " + g.output);
        out << text << "\n";
    }
    return exit_code;
}

soslab::SdpConfig sdp_config(const GlobalOpts& g) {
    soslab::SdpConfig cfg;
    cfg.eps_feas = g.tol_feas;
    cfg.eps_psd = g.tol_psd;
    return cfg;
}

int run_certify(const GlobalOpts& g, const std::string& input, bool no_prune,
                const std::string& mod_graph) {
    using namespace soslab;
    const Polynomial p = load_polynomial(input);
    CertifyOptions opts;
    opts.prune = !no_prune;
    opts.sdp = sdp_config(g);
    const CertifyResult r = mod_graph.empty()
                                ? certify_sos(p, opts)
                                : certify_sos_mod_graph(p, graph_from_json(read_json_file(mod_graph)), opts);
    const int code = r.status == CertifyStatus::Sos      ? 0
                     : r.status == CertifyStatus::NotSos ? 2
                                                         : 3;
    return emit(to_json(r), g, code);
}

int run_complete(const GlobalOpts& g, const std::string& input, const std::string& strategy) {
    using namespace soslab;
    const PartialSymmetricMatrix m = partial_matrix_from_json(read_json_file(input));
    CompletionResult r;
    if (strategy == "chordal")
        r = complete_psd(m, CompletionStrategy::Chordal, g.tol_psd);
    else if (strategy == "sdp")
        r = complete_psd_sdp(m, sdp_config(g));
    else
        throw Error("unknown strategy '" + strategy + "' (chordal|sdp)");
    const int code = r.status == CompletionStatus::Completed      ? 0
                     : r.status == CompletionStatus::Indeterminate ? 3
                                                                    : 2;
    return emit(to_json(r), g, code);
}

int run_chordal(const GlobalOpts& g, const std::string& input) {
    using namespace soslab;
    const SpecificationGraph graph = graph_from_json(read_json_file(input));
    const ChordalityReport rep = is_chordal(graph);
    Json j{{"chordal", rep.chordal}};
    if (rep.chordal) {
        j["peo"] = rep.peo;
        j["maximal_cliques"] = maximal_cliques_chordal(graph);
        j["clique_number"] = clique_number(graph);
        j["smallest_chordless_cycle"] = nullptr;
        j["hankel_index_prediction"] = nullptr;
    } else {
        j["witness_cycle"] = rep.witness_cycle;
        const auto hole = smallest_chordless_cycle(graph);
        j["smallest_chordless_cycle"] = static_cast<int>(hole->size());
        // lowest non-unit extreme-ray rank of the dual cone: cycle length - 2
        j["hankel_index_prediction"] = static_cast<int>(hole->size()) - 2;
    }
    return emit(j, g, 0);
}

int run_newton(const GlobalOpts& g, const std::string& input) {
    using namespace soslab;
    const Polynomial p = load_polynomial(input);
    const LatticePolytope np = newton_polytope(p);
    Json verts = Json::array();
    for (const auto& v : np.vertices()) verts.push_back(v);
    Json halves = Json::array();
    if (p.degree() % 2 == 0)
        for (const auto& q : half_lattice_points(np)) halves.push_back(q);
    const NecessaryCheck nc = sos_necessary_check(p);
    Json check{{"pass", nc.pass}};
    if (!nc.reason.empty()) check["reason"] = nc.reason;
    return emit(Json{{"vertices", verts}, {"half_lattice_points", halves},
                     {"necessary_check", check}},
                g, 0);
}

int run_sdp(const GlobalOpts& g, const std::string& input) {
    using namespace soslab;
    const SdpProblem prob = sdp_problem_from_json(read_json_file(input));
    const SdpOutcome out = solve(prob, sdp_config(g));
    const int code = out.status == SdpStatus::Infeasible      ? 2
                     : out.status == SdpStatus::MaxIterations ? 3
                                                              : 0;
    return emit(to_json(out), g, code);
}

int run_hankel(const GlobalOpts& g, const std::vector<double>& moments) {
    using namespace soslab;
    const SymmetricMatrix h = hankel_matrix(moments);
    const RankReport rr = numerical_rank(h, g.tol_rank);
    Json j{{"matrix", to_json(h)}, {"rank", rr.rank}, {"psd", is_psd(h, g.tol_psd)}};
    const MonomialBasis basis = monomial_basis(2, h.size() - 1, true);
    const PointRecovery rec = recover_point_from_rank1(h, basis, g.tol_rank);
    if (const auto* pt = std::get_if<RecoveredPoint>(&rec)) {
        j["recovery"] = "point";
        j["recovered_point"] = pt->point;
    } else if (std::holds_alternative<NotRankOne>(rec)) {
        j["recovery"] = "not_rank_one";
    } else {
        j["recovery"] = "not_veronese_consistent";
    }
    return emit(j, g, 0);
}

int run_cayley_bacharach(const GlobalOpts& g) {
    using namespace soslab;
    return emit(to_json(cayley_bacharach(g.seed)), g, 0);
}

int run_qp(const GlobalOpts& g, int n, int d, int max_steps) {
    using namespace soslab;
    const ProjectionTrace trace = quadratic_persistence(n, d, g.seed, max_steps);
    Json j = to_json(trace);
    const QuadricSpace qs = veronese_quadrics(n, d);
    const CastelnuovoReport cr = castelnuovo_check(qs, n, trace.ambient_dim - n);
    j["castelnuovo"] = Json{{"bound", jsonio::int_to_json(cr.bound)},
                            {"dim_i2", cr.dim_i2},
                            {"equality", cr.equality}};
    if (trace.complete)
        j["pythagoras_lower_bound"] = pythagoras_lower_bound(trace.ambient_dim, trace.qp);
    return emit(j, g, 0);
}

int run_hilbert(const GlobalOpts& g, int n, int degree) {
    using namespace soslab;
    const HilbertCase hc = hilbert_case(n, degree);
    return emit(Json{{"n", n},
                     {"degree", degree},
                     {"case", hc == HilbertCase::Equality ? "equality" : "strict"}},
                g, 0);
}

int run_forms(const GlobalOpts& g, const std::string& name) {
    using namespace soslab;
    if (name.empty()) return emit(Json{{"forms", builtin_form_names()}}, g, 0);
    return emit(to_json(builtin_form(name)), g, 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sos-lab: sums of squares certification, PSD matrix completion, and the "
                 "moment-side geometry of nonnegative polynomials"};
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for randomized operations")->capture_default_str();
    app.add_option("--output", g.output, "write the JSON document to a file instead of stdout");
    app.add_flag("--compact", g.compact, "compact JSON (one line)");
    app.add_option("--tol-feas", g.tol_feas, "SDP feasibility tolerance")->capture_default_str();
    app.add_option("--tol-psd", g.tol_psd, "PSD tolerance")->capture_default_str();
    app.add_option("--tol-rank", g.tol_rank, "numerical rank tolerance")->capture_default_str();
    bool show_version = false, show_schemas = false;
    app.add_flag("--version", show_version, "print version metadata as JSON");
    app.add_flag("--schemas", show_schemas, "print the JSON schemas of all documents");

    std::string certify_input, certify_mod_graph;
    bool certify_no_prune = false;
    auto* certify = app.add_subcommand("certify", "SOS certification of a polynomial");
    certify->add_option("input", certify_input, "polynomial JSON file or forms://<name>")
        ->required();
    certify->add_flag("--no-prune", certify_no_prune,
                      "use the full degree-d basis instead of the Newton-pruned one");
    certify->add_option("--mod-graph", certify_mod_graph,
                        "certify modulo the edge ideal of this graph (quadratic forms only)");

    std::string complete_input, complete_strategy = "chordal";
    auto* complete = app.add_subcommand("complete", "PSD completion of a partial matrix");
    complete->add_option("input", complete_input, "partial matrix JSON file")->required();
    complete->add_option("--strategy", complete_strategy, "chordal|sdp")->capture_default_str();

    std::string chordal_input;
    auto* chordal = app.add_subcommand("chordal", "chordality report for a graph");
    chordal->add_option("input", chordal_input, "graph JSON file")->required();

    std::string newton_input;
    auto* newton = app.add_subcommand("newton", "Newton polytope and half-polytope lattice points");
    newton->add_option("input", newton_input, "polynomial JSON file or forms://<name>")
        ->required();

    std::string sdp_input;
    auto* sdp = app.add_subcommand("sdp", "solve a standard-form semidefinite program");
    sdp->add_option("input", sdp_input, "SDP problem JSON file")->required();

    std::vector<double> hankel_moments;
    auto* hankel = app.add_subcommand("hankel", "Hankel moment matrix analysis");
    hankel->add_option("--moments", hankel_moments, "2d+1 moment values")
        ->required()
        ->delimiter(',');

    auto* cb = app.add_subcommand("cayley-bacharach",
                                  "build a rank-7 extreme ray of the ternary-sextic "
                                  "moment spectrahedron from two cubics");
    (void)cb;

    int qp_n = 2, qp_d = 2, qp_max_steps = -1;
    auto* qp = app.add_subcommand("qp", "quadratic persistence of a Veronese embedding");
    qp->add_option("--n", qp_n, "projective dimension of the source")->capture_default_str();
    qp->add_option("--d", qp_d, "degree of the Veronese embedding")->capture_default_str();
    qp->add_option("--max-steps", qp_max_steps, "stop after this many projections (-1 = run to the end)")
        ->capture_default_str();

    int hil_n = 3, hil_deg = 6;
    auto* hil = app.add_subcommand("hilbert-case", "equality or strict inclusion of SOS in "
                                                   "nonnegative forms");
    hil->add_option("--nvars", hil_n, "number of variables")->capture_default_str();
    hil->add_option("--degree", hil_deg, "even total degree 2d")->capture_default_str();

    std::string forms_name;
    auto* forms = app.add_subcommand("forms", "builtin form catalogue");
    forms->add_option("name", forms_name, "form name (omit to list)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (show_version)
            return emit(soslab::Json{{"name", "sos-lab"}, {"version", kVersion}}, g, 0);
        if (show_schemas) {
            soslab::Json j;
            for (const auto& [name, text] : soslab::schemas::all())
                j[name] = soslab::Json::parse(text);
            return emit(j, g, 0);
        }
        if (certify->parsed())
            return run_certify(g, certify_input, certify_no_prune, certify_mod_graph);
        if (complete->parsed()) return run_complete(g, complete_input, complete_strategy);
        if (chordal->parsed()) return run_chordal(g, chordal_input);
        if (newton->parsed()) return run_newton(g, newton_input);
        if (sdp->parsed()) return run_sdp(g, sdp_input);
        if (hankel->parsed()) return run_hankel(g, hankel_moments);
        if (cb->parsed()) return run_cayley_bacharach(g);
        if (qp->parsed()) return run_qp(g, qp_n, qp_d, qp_max_steps);
        if (hil->parsed()) return run_hilbert(g, hil_n, hil_deg);
        if (forms->parsed()) return run_forms(g, forms_name);
        std::cerr << app.help() << "\n";
        return 1;
    } catch (const soslab::Error& e) {
        std::cerr << soslab::Json{{"error", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << soslab::Json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
