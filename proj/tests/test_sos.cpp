#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "soslab/graphs.hpp"
#include "soslab/newton.hpp"
#include "soslab/rng.hpp"
#include "soslab/sos.hpp"

using namespace soslab;

namespace {

Polynomial quadratic_form_from(const SymmetricMatrix& a) {
    const int n = a.size();
    Polynomial q(n);
    for (int i = 0; i < n; ++i) {
        Exponents sq(n, 0);
        sq[i] = 2;
        q.add_term(sq, Rational(static_cast<long long>(std::llround(a.at(i, i) * 1024)), 1024));
        for (int j = i + 1; j < n; ++j) {
            Exponents e(n, 0);
            e[i] = e[j] = 1;
            q.add_term(e,
                       Rational(static_cast<long long>(std::llround(2 * a.at(i, j) * 1024)), 1024));
        }
    }
    return q;
}

Polynomial random_sos(SplitMix64& rng, int nvars, int deg, int squares, int terms_per_square) {
    Polynomial p(nvars);
    for (int s = 0; s < squares; ++s) {
        Polynomial q(nvars);
        for (int t = 0; t < terms_per_square; ++t) {
            Exponents e(nvars);
            int left = deg;
            for (int i = 0; i < nvars; ++i) {
                e[i] = static_cast<int>(rng.uniform_int(0, left));
                left -= e[i];
            }
            q.add_term(e, Rational(rng.uniform_int(-4, 4)));
        }
        p = p + q * q;
    }
    return p;
}

void require_refutation_contract(const Polynomial& p, const NotSosCertificate& cert) {
    REQUIRE(cert.has_functional);
    // Q_ell PSD within certification tolerance
    const auto ev = eigendecompose(cert.q_matrix).eigenvalues;
    REQUIRE(ev.back() >= -1e-6 * std::max(1.0, ev.front()));
    // ell evaluates strictly negatively on p
    REQUIRE(cert.value_on_p <= -1e-6);
    REQUIRE(cert.delta > 0);
    // functional is consistent: value_on_p = sum ell(m) coeff_p(m)
    double check = 0;
    for (std::size_t k = 0; k < cert.product_monomials.size(); ++k)
        check += cert.values[k] * to_double(p.coeff(cert.product_monomials[k]));
    REQUIRE(check == Catch::Approx(cert.value_on_p).margin(1e-9));
}

}  // namespace

TEST_CASE("gram sdp: the five constraints of the quartic demo") {
    const Polynomial p = builtin_form("quartic-demo");
    const GramSystem sys = build_gram_sdp(p, monomial_basis(1, 2, false));
    REQUIRE(sys.problem.num_constraints() == 5);
    REQUIRE(sys.product_monomials ==
            std::vector<Exponents>{{0}, {1}, {2}, {3}, {4}});
    REQUIRE(sys.problem.b == std::vector<double>{1, 1, 3, -1, 1});
    // constraint matrices: a11 ; 2a12 ; 2a13 + a22 ; 2a23 ; a33
    auto entry = [&](int k, int i, int j) { return sys.problem.a[k].at(i, j); };
    REQUIRE(entry(0, 0, 0) == 1);
    REQUIRE(entry(1, 0, 1) == 1);
    REQUIRE(entry(2, 0, 2) == 1);
    REQUIRE(entry(2, 1, 1) == 1);
    REQUIRE(entry(3, 1, 2) == 1);
    REQUIRE(entry(4, 2, 2) == 1);
    // no stray entries: total unit mass per constraint (diagonal cells count
    // once, off-diagonal pairs twice)
    const double mass[5] = {1, 2, 3, 2, 1};
    for (int k = 0; k < 5; ++k) {
        double sum = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) sum += sys.problem.a[k].at(i, j);
        REQUIRE(sum == mass[k]);
    }
}

TEST_CASE("gram sdp: x^2 + y^2 over basis {x, y}") {
    Polynomial p(2);
    p.add_term({2, 0}, 1);
    p.add_term({0, 2}, 1);
    const GramSystem sys = build_gram_sdp(p, monomial_basis(2, 1, true));
    REQUIRE(sys.problem.num_constraints() == 3);
    REQUIRE(sys.problem.b == std::vector<double>{1, 0, 1});  // x^2, xy, y^2
}

TEST_CASE("gram sdp: Motzkin with the Newton-pruned basis") {
    const Polynomial m = builtin_form("motzkin");
    MonomialBasis basis;
    basis.nvars = 3;
    basis.degree = 3;
    basis.exact_degree = true;
    basis.monomials = half_lattice_points(newton_polytope(m));
    REQUIRE(basis.size() == 4);
    const GramSystem sys = build_gram_sdp(m, basis);
    REQUIRE(sys.problem.num_constraints() == 10);
}

TEST_CASE("gram sdp: basis too small") {
    const Polynomial p = builtin_form("quartic-demo");
    REQUIRE_THROWS_AS(build_gram_sdp(p, monomial_basis(1, 1, false)), BasisTooSmall);
}

TEST_CASE("certify: Motzkin and CLR are not sums of squares") {
    for (const char* name : {"motzkin", "clr"}) {
        const Polynomial p = builtin_form(name);
        const CertifyResult r = certify_sos(p);
        REQUIRE(r.status == CertifyStatus::NotSos);
        require_refutation_contract(p, *r.refutation);
    }
}

TEST_CASE("certify: quartic demo is SOS; boundary Gram gives two squares") {
    const Polynomial p = builtin_form("quartic-demo");
    const CertifyResult r = certify_sos(p);
    REQUIRE(r.status == CertifyStatus::Sos);
    REQUIRE(r.certificate->residual <= 1e-6);

    // Pin a13 = -1: the five coefficient equations then determine the Gram
    // matrix completely; it is PSD of rank 2 and yields a 2-square witness.
    SymmetricMatrix g(3);
    g.at(0, 0) = 1;
    g.at(0, 1) = 0.5;
    g.at(0, 2) = -1;
    g.at(1, 1) = 5;
    g.at(1, 2) = -0.5;
    g.at(2, 2) = 1;
    REQUIRE(numerical_rank(g).rank == 2);
    const MonomialBasis basis = monomial_basis(1, 2, false);
    const auto rows = psd_square_root_rows(g);
    REQUIRE(rows.size() == 2);
    // reconstruct p from the two squares
    std::map<int, double> coeffs;
    for (const auto& row : rows)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) coeffs[i + j] += row[i] * row[j];
    const double expect[5] = {1, 1, 3, -1, 1};
    for (int d = 0; d <= 4; ++d) REQUIRE(coeffs[d] == Catch::Approx(expect[d]).margin(1e-6));
}

TEST_CASE("certify: zero polynomial is SOS with zero squares") {
    const CertifyResult r = certify_sos(Polynomial(2));
    REQUIRE(r.status == CertifyStatus::Sos);
    REQUIRE(r.certificate->squares.empty());
}

TEST_CASE("certify: odd degree and negative leading terms are rejected structurally") {
    const CertifyResult r1 = certify_sos(Polynomial::monomial({3}, 1));
    REQUIRE(r1.status == CertifyStatus::NotSos);
    REQUIRE_FALSE(r1.refutation->has_functional);
    const CertifyResult r2 = certify_sos(Polynomial::monomial({2}, -1));
    REQUIRE(r2.status == CertifyStatus::NotSos);
}

TEST_CASE("certify round trip: 200 seeded SOS polynomials") {
    SplitMix64 rng(61, 0);
    int done = 0;
    while (done < 200) {
        const int nvars = 2 + static_cast<int>(rng.uniform_int(0, 1));
        const Polynomial p = random_sos(rng, nvars, 3, 2, 2);
        if (p.is_zero()) continue;
        const CertifyResult r = certify_sos(p);
        INFO("p = " << p.str());
        REQUIRE(r.status == CertifyStatus::Sos);
        REQUIRE(r.certificate->residual <= 1e-6 * std::max(1.0, p.max_abs_coeff()));
        // squares live in half the Newton polytope
        const LatticePolytope np = newton_polytope(p);
        for (const auto& sq : r.certificate->squares)
            for (const auto& [e, c] : sq.terms) {
                Exponents twice(e.size());
                for (std::size_t i = 0; i < e.size(); ++i) twice[i] = 2 * e[i];
                REQUIRE(np.contains(twice));
            }
        // number of squares equals the Gram rank
        REQUIRE(static_cast<int>(r.certificate->squares.size()) ==
                numerical_rank(r.certificate->gram).rank);
        ++done;
    }
}

TEST_CASE("nonnegative quadratic forms need at most nvars squares") {
    SplitMix64 rng(62, 0);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, 2));
        // random PSD quadratic form with dyadic entries
        std::vector<std::vector<double>> g(n, std::vector<double>(n));
        for (auto& row : g)
            for (double& x : row) x = std::round(rng.normal() * 8) / 8.0;
        SymmetricMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k) s += g[i][k] * g[j][k];
                a.at(i, j) = s;
            }
        const Polynomial q = quadratic_form_from(a);
        if (q.is_zero()) continue;
        const CertifyResult r = certify_sos(q);
        REQUIRE(r.status == CertifyStatus::Sos);
        REQUIRE(static_cast<int>(r.certificate->squares.size()) <= n);
    }
}

TEST_CASE("hilbert cases") {
    REQUIRE(hilbert_case(3, 6) == HilbertCase::Strict);
    REQUIRE(hilbert_case(4, 4) == HilbertCase::Strict);
    REQUIRE(hilbert_case(3, 4) == HilbertCase::Equality);
    REQUIRE(hilbert_case(2, 10) == HilbertCase::Equality);
    REQUIRE(hilbert_case(7, 2) == HilbertCase::Equality);
    REQUIRE(hilbert_case(1, 8) == HilbertCase::Equality);  // univariate, trivially
    REQUIRE_THROWS_AS(hilbert_case(3, 5), NotEvenDegree);
}

TEST_CASE("find_negative_point") {
    REQUIRE_FALSE(find_negative_point(builtin_form("motzkin"), 10000, 1).has_value());

    Polynomial p(1);
    p.add_term({2}, 1);
    p.add_term({0}, -1);
    const auto hit = find_negative_point(p, 200, 1);
    REQUIRE(hit.has_value());
    REQUIRE(hit->value < 0);
    REQUIRE(hit->point[0] > -1);
    REQUIRE(hit->point[0] < 1);
    REQUIRE(p.evaluate(hit->point) == hit->value);  // exact re-evaluation

    REQUIRE(find_negative_point(builtin_form("motzkin").scaled(-1), 2000, 1).has_value());
}

TEST_CASE("certify mod graph: completable data on the chordal example pattern") {
    const SpecificationGraph g(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    Polynomial q(4);
    for (int i = 0; i < 4; ++i) {
        Exponents e(4, 0);
        e[i] = 2;
        q.add_term(e, 1);
    }
    for (auto [i, j] : g.edges()) {
        Exponents e(4, 0);
        e[i] = e[j] = 1;
        q.add_term(e, 2);
    }
    const CertifyResult r = certify_sos_mod_graph(q, g);
    REQUIRE(r.status == CertifyStatus::Sos);
    REQUIRE(r.certificate->squares.size() == 1);  // the all-ones completion has rank 1
    REQUIRE(r.certificate->residual <= 1e-7);
}

TEST_CASE("certify mod graph: the lower-right minor obstruction") {
    const SpecificationGraph g(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    Polynomial q(4);
    for (int i = 0; i < 4; ++i) {
        Exponents e(4, 0);
        e[i] = 2;
        q.add_term(e, 1);
    }
    auto cross = [&](int i, int j, double v) {
        Exponents e(4, 0);
        e[i] = e[j] = 1;
        q.add_term(e, Rational(static_cast<long long>(2 * v)));
    };
    cross(0, 1, 1);
    cross(0, 2, 1);
    cross(1, 2, 1);
    cross(2, 3, 2);  // embeds the negative 2x2 minor
    const CertifyResult r = certify_sos_mod_graph(q, g);
    REQUIRE(r.status == CertifyStatus::NotSos);
    REQUIRE(r.refutation->has_functional);
    REQUIRE(r.refutation->value_on_p < -1e-6);
    const auto ev = eigendecompose(r.refutation->q_matrix).eigenvalues;
    REQUIRE(ev.back() >= -1e-6 * std::max(1.0, ev.front()));
}

TEST_CASE("certify mod graph: C4 with an inconsistent edge sign") {
    const SpecificationGraph c4 = SpecificationGraph::cycle(4);
    Polynomial q(4);
    for (int i = 0; i < 4; ++i) {
        Exponents e(4, 0);
        e[i] = 2;
        q.add_term(e, 1);
    }
    const std::map<std::pair<int, int>, int> vals = {
        {{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}, {{0, 3}, -1}};
    for (const auto& [edge, v] : vals) {
        Exponents e(4, 0);
        e[edge.first] = e[edge.second] = 1;
        q.add_term(e, 2 * v);
    }
    const CertifyResult r = certify_sos_mod_graph(q, c4);
    REQUIRE(r.status == CertifyStatus::NotSos);
    REQUIRE(r.refutation->value_on_p < 0);
    const auto ev = eigendecompose(r.refutation->q_matrix).eigenvalues;
    REQUIRE(ev.back() >= -1e-6 * std::max(1.0, ev.front()));
}

TEST_CASE("certify mod graph: non-edge coefficients are rejected") {
    const SpecificationGraph path = SpecificationGraph::path(3);
    Polynomial q(3);
    Exponents e(3, 0);
    e[0] = e[2] = 1;  // 0-2 is not an edge of the path
    q.add_term(e, 1);
    REQUIRE_THROWS_AS(certify_sos_mod_graph(q, path), Error);
}
