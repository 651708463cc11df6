#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "soslab/json_io.hpp"
#include "soslab/poly.hpp"
#include "soslab/rng.hpp"

using namespace soslab;

namespace {
Polynomial random_poly(SplitMix64& rng, int nvars, int maxdeg, int terms) {
    Polynomial p(nvars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(nvars);
        int left = maxdeg;
        for (int i = 0; i < nvars; ++i) {
            e[i] = static_cast<int>(rng.uniform_int(0, left));
            left -= e[i];
        }
        p.add_term(e, Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5)));
    }
    return p;
}

std::vector<Rational> random_point(SplitMix64& rng, int nvars) {
    std::vector<Rational> x(nvars);
    for (auto& v : x) v = Rational(rng.uniform_int(-20, 20), rng.uniform_int(1, 7));
    return x;
}
}  // namespace

TEST_CASE("homogenize: 1 + x") {
    Polynomial p(1);
    p.add_term({0}, 1);
    p.add_term({1}, 1);
    const Polynomial h = p.homogenized();
    REQUIRE(h.nvars() == 2);
    REQUIRE(h.coeff({1, 0}) == 1);
    REQUIRE(h.coeff({0, 1}) == 1);
    REQUIRE(h.term_count() == 2);
    REQUIRE(h.is_homogeneous());
}

TEST_CASE("homogenize: quartic demo") {
    const Polynomial h = builtin_form("quartic-demo").homogenized();
    REQUIRE(h.coeff({4, 0}) == 1);
    REQUIRE(h.coeff({3, 1}) == 1);
    REQUIRE(h.coeff({2, 2}) == 3);
    REQUIRE(h.coeff({1, 3}) == -1);
    REQUIRE(h.coeff({0, 4}) == 1);
    REQUIRE(h.term_count() == 5);
}

TEST_CASE("homogenize: already homogeneous input gains an unused variable") {
    Polynomial p(2);
    p.add_term({2, 0}, 1);
    p.add_term({0, 2}, 1);
    const Polynomial h = p.homogenized();
    REQUIRE(h.nvars() == 3);
    for (const auto& [e, c] : h.terms()) REQUIRE(e[0] == 0);
    REQUIRE(h.dehomogenized() == p);
}

TEST_CASE("homogenize rejects the zero polynomial") {
    REQUIRE_THROWS_AS(Polynomial(2).homogenized(), ZeroInput);
}

TEST_CASE("evaluate: catalogue examples") {
    const Polynomial m = builtin_form("motzkin");
    REQUIRE(m.evaluate(std::vector<Rational>{1, 1, 1}) == 0);
    REQUIRE(m.evaluate(std::vector<Rational>{1, 1, 0}) == 2);
    Polynomial c(2);
    c.add_term({2, 0}, 1);
    c.add_term({0, 2}, 1);
    REQUIRE(c.evaluate(std::vector<Rational>{3, 4}) == 25);
    REQUIRE_THROWS_AS(m.evaluate(std::vector<Rational>{1, 1}), DimensionMismatch);
}

TEST_CASE("monomial_basis: sizes and the univariate listing") {
    REQUIRE(monomial_basis(3, 3, true).size() == 10);
    REQUIRE(monomial_basis(4, 3, true).size() == 20);
    const MonomialBasis b = monomial_basis(1, 2, false);
    REQUIRE(b.monomials == std::vector<Exponents>{{0}, {1}, {2}});
}

TEST_CASE("monomial_basis: grevlex order within a degree, pure powers first") {
    const MonomialBasis b = monomial_basis(2, 2, true);
    REQUIRE(b.monomials == std::vector<Exponents>{{2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("builtin catalogue") {
    REQUIRE(builtin_form("motzkin").term_count() == 4);
    REQUIRE(builtin_form("clr").term_count() == 4);
    REQUIRE(builtin_form("quartic-demo").term_count() == 5);
    REQUIRE(builtin_form("motzkin").coeff({2, 2, 2}) == -3);
    REQUIRE(builtin_form("clr").coeff({2, 0, 4}) == 1);
    REQUIRE_THROWS_AS(builtin_form("nope"), UnknownForm);
}

TEST_CASE("homogenize then substitute x0 = 1 recovers the input") {
    SplitMix64 rng(11, 0);
    for (int t = 0; t < 50; ++t) {
        const Polynomial p = random_poly(rng, 3, 4, 6);
        if (p.is_zero()) continue;
        REQUIRE(p.homogenized().dehomogenized() == p);
    }
}

TEST_CASE("evaluate respects homogenization at 1000 seeded rational points") {
    SplitMix64 rng(12, 0);
    const Polynomial p = random_poly(rng, 2, 4, 7);
    REQUIRE(!p.is_zero());
    const Polynomial h = p.homogenized();
    for (int t = 0; t < 1000; ++t) {
        const std::vector<Rational> x = random_point(rng, 2);
        std::vector<Rational> x1 = {Rational(1)};
        x1.insert(x1.end(), x.begin(), x.end());
        REQUIRE(h.evaluate(x1) == p.evaluate(x));
    }
}

TEST_CASE("arithmetic agrees with evaluation homomorphism") {
    SplitMix64 rng(13, 0);
    for (int t = 0; t < 40; ++t) {
        const Polynomial a = random_poly(rng, 3, 4, 5);
        const Polynomial b = random_poly(rng, 3, 3, 5);
        const Polynomial sum = a + b, prod = a * b, diff = a - b;
        for (int k = 0; k < 5; ++k) {
            const auto x = random_point(rng, 3);
            REQUIRE(sum.evaluate(x) == a.evaluate(x) + b.evaluate(x));
            REQUIRE(diff.evaluate(x) == a.evaluate(x) - b.evaluate(x));
            REQUIRE(prod.evaluate(x) == a.evaluate(x) * b.evaluate(x));
        }
    }
}

TEST_CASE("basis order is stable across construction: identical serialization") {
    std::ostringstream s1, s2;
    s1 << to_json(builtin_form("motzkin")).dump() << to_json(builtin_form("clr")).dump();
    for (const auto& e : monomial_basis(3, 3, true).monomials)
        for (int v : e) s1 << v << ',';
    s2 << to_json(builtin_form("motzkin")).dump() << to_json(builtin_form("clr")).dump();
    for (const auto& e : monomial_basis(3, 3, true).monomials)
        for (int v : e) s2 << v << ',';
    REQUIRE(s1.str() == s2.str());
}

TEST_CASE("polynomial JSON round trip is exact") {
    SplitMix64 rng(14, 0);
    for (int t = 0; t < 20; ++t) {
        const Polynomial p = random_poly(rng, 3, 5, 6);
        REQUIRE(polynomial_from_json(to_json(p)) == p);
    }
    // big coefficients go through the string fallback
    Polynomial big(1);
    big.add_term({2}, Rational(Int("123456789012345678901234567890"), Int(7)));
    REQUIRE(polynomial_from_json(to_json(big)) == big);
}

TEST_CASE("no zero coefficients are ever stored") {
    Polynomial p(2);
    p.add_term({1, 0}, Rational(1, 2));
    p.add_term({1, 0}, Rational(-1, 2));
    REQUIRE(p.is_zero());
    REQUIRE(p.term_count() == 0);
}
