#include <catch2/catch_amalgamated.hpp>

#include "soslab/exact.hpp"
#include "soslab/rng.hpp"

using namespace soslab;

namespace {
RatMatrix random_int_matrix(SplitMix64& rng, int rows, int cols, int lo = -5, int hi = 5) {
    RatMatrix m = rat_zero(rows, cols);
    for (auto& row : m)
        for (auto& v : row) v = Rational(rng.uniform_int(lo, hi));
    return m;
}
}  // namespace

TEST_CASE("rref rank on a known matrix") {
    RatMatrix m = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    REQUIRE(rat_rank(m) == 2);
}

TEST_CASE("null space vectors satisfy A v = 0 exactly") {
    SplitMix64 rng(21, 0);
    for (int t = 0; t < 25; ++t) {
        const RatMatrix a = random_int_matrix(rng, 3, 6);
        const RatMatrix ns = rat_null_space(a, 6);
        REQUIRE(static_cast<int>(ns.size()) == 6 - rat_rank(a));
        for (const auto& v : ns) {
            const RatVector av = rat_matvec(a, v);
            for (const auto& x : av) REQUIRE(x == 0);
        }
    }
}

TEST_CASE("determinant matches cofactor expansion on 3x3") {
    SplitMix64 rng(22, 0);
    for (int t = 0; t < 20; ++t) {
        const RatMatrix m = random_int_matrix(rng, 3, 3);
        const Rational det = rat_determinant(m);
        const Rational cof = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        REQUIRE(det == cof);
    }
}

TEST_CASE("inverse round trip") {
    SplitMix64 rng(23, 0);
    int done = 0;
    while (done < 10) {
        const RatMatrix m = random_int_matrix(rng, 4, 4);
        if (rat_determinant(m) == 0) continue;
        const auto inv = rat_inverse(m);
        REQUIRE(inv.has_value());
        const RatMatrix prod = rat_matmul(m, *inv);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) REQUIRE(prod[i][j] == (i == j ? Rational(1) : Rational(0)));
        ++done;
    }
    REQUIRE(!rat_inverse(RatMatrix{{1, 2}, {2, 4}}).has_value());
}

TEST_CASE("incremental echelon matches batch rank") {
    SplitMix64 rng(24, 0);
    for (int t = 0; t < 20; ++t) {
        const int rows = 8, cols = 6;
        const RatMatrix m = random_int_matrix(rng, rows, cols, -3, 3);
        IncrementalEchelon ech(cols);
        for (const auto& row : m) ech.add_row(row);
        REQUIRE(ech.rank() == rat_rank(m));
        // probing does not mutate
        const int before = ech.rank();
        ech.probe({m[0], m[1]});
        REQUIRE(ech.rank() == before);
    }
}

TEST_CASE("make_primitive produces coprime integers with positive lead") {
    RatVector v = {Rational(-1, 9), Rational(4, 9), Rational(-4, 9), Rational(0), Rational(1)};
    rat_make_primitive(v);
    REQUIRE(v == RatVector{1, -4, 4, 0, -9});
}

TEST_CASE("LP feasibility: convex combinations") {
    // is (1,1) in conv{(0,0),(2,0),(0,2)}? yes
    RatMatrix a = {{0, 2, 0}, {0, 0, 2}, {1, 1, 1}};
    REQUIRE(lp_feasible_nonneg(a, {1, 1, 1}));
    // is (2,2) in that triangle? no
    REQUIRE(!lp_feasible_nonneg(a, {2, 2, 1}));
    // boundary point (1,0)
    REQUIRE(lp_feasible_nonneg(a, {1, 0, 1}));
    // degenerate: single point {(1,2)}
    RatMatrix b = {{1}, {2}, {1}};
    REQUIRE(lp_feasible_nonneg(b, {1, 2, 1}));
    REQUIRE(!lp_feasible_nonneg(b, {1, 1, 1}));
}
