#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "soslab/moments.hpp"
#include "soslab/rng.hpp"
#include "soslab/sdp.hpp"

using namespace soslab;

namespace {
// Brute-force extremality probe: maximize <R, A> over {A in span(L), 0 <= A <= Q}
// for several random R. Q is extreme iff every maximizer is a multiple of Q.
// Encoded as a block SDP: X = diag(A, Q - A) with linear tying constraints.
bool brute_force_extreme(const SymmetricMatrix& q, const std::vector<SymmetricMatrix>& sub,
                         SplitMix64& rng) {
    const int n = q.size();
    const int t = static_cast<int>(sub.size());
    // orthogonal complement of span(sub) within symmetric matrices, as linear
    // constraints forcing A into the span
    std::vector<SymmetricMatrix> complement;
    {
        // collect svec rows of sub, compute a kernel basis of the Gram system
        const int s = n * (n + 1) / 2;
        std::vector<std::vector<double>> rows(t, std::vector<double>(s));
        for (int a = 0; a < t; ++a) {
            int k = 0;
            for (int i = 0; i < n; ++i) {
                rows[a][k++] = sub[a].at(i, i);
                for (int j = i + 1; j < n; ++j) rows[a][k++] = 1.4142135623730951 * sub[a].at(i, j);
            }
        }
        SymmetricMatrix gram(s);
        for (int x = 0; x < s; ++x)
            for (int y = x; y < s; ++y) {
                double acc = 0;
                for (int a = 0; a < t; ++a) acc += rows[a][x] * rows[a][y];
                gram.at(x, y) = acc;
            }
        const auto ed = eigendecompose(gram);
        for (int k = 0; k < s; ++k) {
            if (ed.eigenvalues[k] > 1e-9 * std::max(1.0, ed.eigenvalues.front())) continue;
            SymmetricMatrix c(n);
            int idx = 0;
            for (int i = 0; i < n; ++i) {
                c.at(i, i) = ed.eigenvectors[k][idx++];
                for (int j = i + 1; j < n; ++j)
                    c.at(i, j) = ed.eigenvectors[k][idx++] / 1.4142135623730951;
            }
            complement.push_back(c);
        }
    }
    for (int probe = 0; probe < 4; ++probe) {
        SymmetricMatrix r(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) r.at(i, j) = rng.normal();
        // variable X = [[A, M],[M^T, B]]; constraints: off-block = 0, A + B = Q,
        // A orthogonal to the complement of the span
        const int big = 2 * n;
        SymmetricMatrix c(big);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) c.at(i, j) = -r.at(i, j);  // maximize <R, A>
        SdpProblem prob = SdpProblem::minimize(big, c);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                SymmetricMatrix a(big);
                a.at(i, n + j) = i == n + j ? 1.0 : 0.5;
                prob.add_constraint(a, 0.0);
            }
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                SymmetricMatrix a(big);
                a.at(i, j) = i == j ? 1.0 : 0.5;
                a.at(n + i, n + j) = i == j ? 1.0 : 0.5;
                prob.add_constraint(a, q.at(i, j));
            }
        for (const auto& comp : complement) {
            SymmetricMatrix a(big);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) a.at(i, j) = comp.at(i, j);
            prob.add_constraint(a, 0.0);
        }
        const auto out = solve(prob);
        if (out.status != SdpStatus::Optimal) continue;
        // extract A and test proportionality to Q
        SymmetricMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a.at(i, j) = out.x.at(i, j);
        const double alpha = a.inner(q) / q.inner(q);
        double dev = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                dev = std::max(dev, std::abs(a.at(i, j) - alpha * q.at(i, j)));
        if (dev > 1e-5 * std::max(1.0, q.max_abs())) return false;  // non-trivial decomposition
    }
    return true;
}
}  // namespace

TEST_CASE("hankel matrices") {
    const SymmetricMatrix h1 = hankel_matrix({1, 0, 1});
    REQUIRE(h1.at(0, 0) == 1);
    REQUIRE(h1.at(0, 1) == 0);
    REQUIRE(h1.at(1, 1) == 1);

    const SymmetricMatrix h2 = hankel_matrix({1, 2, 4, 8, 16});
    REQUIRE(numerical_rank(h2).rank == 1);
    const SymmetricMatrix v = SymmetricMatrix::outer({1, 2, 4});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) REQUIRE(h2.at(i, j) == v.at(i, j));

    const SymmetricMatrix h3 = hankel_matrix({1, 0, 1, 0, 1});
    REQUIRE(numerical_rank(h3).rank == 2);

    REQUIRE_THROWS_AS(hankel_matrix({1, 2}), DimensionMismatch);
}

TEST_CASE("hankel invariant: entries depend only on i+j") {
    SplitMix64 rng(91, 0);
    for (int t = 0; t < 100; ++t) {
        const int d = 1 + static_cast<int>(rng.uniform_int(0, 5));
        std::vector<double> mom(2 * d + 1);
        for (double& m : mom) m = rng.normal();
        const SymmetricMatrix h = hankel_matrix(mom);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j)
                for (int k = 0; k <= d; ++k)
                    for (int l = 0; l <= d; ++l)
                        if (i + j == k + l) REQUIRE(h.at(i, j) == h.at(k, l));
    }
}

TEST_CASE("point evaluation functionals") {
    const MonomialBasis cubics = monomial_basis(3, 3, true);
    const MomentFunctional f = point_evaluation_functional({1, 1, 1}, cubics);
    const SymmetricMatrix q = f.matrix();
    REQUIRE(q.size() == 10);
    REQUIRE(numerical_rank(q).rank == 1);
    REQUIRE(is_psd(q));

    // consistent with the Hankel example up to scale
    const MonomialBasis b2 = monomial_basis(2, 2, true);
    const SymmetricMatrix qh = point_evaluation_functional({1, 2}, b2).matrix();
    const SymmetricMatrix h = hankel_matrix({1, 2, 4, 8, 16});
    const double ratio = qh.at(0, 0) / h.at(0, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            REQUIRE(qh.at(i, j) == Catch::Approx(ratio * h.at(i, j)).margin(1e-12));

    // scaling the representative does not change the normalized functional
    const SymmetricMatrix q2 = point_evaluation_functional({2, 4}, b2).matrix();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) REQUIRE(q2.at(i, j) == Catch::Approx(qh.at(i, j)).margin(1e-12));

    REQUIRE_THROWS_AS(point_evaluation_functional({0, 0}, b2), ZeroInput);
}

TEST_CASE("rank-1 point recovery") {
    const MonomialBasis b2 = monomial_basis(2, 2, true);
    const auto rec = recover_point_from_rank1(hankel_matrix({1, 2, 4, 8, 16}), b2);
    const auto* pt = std::get_if<RecoveredPoint>(&rec);
    REQUIRE(pt != nullptr);
    REQUIRE(pt->point[0] / pt->point[1] == Catch::Approx(0.5).margin(1e-10));

    REQUIRE(std::holds_alternative<NotRankOne>(
        recover_point_from_rank1(SymmetricMatrix::identity(3), b2)));
    REQUIRE(std::holds_alternative<NotVeroneseConsistent>(
        recover_point_from_rank1(SymmetricMatrix::outer({1, 0, 1}), b2)));
}

TEST_CASE("point -> moments -> recovery round trip on 100 seeded bivariate points") {
    SplitMix64 rng(92, 0);
    const int d = 2;
    const MonomialBasis basis = monomial_basis(2, d, true);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> v = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
        if (std::abs(v[0]) < 0.05 && std::abs(v[1]) < 0.05) continue;
        const SymmetricMatrix q = point_evaluation_functional(v, basis).matrix();
        const auto rec = recover_point_from_rank1(q, basis);
        const auto* pt = std::get_if<RecoveredPoint>(&rec);
        REQUIRE(pt != nullptr);
        // compare projectively: cross product near zero
        const double cross = pt->point[0] * v[1] - pt->point[1] * v[0];
        const double scale = std::max({std::abs(v[0]), std::abs(v[1]), 1e-12});
        REQUIRE(std::abs(cross) / scale <= 1e-8);
    }
}

TEST_CASE("extreme rays of the full PSD cone") {
    std::vector<SymmetricMatrix> full;
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            SymmetricMatrix e(2);
            e.at(i, j) = 1;
            full.push_back(e);
        }
    const auto r1 = is_extreme_ray(SymmetricMatrix::outer({1, 2}), full);
    REQUIRE(r1.is_extreme);
    REQUIRE(r1.rank == 1);
    const auto r2 = is_extreme_ray(SymmetricMatrix::identity(2), full);
    REQUIRE_FALSE(r2.is_extreme);
    REQUIRE(r2.solution_space_dim == 3);
    REQUIRE_FALSE(r2.witness_coefficients.empty());
}

TEST_CASE("a rank-2 extreme ray of a 3x3 spectrahedral slice") {
    SymmetricMatrix m(3);
    m.at(0, 0) = m.at(1, 1) = 1;  // rank 2, kernel e_2
    SymmetricMatrix b(3);
    b.at(0, 2) = 1;  // B e_2 != 0, so only multiples of M kill the kernel
    const auto r = is_extreme_ray(m, {m, b});
    REQUIRE(r.is_extreme);
    REQUIRE(r.rank == 2);
    REQUIRE(r.kernel.size() == 1);
}

TEST_CASE("is_extreme_ray rejects matrices outside the subspace") {
    SymmetricMatrix m(2);
    m.at(0, 1) = 1;
    SymmetricMatrix l(2);
    l.at(0, 0) = 1;
    REQUIRE_THROWS_AS(is_extreme_ray(m, {l}), NotInSubspace);
}

TEST_CASE("kernel-maximality agrees with the brute-force decomposition search") {
    SplitMix64 rng(93, 0);
    // extreme case: rank-1 in a full 3x3 basis
    std::vector<SymmetricMatrix> full;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            SymmetricMatrix e(3);
            e.at(i, j) = 1;
            full.push_back(e);
        }
    const SymmetricMatrix rank1 = SymmetricMatrix::outer({1, -1, 2});
    REQUIRE(is_extreme_ray(rank1, full).is_extreme == brute_force_extreme(rank1, full, rng));

    // non-extreme case: identity in the full basis
    const SymmetricMatrix id3 = SymmetricMatrix::identity(3);
    REQUIRE(is_extreme_ray(id3, full).is_extreme == brute_force_extreme(id3, full, rng));

    // rank-2 extreme in a thin slice
    SymmetricMatrix m(3);
    m.at(0, 0) = m.at(1, 1) = 1;
    SymmetricMatrix b(3);
    b.at(0, 2) = 1;
    REQUIRE(is_extreme_ray(m, {m, b}).is_extreme == brute_force_extreme(m, {m, b}, rng));

    // rank-2 non-extreme: diag(1,1,0) inside span{E00, E11, E01, B}
    SymmetricMatrix e00(3), e11(3), e01(3);
    e00.at(0, 0) = 1;
    e11.at(1, 1) = 1;
    e01.at(0, 1) = 1;
    const std::vector<SymmetricMatrix> slice = {e00, e11, e01, b};
    REQUIRE(is_extreme_ray(m, slice).is_extreme == brute_force_extreme(m, slice, rng));
}

TEST_CASE("moment subspace of ternary sextics has dimension 28") {
    const auto sub = moment_subspace(3, 3);
    REQUIRE(sub.size() == 28);
    for (const auto& e : sub) REQUIRE(e.size() == 10);
}

TEST_CASE("cayley-bacharach construction across 10 seeds") {
    const MonomialBasis cubics = monomial_basis(3, 3, true);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CayleyBacharach cb = cayley_bacharach(seed);
        REQUIRE(cb.evaluation_rank == 8);
        REQUIRE(cb.points.size() == 9);
        for (double l : cb.lambda) REQUIRE(l != 0.0);
        REQUIRE(cb.lambda[8] == Catch::Approx(1.0));
        REQUIRE(cb.rank == 7);
        REQUIRE(cb.eigenvalues.back() >= -1e-6 * cb.eigenvalues.front());
        REQUIRE(cb.mu[8] < 0);
        REQUIRE(cb.extreme.is_extreme);

        // the relation sum lambda_i f(v_i) = 0 holds for random cubics on the
        // unit representatives
        SplitMix64 rng(1000 + seed, 0);
        for (int t = 0; t < 50; ++t) {
            std::vector<double> coeffs(10);
            for (double& c : coeffs) c = rng.uniform(-1, 1);
            double acc = 0;
            for (int a = 0; a < 9; ++a) {
                std::vector<double> v = {double(cb.points[a][0]), double(cb.points[a][1]),
                                         double(cb.points[a][2])};
                const double nrm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
                for (double& x : v) x /= nrm;
                const auto vals = basis_values(cubics, v);
                double fv = 0;
                for (int k = 0; k < 10; ++k) fv += coeffs[k] * vals[k];
                acc += cb.lambda[a] * fv;
            }
            REQUIRE(std::abs(acc) <= 1e-7);
        }
    }
}
