#pragma once

// Gram-matrix construction and SOS certification: a polynomial p(x) is a sum
// of squares iff p = m(x)^T A m(x) for a PSD matrix A over a monomial basis
// m(x). Matching coefficients of p gives one linear constraint per product
// monomial, and certification becomes an SDP feasibility problem. Infeasible
// problems yield a separating linear functional (the dual certificate).

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soslab/errors.hpp"
#include "soslab/newton.hpp"
#include "soslab/numerics.hpp"
#include "soslab/poly.hpp"
#include "soslab/rng.hpp"
#include "soslab/sdp.hpp"

namespace soslab {

struct GramSystem {
    MonomialBasis basis;
    std::vector<Exponents> product_monomials;  // constraint order, degree ascending
    SdpProblem problem;
};

/// One linear constraint per monomial expressible as a product of two basis
/// monomials: sum over matching Gram entries equals the coefficient of p
/// (zero-coefficient monomials in the span included). Throws BasisTooSmall
/// when some monomial of p cannot be matched.
inline GramSystem build_gram_sdp(const Polynomial& p, const MonomialBasis& basis) {
    if (p.nvars() != basis.nvars) throw DimensionMismatch("build_gram_sdp: variable count");
    const int s = basis.size();
    if (s == 0) throw BasisTooSmall("build_gram_sdp: empty basis");

    std::map<Exponents, std::vector<std::pair<int, int>>, GrevlexLess> products;
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j)
            products[exponents_sum(basis.monomials[i], basis.monomials[j])].emplace_back(i, j);

    for (const auto& [e, c] : p.terms())
        if (!products.count(e))
            throw BasisTooSmall("build_gram_sdp: monomial " + Polynomial::monomial(e, 1).str() +
                                " not expressible by the basis");

    GramSystem sys;
    sys.basis = basis;
    sys.problem = SdpProblem::feasibility(s);
    for (const auto& [e, pairs] : products) {
        SymmetricMatrix a(s);
        for (auto [i, j] : pairs) a.at(i, j) = 1.0;
        sys.problem.add_constraint(std::move(a), to_double(p.coeff(e)));
        sys.product_monomials.push_back(e);
    }
    return sys;
}

struct GramCertificate {
    MonomialBasis basis;
    SymmetricMatrix gram{1};
    std::vector<FloatPolynomial> squares;
    double residual = 0;  // max coefficient error of sum squares[k]^2 - p
};

/// Dual refutation: a linear functional ell on the product monomials with
/// Q_ell PSD (so ell is nonnegative on every square over the basis) and
/// ell(p) <= -delta < 0.
struct NotSosCertificate {
    MonomialBasis basis;
    std::vector<Exponents> product_monomials;
    std::vector<double> values;  // ell at each product monomial
    SymmetricMatrix q_matrix{1};
    double value_on_p = 0;
    double delta = 0;
    double q_lambda_min = 0;
    std::string reason;  // structural rejections carry a reason and no functional
    bool has_functional = false;
};

enum class CertifyStatus { Sos, NotSos, Indeterminate };

struct CertifyResult {
    CertifyStatus status = CertifyStatus::Indeterminate;
    std::optional<GramCertificate> certificate;
    std::optional<NotSosCertificate> refutation;
    std::string note;
};

struct CertifyOptions {
    bool prune = true;  // restrict the basis to half the Newton polytope
    SdpConfig sdp;
};

namespace detail {

inline std::vector<FloatPolynomial> squares_from_gram(const MonomialBasis& basis,
                                                      const SymmetricMatrix& gram) {
    std::vector<FloatPolynomial> squares;
    for (const auto& row : psd_square_root_rows(gram)) {
        FloatPolynomial g;
        g.nvars = basis.nvars;
        for (int j = 0; j < basis.size(); ++j)
            if (row[j] != 0.0) g.terms[basis.monomials[j]] = row[j];
        squares.push_back(std::move(g));
    }
    return squares;
}

inline double reconstruction_residual(const Polynomial& p, const GramSystem& sys,
                                      const std::vector<FloatPolynomial>& squares) {
    std::map<Exponents, double, GrevlexLess> recon;
    for (const auto& g : squares)
        for (const auto& [ea, ca] : g.terms)
            for (const auto& [eb, cb] : g.terms) recon[exponents_sum(ea, eb)] += ca * cb;
    double res = 0;
    for (const auto& e : sys.product_monomials) {
        const double have = recon.count(e) ? recon[e] : 0.0;
        res = std::max(res, std::abs(have - to_double(p.coeff(e))));
    }
    return res;
}

inline NotSosCertificate refutation_from_farkas(const Polynomial& p, const GramSystem& sys,
                                                const std::vector<double>& farkas_y) {
    NotSosCertificate cert;
    cert.basis = sys.basis;
    cert.product_monomials = sys.product_monomials;
    cert.has_functional = true;
    const int s = sys.basis.size();
    SymmetricMatrix q(s);
    double lp = 0;
    for (std::size_t k = 0; k < sys.product_monomials.size(); ++k) {
        const double v = -farkas_y[k];  // ell := -y, so Q_ell is PSD and ell(p) = -1
        cert.values.push_back(v);
        lp += v * to_double(p.coeff(sys.product_monomials[k]));
        for (int i = 0; i < s; ++i)
            for (int j = i; j < s; ++j)
                if (exponents_sum(sys.basis.monomials[i], sys.basis.monomials[j]) ==
                    sys.product_monomials[k])
                    q.at(i, j) = v;
    }
    cert.q_matrix = q;
    cert.value_on_p = lp;
    cert.delta = -lp;
    cert.q_lambda_min = eigendecompose(q).eigenvalues.back();
    return cert;
}

}  // namespace detail

/// SOS certification: necessary vertex checks, Newton-polytope basis pruning,
/// then an SDP feasibility problem. Returns a Gram certificate with extracted
/// squares, a dual refutation, or Indeterminate when the solver gives up.
inline CertifyResult certify_sos(const Polynomial& p, const CertifyOptions& opts = {}) {
    CertifyResult result;
    if (p.is_zero()) {
        result.status = CertifyStatus::Sos;
        GramCertificate cert;
        cert.basis = MonomialBasis{p.nvars(), 0, true, {}};
        result.certificate = std::move(cert);
        result.note = "zero polynomial: SOS with zero squares";
        return result;
    }

    const NecessaryCheck nc = sos_necessary_check(p);
    if (!nc.pass) {
        result.status = CertifyStatus::NotSos;
        NotSosCertificate cert;
        cert.reason = nc.reason;
        result.refutation = std::move(cert);
        result.note = "rejected by Newton polytope vertex conditions";
        return result;
    }

    MonomialBasis basis;
    if (opts.prune) {
        basis.nvars = p.nvars();
        basis.degree = p.degree() / 2;
        basis.exact_degree = p.is_homogeneous();
        basis.monomials = half_lattice_points(newton_polytope(p));
        if (basis.monomials.empty()) {
            result.status = CertifyStatus::NotSos;
            NotSosCertificate cert;
            cert.reason = "no candidate square supports in half the Newton polytope";
            result.refutation = std::move(cert);
            return result;
        }
    } else {
        basis = monomial_basis(p.nvars(), p.degree() / 2, p.is_homogeneous());
    }

    GramSystem sys = build_gram_sdp(p, basis);
    const SdpOutcome out = solve(sys.problem, opts.sdp);

    if (out.status == SdpStatus::Feasible || out.status == SdpStatus::Optimal) {
        GramCertificate cert;
        cert.basis = basis;
        cert.gram = out.x;
        cert.squares = detail::squares_from_gram(basis, out.x);
        cert.residual = detail::reconstruction_residual(p, sys, cert.squares);
        result.status = CertifyStatus::Sos;
        result.certificate = std::move(cert);
        return result;
    }
    if (out.status == SdpStatus::Infeasible) {
        result.status = CertifyStatus::NotSos;
        result.refutation = detail::refutation_from_farkas(p, sys, out.y);
        return result;
    }
    result.status = CertifyStatus::Indeterminate;
    result.note = "SDP did not converge: " + out.note;
    return result;
}

/// Hilbert's classification: nonnegative forms in n variables of degree 2d
/// are all sums of squares exactly for binary forms, quadratic forms, and
/// ternary quartics (n = 1 being trivial).
enum class HilbertCase { Equality, Strict };

inline HilbertCase hilbert_case(int n, int two_d) {
    if (n < 1 || two_d < 1) throw DimensionMismatch("hilbert_case: need n >= 1, 2d >= 1");
    if (two_d % 2 != 0) throw NotEvenDegree("hilbert_case: degree must be even");
    if (n <= 2 || two_d == 2 || (n == 3 && two_d == 4)) return HilbertCase::Equality;
    return HilbertCase::Strict;
}

struct NegativePoint {
    std::vector<Rational> point;
    Rational value;  // exact, < 0
};

/// Nonnegativity falsifier: seeded random restarts plus coordinate descent in
/// floats; any candidate is snapped to a rational point and its negativity
/// re-verified exactly before being returned. `budget` counts restarts.
inline std::optional<NegativePoint> find_negative_point(const Polynomial& p, long budget = 10000,
                                                        std::uint64_t seed = 0) {
    if (p.is_zero()) return std::nullopt;
    const int n = p.nvars();
    SplitMix64 rng(seed, 0x5eed);

    auto snap_and_verify = [&](const std::vector<double>& x) -> std::optional<NegativePoint> {
        std::vector<Rational> q(n);
        const Int denom = Int(1) << 26;
        for (int i = 0; i < n; ++i) {
            const double scaled = std::floor(x[i] * 67108864.0 + 0.5);
            q[i] = Rational(Int(static_cast<long long>(scaled)), denom);
        }
        const Rational v = p.evaluate(q);
        if (v < 0) return NegativePoint{std::move(q), v};
        return std::nullopt;
    };

    std::vector<double> x(n), trial(n);
    for (long r = 0; r < budget; ++r) {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(-2.0, 2.0);
        double fx = p.evaluate(x);
        double step = 0.5;
        for (int it = 0; it < 14 && fx >= -1e-9; ++it) {
            bool improved = false;
            for (int i = 0; i < n; ++i) {
                for (double dir : {step, -step}) {
                    trial = x;
                    trial[i] += dir;
                    const double ft = p.evaluate(trial);
                    if (ft < fx) {
                        fx = ft;
                        x = trial;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (fx < 0) {
            if (auto hit = snap_and_verify(x)) return hit;
        }
    }
    return std::nullopt;
}

}  // namespace soslab
