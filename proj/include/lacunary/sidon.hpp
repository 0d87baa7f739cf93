#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "lacunary/norms.hpp"
#include "lacunary/trigpoly.hpp"

namespace lacunary {

/// Strictly increasing positive integers; lambda_floor records the largest
/// ratio bound the sequence has been verified against (0 when unverified).
struct LacunarySequence {
    std::vector<std::int64_t> terms;
    double lambda_floor = 0.0;
};

namespace detail {

// n1 >= lambda * n0, decided exactly: a double lambda is mant * 2^exp with
// an integer mantissa, so the comparison reduces to 128-bit integers.
inline bool ratio_at_least(std::int64_t n0, std::int64_t n1, double lambda) {
    int exp = 0;
    double m = std::frexp(lambda, &exp);
    while (m != std::floor(m)) {
        m *= 2.0;
        --exp;
    }
    const auto mant = static_cast<__int128>(m);
    __int128 lhs = n1, rhs = static_cast<__int128>(n0) * mant;
    if (exp >= 0)
        rhs <<= exp;
    else
        lhs <<= -exp;
    return lhs >= rhs;
}

}  // namespace detail

/// True iff the terms are strictly increasing positive integers with every
/// consecutive ratio >= lambda (exact integer comparison).
inline bool validate_lacunary(std::span<const std::int64_t> terms, double lambda) {
    if (terms.empty()) throw std::invalid_argument("validate_lacunary: empty sequence");
    if (!(lambda > 1.0)) throw std::invalid_argument("validate_lacunary: lambda must be > 1");
    if (terms[0] <= 0) return false;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
        if (terms[i + 1] <= terms[i]) return false;
        if (!detail::ratio_at_least(terms[i], terms[i + 1], lambda)) return false;
    }
    return true;
}

/// Splits a Lambda(lambda) sequence into d = ceil(ln 7 / ln lambda)
/// interleaved subsequences, each in Lambda(7): subsequence j takes the
/// terms at positions j, j+d, j+2d, ...  Their disjoint union is the input.
inline std::vector<std::vector<std::int64_t>> split_lacunary(
    std::span<const std::int64_t> terms, double lambda) {
    if (!validate_lacunary(terms, lambda))
        throw std::invalid_argument("split_lacunary: input is not in Lambda(lambda)");
    const int d = static_cast<int>(std::ceil(std::log(7.0) / std::log(lambda)));
    std::vector<std::vector<std::int64_t>> parts(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < terms.size(); ++i)
        parts[i % static_cast<std::size_t>(d)].push_back(terms[i]);
    return parts;
}

/// gamma = min((lambda - 1) / (2 (1 + eps)), 1 / (1 + eps)).
inline double gamma_bound(double lambda, double eps) {
    if (!(lambda > 1.0)) throw std::invalid_argument("gamma_bound: lambda must be > 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("gamma_bound: eps must be in (0,1)");
    return std::min((lambda - 1.0) / (2.0 * (1.0 + eps)), 1.0 / (1.0 + eps));
}

/// Admissible envelope degrees r_l..r_m for the modulated family over
/// seq (1-based indices):
///   r_l = min((n_{l+1} - n_l) / (2(1+eps)), n_l / (1+eps)),
///   r_k = min(half-gaps on both sides, B n_l)       for l < k < m,
///   r_m = min((n_m - n_{m-1}) / (2(1+eps)), B n_l).
inline std::vector<double> admissible_degrees(std::span<const std::int64_t> seq, int l, int m,
                                              double eps, double B) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("admissible_degrees: eps must be in (0,1)");
    if (!(B >= 1.0)) throw std::invalid_argument("admissible_degrees: B must be >= 1");
    if (l < 1 || m < l + 2 || static_cast<std::size_t>(m) > seq.size())
        throw std::invalid_argument("admissible_degrees: need 1 <= l, l+2 <= m <= seq length");
    const auto n = [&](int k) { return static_cast<double>(seq[static_cast<std::size_t>(k - 1)]); };
    const double scale = 2.0 * (1.0 + eps);
    std::vector<double> r;
    r.push_back(std::min((n(l + 1) - n(l)) / scale, n(l) / (1.0 + eps)));
    for (int k = l + 1; k <= m - 1; ++k)
        r.push_back(std::min({(n(k) - n(k - 1)) / scale, (n(k + 1) - n(k)) / scale, B * n(l)}));
    r.push_back(std::min((n(m) - n(m - 1)) / scale, B * n(l)));
    return r;
}

/// Envelope family for f = sum_{k=l}^{m} (p_k cos n_k x + q_k sin n_k x).
struct ModulatedPolynomialFamily {
    LacunarySequence seq;
    int l = 1, m = 1;            // 1-based inclusive indices into seq.terms
    std::vector<TrigPoly> p, q;  // envelopes for k = l..m
};

inline void check_family(const ModulatedPolynomialFamily& fam) {
    const auto count = static_cast<std::size_t>(fam.m - fam.l + 1);
    if (fam.l < 1 || fam.m < fam.l || static_cast<std::size_t>(fam.m) > fam.seq.terms.size())
        throw std::invalid_argument("family: indices out of range");
    if (fam.p.size() != count || fam.q.size() != count)
        throw std::invalid_argument("family: need one p_k and one q_k per index");
}

/// deg(p_k), deg(q_k) <= floor(r_k) for every k, with r_k from
/// admissible_degrees(eps, B).
inline bool family_admissible(const ModulatedPolynomialFamily& fam, double eps, double B) {
    check_family(fam);
    const auto r = admissible_degrees(fam.seq.terms, fam.l, fam.m, eps, B);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const auto cap = static_cast<std::int64_t>(std::floor(r[i]));
        if (fam.p[i].degree() > cap || fam.q[i].degree() > cap) return false;
    }
    return true;
}

/// Exact coefficient expansion of sum (p_k cos n_k x + q_k sin n_k x).
inline TrigPoly assemble_modulated(const ModulatedPolynomialFamily& fam) {
    check_family(fam);
    TrigPoly f;
    for (int k = fam.l; k <= fam.m; ++k) {
        const auto i = static_cast<std::size_t>(k - fam.l);
        const std::int64_t nk = fam.seq.terms[static_cast<std::size_t>(k - 1)];
        f = f + multiply(fam.p[i], TrigPoly::harmonic(nk, 1.0));
        f = f + multiply(fam.q[i], TrigPoly::harmonic(nk, 1.0, /*sine=*/true));
    }
    return f.canonicalized();
}

/// Empirical audit of the modulated Sidon lower bound.  The denominator is
/// the envelope L1 mass on the normalized circle, sum ||p_k||_1 + ||q_k||_1
/// over 2 pi, so constant envelopes contribute |alpha_k| + |beta_k| and a
/// single-term family has ratio exactly 1.  `envelope_sup_sum` is the
/// triangle-inequality upper certificate sum(||p_k||_inf + ||q_k||_inf).
struct SidonRatioReport {
    NormEnclosure sup;
    double denom = 0.0;
    double ratio_lower = 0.0;
    double ratio_upper = 0.0;
    double envelope_sup_sum = 0.0;
};

inline SidonRatioReport sidon_ratio(const ModulatedPolynomialFamily& fam, double tol = 1e-6,
                                    std::size_t grid_cap = kDefaultGridCap) {
    check_family(fam);
    SidonRatioReport rep;
    double denom = 0.0;
    for (std::size_t i = 0; i < fam.p.size(); ++i) {
        denom += norm_l1(fam.p[i], tol, grid_cap).midpoint();
        denom += norm_l1(fam.q[i], tol, grid_cap).midpoint();
        rep.envelope_sup_sum += norm_sup(fam.p[i], tol, grid_cap).upper;
        rep.envelope_sup_sum += norm_sup(fam.q[i], tol, grid_cap).upper;
    }
    denom /= 2.0 * std::numbers::pi;
    if (!(denom > 0.0)) throw std::invalid_argument("sidon_ratio: all envelopes are zero");
    rep.denom = denom;
    rep.sup = norm_sup(assemble_modulated(fam), tol, grid_cap);
    rep.ratio_lower = rep.sup.lower / denom;
    rep.ratio_upper = rep.sup.upper / denom;
    return rep;
}

/// Classical Riesz product prod_{k=1}^{m} (1 + cos n_k x), expanded to
/// exact coefficients.  Requires ratio >= 3 among the first m terms: then
/// every subset-sum frequency is uniquely represented, so the constant
/// term is exactly 1 and the product is pointwise nonnegative.
inline TrigPoly riesz_product(const LacunarySequence& seq, int m) {
    if (m < 1 || static_cast<std::size_t>(m) > seq.terms.size())
        throw std::invalid_argument("riesz_product: m out of range");
    const std::span<const std::int64_t> prefix(seq.terms.data(), static_cast<std::size_t>(m));
    if (!validate_lacunary(prefix, 3.0))
        throw std::invalid_argument("riesz_product: first m terms must have ratio >= 3");
    TrigPoly product(1.0);
    for (int k = 0; k < m; ++k) {
        const TrigPoly factor = TrigPoly(1.0) + TrigPoly::harmonic(seq.terms[static_cast<std::size_t>(k)], 1.0);
        product = multiply(product, factor);
    }
    return product;
}

/// n_{k+1} = max(ceil(lambda n_k), n_k + 1), a convenient Lambda(lambda)
/// generator for experiments and randomized audits.
inline LacunarySequence geometric_sequence(double lambda, std::int64_t first, int count) {
    if (!(lambda > 1.0) || first < 1 || count < 1)
        throw std::invalid_argument("geometric_sequence: need lambda > 1, first >= 1, count >= 1");
    LacunarySequence seq;
    seq.terms.reserve(static_cast<std::size_t>(count));
    std::int64_t n = first;
    for (int i = 0; i < count; ++i) {
        seq.terms.push_back(n);
        const double next = std::ceil(lambda * static_cast<double>(n));
        if (next > 4.0e18) throw std::overflow_error("geometric_sequence: terms exceed int64");
        n = std::max(static_cast<std::int64_t>(next), n + 1);
    }
    seq.lambda_floor = validate_lacunary(seq.terms, lambda) ? lambda : 0.0;
    return seq;
}

}  // namespace lacunary
