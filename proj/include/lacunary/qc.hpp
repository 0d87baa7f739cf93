#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunary/errors.hpp"
#include "lacunary/exact_sum.hpp"
#include "lacunary/norms.hpp"
#include "lacunary/rng.hpp"
#include "lacunary/trigpoly.hpp"

namespace lacunary {

/// QC-norm of a polynomial: the expected sup norm of the block sum with
/// independent uniform signs on the dyadic blocks,
///
///     E_eps || delta_0 + sum_{j>=1} eps_j delta_j ||_inf .
///
/// delta_0 keeps its sign (r_0 == 1 convention), so a nonzero constant
/// block is never flipped; identically zero blocks are skipped entirely.
/// Note that some of the literature randomizes all blocks including the
/// constant; for polynomials with delta_0 = 0 the two conventions agree.
struct QCEstimate {
    enum class Method { exact, monte_carlo };

    double value = 0.0;
    Method method = Method::exact;
    double inner_tol = 0.0;     // tolerance of every per-pattern sup enclosure
    int blocks = 0;             // randomized (nonzero, index >= 1) blocks
    // Monte Carlo only:
    std::uint64_t samples = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    std::string rng;            // generator name, for reproducibility
};

inline constexpr int kQcBlockCap = 14;
inline constexpr int kOskolkovCap = 20;
inline constexpr std::int64_t kLogPolyCap = std::int64_t{1} << 20;

namespace detail {

struct BlockGrids {
    std::size_t M = 0;
    std::vector<std::vector<double>> g0, g1, g2;  // per active block
};

inline BlockGrids make_block_grids(const std::vector<TrigPoly>& blocks, std::size_t M) {
    const Fft fft(M);
    BlockGrids bg;
    bg.M = M;
    for (const auto& b : blocks) {
        bg.g0.push_back(grid_values(b, M, 0, 0.0, fft));
        bg.g1.push_back(grid_values(b, M, 1, 0.0, fft));
        bg.g2.push_back(grid_values(b, M, 2, 0.0, fft));
    }
    return bg;
}

inline NormEnclosure pattern_sup(const BlockGrids& bg, double delta0, std::uint32_t mask,
                                 std::int64_t deg, double coeff_l1) {
    const std::size_t M = bg.M;
    const std::size_t n_blocks = bg.g0.size();
    SupAccumulator acc(std::numbers::pi / static_cast<double>(M));
    constexpr std::size_t kChunk = 4096;
    std::vector<double> c0(kChunk), c1(kChunk), c2(kChunk);
    for (std::size_t lo = 0; lo < M; lo += kChunk) {
        const std::size_t len = std::min(kChunk, M - lo);
        std::fill_n(c0.begin(), len, delta0);
        std::fill_n(c1.begin(), len, 0.0);
        std::fill_n(c2.begin(), len, 0.0);
        for (std::size_t b = 0; b < n_blocks; ++b) {
            const double sign = ((mask >> b) & 1u) ? -1.0 : 1.0;
            const double* g0 = bg.g0[b].data() + lo;
            const double* g1 = bg.g1[b].data() + lo;
            const double* g2 = bg.g2[b].data() + lo;
            for (std::size_t j = 0; j < len; ++j) {
                c0[j] += sign * g0[j];
                c1[j] += sign * g1[j];
                c2[j] += sign * g2[j];
            }
        }
        for (std::size_t j = 0; j < len; ++j) acc.feed(c0[j], c1[j], c2[j]);
    }
    return acc.finalize(deg, rounding_guard(coeff_l1, M), M);
}

// Certified sup midpoints (enclosure width <= inner_tol) for every mask in
// `masks` over the active blocks of t.  Shared by the exact enumeration and
// the Monte Carlo estimator; grids are computed once per level and reused
// across patterns.
inline std::vector<double> pattern_sup_midpoints(const TrigPoly& t,
                                                 const std::vector<TrigPoly>& blocks,
                                                 std::span<const std::uint32_t> masks,
                                                 double inner_tol, std::size_t grid_cap) {
    const std::int64_t deg = t.degree();
    const double coeff_l1 = t.coeff_l1();
    const double delta0 = t.constant();
    std::vector<double> mid(masks.size());
    if (deg == 0) {
        std::fill(mid.begin(), mid.end(), std::abs(delta0));
        return mid;
    }
    std::vector<std::size_t> open(masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) open[i] = i;
    std::size_t M = initial_grid(deg);
    if (M > grid_cap) throw CapError("qc: polynomial degree needs a grid beyond the cap");
    for (;;) {
        const BlockGrids bg = make_block_grids(blocks, M);
        double worst = 0.0;
        std::vector<std::size_t> still;
        for (const std::size_t idx : open) {
            const NormEnclosure e = pattern_sup(bg, delta0, masks[idx], deg, coeff_l1);
            if (e.width() <= inner_tol) {
                mid[idx] = e.midpoint();
            } else {
                worst = std::max(worst, e.width());
                still.push_back(idx);
            }
        }
        if (still.empty()) return mid;
        open = std::move(still);
        const std::size_t next = bumped_grid(M, std::cbrt(worst / inner_tol));
        if (next > grid_cap)
            throw CapError("qc: inner tolerance needs a grid beyond the cap");
        M = next;
    }
}

inline std::vector<TrigPoly> active_blocks(const TrigPoly& t) {
    std::vector<TrigPoly> blocks;
    for (int j = 1; j <= block_count(t); ++j) {
        TrigPoly b = dyadic_block(t, j);
        if (b.degree() > 0) blocks.push_back(std::move(b));
    }
    return blocks;
}

// Mean of the midpoints, sorted ascending before the pairwise tree sum, so
// the result is invariant under any permutation of equal multisets (block
// sign flips permute patterns but must not move the enumerated mean).
inline double sorted_pairwise_mean(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return pairwise_sum(v) / static_cast<double>(v.size());
}

}  // namespace detail

/// Exact sign-pattern enumeration of the QC-norm: the mean over all 2^B
/// patterns of certified sup midpoints; total uncertainty <= inner_tol.
inline QCEstimate qc_exact(const TrigPoly& t, double inner_tol,
                           std::size_t grid_cap = kDefaultGridCap) {
    if (!(inner_tol > 0.0)) throw std::invalid_argument("qc_exact: inner_tol must be > 0");
    if (t.degree() > (std::int64_t{1} << kQcBlockCap) - 1)
        throw CapError("qc_exact: degree exceeds 2^" + std::to_string(kQcBlockCap) +
                       " - 1; use qc_monte_carlo");
    const auto blocks = detail::active_blocks(t);
    const int B = static_cast<int>(blocks.size());
    std::vector<std::uint32_t> masks(std::size_t{1} << B);
    for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = static_cast<std::uint32_t>(m);
    const auto mids = detail::pattern_sup_midpoints(t, blocks, masks, inner_tol, grid_cap);
    QCEstimate est;
    est.method = QCEstimate::Method::exact;
    est.value = detail::sorted_pairwise_mean(mids);
    est.inner_tol = inner_tol;
    est.blocks = B;
    return est;
}

/// Seeded Monte Carlo estimate of the QC-norm.  Sign patterns come from the
/// counter-based generator (draw i yields pattern bits), so the same seed
/// and sample count reproduce the estimate bit for bit regardless of how
/// the work is split.
inline QCEstimate qc_monte_carlo(const TrigPoly& t, std::uint64_t samples,
                                 std::uint64_t seed, double inner_tol,
                                 std::size_t grid_cap = kDefaultGridCap) {
    if (!(inner_tol > 0.0)) throw std::invalid_argument("qc_monte_carlo: inner_tol must be > 0");
    if (samples < 2) throw std::invalid_argument("qc_monte_carlo: need samples >= 2");
    const auto blocks = detail::active_blocks(t);
    const int B = static_cast<int>(blocks.size());
    const CounterRng rng{seed};
    std::vector<std::uint32_t> drawn(samples);
    for (std::uint64_t i = 0; i < samples; ++i)
        drawn[i] = static_cast<std::uint32_t>(rng.at(i) & ((std::uint64_t{1} << B) - 1));

    // evaluate each distinct pattern once
    std::vector<std::uint32_t> distinct(drawn);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const auto mids = detail::pattern_sup_midpoints(t, blocks, distinct, inner_tol, grid_cap);
    std::map<std::uint32_t, double> lookup;
    for (std::size_t i = 0; i < distinct.size(); ++i) lookup[distinct[i]] = mids[i];

    std::vector<double> values(samples);
    for (std::uint64_t i = 0; i < samples; ++i) values[i] = lookup[drawn[i]];
    const double mean = detail::pairwise_sum(values) / static_cast<double>(samples);
    std::vector<double> sq(samples);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double d = values[i] - mean;
        sq[i] = d * d;
    }
    const double var = detail::pairwise_sum(sq) / static_cast<double>(samples - 1);

    QCEstimate est;
    est.method = QCEstimate::Method::monte_carlo;
    est.value = mean;
    est.inner_tol = inner_tol;
    est.blocks = B;
    est.samples = samples;
    est.std_error = std::sqrt(var / static_cast<double>(samples));
    est.seed = seed;
    est.rng = CounterRng::kName;
    return est;
}

/// The classical extremal example for sup vs QC growth:
///   t(x) = sum_{j=1}^{n} 2^{1-j} sum_{k=2^{j-1}}^{2^j-1} cos kx,
/// with t(0) = n and degree 2^n - 1.
inline TrigPoly oskolkov_poly(int n) {
    if (n < 1) throw std::invalid_argument("oskolkov_poly: n must be >= 1");
    if (n > kOskolkovCap)
        throw CapError("oskolkov_poly: n exceeds the cap " + std::to_string(kOskolkovCap));
    std::vector<double> a((std::size_t{1} << n) - 1, 0.0);
    for (int j = 1; j <= n; ++j) {
        const double amp = std::ldexp(1.0, 1 - j);
        for (std::int64_t k = std::int64_t{1} << (j - 1); k <= (std::int64_t{1} << j) - 1; ++k)
            a[static_cast<std::size_t>(k - 1)] = amp;
    }
    return TrigPoly::from_cos(0.0, std::move(a));
}

/// sum_{n=1}^{N} cos(nx)/n.
inline TrigPoly log_poly(std::int64_t N) {
    if (N < 2) throw std::invalid_argument("log_poly: N must be >= 2");
    if (N > kLogPolyCap) throw CapError("log_poly: N exceeds the cap 2^20");
    std::vector<double> a(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n)
        a[static_cast<std::size_t>(n - 1)] = 1.0 / static_cast<double>(n);
    return TrigPoly::from_cos(0.0, std::move(a));
}

struct VariationReport {
    struct Row {
        int j = 0;
        double lhs = 0.0;    // |a_{2^j-1}| + sum |a_k - a_{k+1}| over the block
        double bound = 0.0;  // 2^-j
        bool holds = false;  // exact comparison
    };
    std::vector<Row> rows;
    bool all_hold = true;
};

/// Blockwise coefficient-variation hypothesis
///   |a_{2^j-1}| + sum_{k=2^{j-1}}^{2^j-2} |a_k - a_{k+1}| <= 2^-j
/// for j = 1..n (the j = 1 sum is empty); coefficients are 1-based and the
/// array length must be 2^n - 1.  Left sides are accumulated error-free,
/// so boundary cases (equality) get exact verdicts.
inline VariationReport variation_hypothesis_check(std::span<const double> a) {
    const std::size_t len = a.size();
    std::size_t p = len + 1;
    if (len == 0 || (p & (p - 1)) != 0)
        throw std::invalid_argument("variation_hypothesis_check: length must be 2^n - 1");
    VariationReport report;
    for (int j = 1; (std::size_t{1} << j) - 1 <= len; ++j) {
        detail::ExactSum lhs;
        const std::size_t top = (std::size_t{1} << j) - 1;  // 2^j - 1, 1-based
        lhs.add(std::abs(a[top - 1]));
        for (std::size_t k = std::size_t{1} << (j - 1); k + 1 <= top; ++k)
            lhs.add_abs_diff(a[k - 1], a[k]);
        VariationReport::Row row;
        row.j = j;
        row.lhs = lhs.approx();
        row.bound = std::ldexp(1.0, -j);
        row.holds = lhs.compare(row.bound) <= 0;
        report.rows.push_back(row);
        report.all_hold = report.all_hold && row.holds;
    }
    return report;
}

/// (sum_{j>=1} delta_j(t, 0)^2)^{1/2}: the constant-free part of the QC
/// lower-bound chain (block values at zero are plain cosine-coefficient
/// sums; sine terms vanish).
inline double qc_block_lower_proxy(const TrigPoly& t) {
    std::vector<double> sq;
    for (int j = 1; j <= block_count(t); ++j) {
        const TrigPoly b = dyadic_block(t, j);
        double v = 0.0;
        for (std::int64_t k = 1; k <= b.rep_degree(); ++k) v += b.cos_coeff(k);
        sq.push_back(v * v);
    }
    return std::sqrt(detail::pairwise_sum(sq));
}

/// Diagnostic only: distance on a grid between the sign-randomized Oskolkov
/// block sum and its step comparison function
///   g(x) = sum_j eps_j 1_{[-pi 2^-j, pi 2^-j]}(x),  x in [-pi, pi).
/// No specific bound is asserted; callers regression-lock what they observe.
inline double oskolkov_step_gap(int n, std::uint32_t mask, std::size_t grid_points = 1 << 14) {
    const TrigPoly t = oskolkov_poly(n);
    std::vector<TrigPoly> blocks;
    for (int j = 1; j <= n; ++j) blocks.push_back(dyadic_block(t, j));
    double worst = 0.0;
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = -pi + 2.0 * pi * (static_cast<double>(i) + 0.5) /
                                    static_cast<double>(grid_points);
        double tw = 0.0, gw = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double sign = ((mask >> (j - 1)) & 1u) ? -1.0 : 1.0;
            tw += sign * eval(blocks[static_cast<std::size_t>(j - 1)], x);
            if (std::abs(x) <= pi * std::ldexp(1.0, -j)) gw += sign;
        }
        worst = std::max(worst, std::abs(tw - gw));
    }
    return worst;
}

}  // namespace lacunary
