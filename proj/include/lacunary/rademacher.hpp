#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacunary/errors.hpp"
#include "lacunary/fft.hpp"
#include "lacunary/rational.hpp"

namespace lacunary {

inline constexpr int kEnumerationCap = 24;

/// r_n(x) on [0, 1]: +1 on odd dyadic cells ((i-1)/2^n, i/2^n), -1 on even
/// cells, exactly 0 at every dyadic endpoint i/2^n; r_0 == 1 on (0, 1).
/// Cell membership is decided on ldexp(x, n), which is exact, so endpoint
/// detection never suffers rounding.
inline int rademacher_value(int n, double x) {
    if (n < 0) throw std::invalid_argument("rademacher_value: n must be >= 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("rademacher_value: x must lie in [0, 1]");
    const double y = std::ldexp(x, n);  // x * 2^n
    if (y == std::floor(y)) return 0;   // dyadic endpoint (covers x = 0, 1)
    if (n == 0) return 1;
    const auto cell = static_cast<std::uint64_t>(y);  // 0-based cell index
    return (cell & 1) ? -1 : 1;
}

/// Exact value of r_n on the 0-based cell i of the uniform 2^depth grid
/// (requires n <= depth; endpoints have measure zero and are not
/// represented).  Used by the cell-counting identities and by `walsh`.
inline int rademacher_cell(int n, std::uint64_t cell, int depth) {
    if (n < 0 || n > depth) throw std::invalid_argument("rademacher_cell: need 0 <= n <= depth");
    if (n == 0) return 1;
    return ((cell >> (depth - n)) & 1) ? -1 : 1;
}

/// Exact law of sum a_j eps_j over uniform signs: support values ascending,
/// bit-equal duplicates merged, pattern counts out of 2^n.
struct SignDistribution {
    std::vector<double> values;
    std::vector<std::uint64_t> counts;
    int n = 0;

    Rational measure_at(std::size_t i) const {
        return Rational(static_cast<std::int64_t>(counts[i]), std::int64_t{1} << n);
    }
};

namespace detail {

inline void check_enumeration_cap(std::size_t n, int cap) {
    if (static_cast<int>(n) > cap)
        throw CapError("rademacher: coefficient count " + std::to_string(n) +
                       " exceeds the enumeration cap " + std::to_string(cap));
}

inline double l2_norm(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

}  // namespace detail

/// Enumerates all 2^n sign patterns; each contributes measure 2^-n.  Sums
/// are accumulated over ascending j so equal patterns collapse bit-exactly.
inline SignDistribution exact_sum_distribution(std::span<const double> a,
                                               int cap = kEnumerationCap) {
    detail::check_enumeration_cap(a.size(), cap);
    const int n = static_cast<int>(a.size());
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<double> sums(total);
    for (std::uint64_t p = 0; p < total; ++p) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += ((p >> j) & 1) ? -a[j] : a[j];
        sums[p] = s;
    }
    std::sort(sums.begin(), sums.end());
    SignDistribution dist;
    dist.n = n;
    for (std::uint64_t i = 0; i < total;) {
        std::uint64_t j = i;
        while (j < total && sums[j] == sums[i]) ++j;
        dist.values.push_back(sums[i]);
        dist.counts.push_back(j - i);
        i = j;
    }
    return dist;
}

struct TailReport {
    Rational measure;  // exact mes{ |sum a_j r_j| > lambda ||a||_2 }
    double bound = 0.0;
    bool holds = false;
};

/// Subgaussian tail audit: the exact exceedance measure against
/// 2 exp(-lambda^2/2).  The exceedance is strict (">"); ties at a support
/// point count as non-exceeding.
inline TailReport khintchine_tail_check(std::span<const double> a, double lambda,
                                        int cap = kEnumerationCap) {
    if (lambda < 0.0) throw std::invalid_argument("khintchine_tail_check: lambda must be >= 0");
    const SignDistribution dist = exact_sum_distribution(a, cap);
    const double threshold = lambda * detail::l2_norm(a);
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < dist.values.size(); ++i)
        if (std::abs(dist.values[i]) > threshold) count += dist.counts[i];
    TailReport r;
    r.measure = Rational(static_cast<std::int64_t>(count), std::int64_t{1} << dist.n);
    r.bound = 2.0 * std::exp(-0.5 * lambda * lambda);
    r.holds = r.measure.to_double() <= r.bound;
    return r;
}

/// E|sum a_j eps_j| / ||a||_2, exact enumeration (one rounding per product,
/// pairwise-summed).
inline double khintchine_l1_ratio(std::span<const double> a, int cap = kEnumerationCap) {
    const double norm = detail::l2_norm(a);
    if (norm == 0.0) throw std::invalid_argument("khintchine_l1_ratio: zero coefficient vector");
    const SignDistribution dist = exact_sum_distribution(a, cap);
    std::vector<double> terms(dist.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = std::abs(dist.values[i]) * static_cast<double>(dist.counts[i]);
    const double mean = detail::pairwise_sum(terms) / std::ldexp(1.0, dist.n);
    return mean / norm;
}

/// E max_{1<=k<=n} |sum_{j<=k} a_j eps_j| / ||a||_2, exact enumeration.
inline double max_partial_ratio(std::span<const double> a, int cap = kEnumerationCap) {
    detail::check_enumeration_cap(a.size(), cap);
    const double norm = detail::l2_norm(a);
    if (norm == 0.0) throw std::invalid_argument("max_partial_ratio: zero coefficient vector");
    const int n = static_cast<int>(a.size());
    const std::uint64_t total = std::uint64_t{1} << n;
    // Neumaier-compensated accumulation in pattern order.
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t p = 0; p < total; ++p) {
        double s = 0.0, m = 0.0;
        for (int j = 0; j < n; ++j) {
            s += ((p >> j) & 1) ? -a[j] : a[j];
            m = std::max(m, std::abs(s));
        }
        const double t = sum + m;
        comp += (std::abs(sum) >= std::abs(m)) ? (sum - t) + m : (m - t) + sum;
        sum = t;
    }
    return (sum + comp) / std::ldexp(1.0, n) / norm;
}

}  // namespace lacunary
