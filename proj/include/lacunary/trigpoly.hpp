#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lacunary/fft.hpp"

namespace lacunary {

/// Real trigonometric polynomial
///
///   t(x) = constant + sum_{k=1}^{N} (cos_coeff(k) cos kx + sin_coeff(k) sin kx)
///
/// with N the representation degree.  In canonical form either N == 0 or the
/// top (cos, sin) pair is nonzero, so N equals the exact degree.  Values are
/// immutable after construction; all operations are pure functions.
class TrigPoly {
public:
    TrigPoly() : constant_(0.0) {}
    explicit TrigPoly(double constant) : constant_(constant) {}
    TrigPoly(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
        : constant_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
        if (cos_.size() != sin_.size())
            throw std::invalid_argument("TrigPoly: cos/sin coefficient arrays differ in length");
    }

    /// Pure cosine polynomial (sines all zero).
    static TrigPoly from_cos(double constant, std::vector<double> cos_coeffs) {
        std::vector<double> zeros(cos_coeffs.size(), 0.0);
        return TrigPoly(constant, std::move(cos_coeffs), std::move(zeros));
    }

    /// amp * cos(kx) or amp * sin(kx); k == 0 gives the constant amp.
    static TrigPoly harmonic(std::int64_t k, double amp, bool sine = false) {
        if (k < 0) throw std::invalid_argument("TrigPoly: negative frequency");
        if (k == 0) return TrigPoly(sine ? 0.0 : amp);
        std::vector<double> c(static_cast<std::size_t>(k), 0.0), s(static_cast<std::size_t>(k), 0.0);
        (sine ? s : c).back() = amp;
        return TrigPoly(0.0, std::move(c), std::move(s));
    }

    double constant() const { return constant_; }
    /// Representation degree N (array length), not necessarily the exact degree.
    std::int64_t rep_degree() const { return static_cast<std::int64_t>(cos_.size()); }
    /// Exact degree: largest k with a nonzero coefficient pair (0 for constants).
    std::int64_t degree() const {
        for (std::size_t k = cos_.size(); k > 0; --k)
            if (cos_[k - 1] != 0.0 || sin_[k - 1] != 0.0) return static_cast<std::int64_t>(k);
        return 0;
    }
    bool is_canonical() const { return rep_degree() == degree(); }
    TrigPoly canonicalized() const {
        const auto d = static_cast<std::size_t>(degree());
        return TrigPoly(constant_,
                        std::vector<double>(cos_.begin(), cos_.begin() + d),
                        std::vector<double>(sin_.begin(), sin_.begin() + d));
    }

    /// Coefficient of cos kx (k >= 1); zero beyond the representation degree.
    double cos_coeff(std::int64_t k) const {
        return (k >= 1 && k <= rep_degree()) ? cos_[static_cast<std::size_t>(k - 1)] : 0.0;
    }
    double sin_coeff(std::int64_t k) const {
        return (k >= 1 && k <= rep_degree()) ? sin_[static_cast<std::size_t>(k - 1)] : 0.0;
    }
    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }

    /// |A| + sum(|a_k| + |b_k|): certified bound for the sup norm.
    double coeff_l1() const {
        double s = std::abs(constant_);
        for (std::size_t i = 0; i < cos_.size(); ++i) s += std::abs(cos_[i]) + std::abs(sin_[i]);
        return s;
    }

    friend TrigPoly operator+(const TrigPoly& s, const TrigPoly& t) {
        const std::size_t n = std::max(s.cos_.size(), t.cos_.size());
        std::vector<double> c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = (i < s.cos_.size() ? s.cos_[i] : 0.0) + (i < t.cos_.size() ? t.cos_[i] : 0.0);
            d[i] = (i < s.sin_.size() ? s.sin_[i] : 0.0) + (i < t.sin_.size() ? t.sin_[i] : 0.0);
        }
        return TrigPoly(s.constant_ + t.constant_, std::move(c), std::move(d));
    }

    friend TrigPoly operator*(double alpha, const TrigPoly& t) {
        std::vector<double> c(t.cos_), d(t.sin_);
        for (auto& v : c) v *= alpha;
        for (auto& v : d) v *= alpha;
        return TrigPoly(alpha * t.constant_, std::move(c), std::move(d));
    }

private:
    double constant_;
    std::vector<double> cos_, sin_;
};

/// t(x), accumulated left to right over ascending k (fixed order, so results
/// are reproducible bit for bit).
inline double eval(const TrigPoly& t, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("eval: x must be finite");
    double s = t.constant();
    const auto& a = t.cos_coeffs();
    const auto& b = t.sin_coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double kx = static_cast<double>(i + 1) * x;
        s += a[i] * std::cos(kx) + b[i] * std::sin(kx);
    }
    return s;
}

/// Pointwise product, expanded to coefficients through the product-to-sum
/// identities.  Representation degree of the result is deg(s) + deg(t).
inline TrigPoly multiply(const TrigPoly& s, const TrigPoly& t) {
    const TrigPoly sc = s.canonicalized(), tc = t.canonicalized();
    const std::int64_t ns = sc.degree(), nt = tc.degree();
    const auto nr = static_cast<std::size_t>(ns + nt);
    double constant = sc.constant() * tc.constant();
    std::vector<double> rc(nr, 0.0), rs(nr, 0.0);

    auto add_cos = [&](std::int64_t m, double v) {
        if (m < 0) m = -m;
        if (m == 0)
            constant += v;
        else
            rc[static_cast<std::size_t>(m - 1)] += v;
    };
    auto add_sin = [&](std::int64_t m, double v) {
        if (m == 0) return;
        if (m < 0)
            rs[static_cast<std::size_t>(-m - 1)] -= v;
        else
            rs[static_cast<std::size_t>(m - 1)] += v;
    };

    for (std::int64_t j = 1; j <= nt; ++j) {
        add_cos(j, sc.constant() * tc.cos_coeff(j));
        add_sin(j, sc.constant() * tc.sin_coeff(j));
    }
    for (std::int64_t i = 1; i <= ns; ++i) {
        add_cos(i, tc.constant() * sc.cos_coeff(i));
        add_sin(i, tc.constant() * sc.sin_coeff(i));
        const double ai = sc.cos_coeff(i), bi = sc.sin_coeff(i);
        if (ai == 0.0 && bi == 0.0) continue;
        for (std::int64_t j = 1; j <= nt; ++j) {
            const double cj = tc.cos_coeff(j), dj = tc.sin_coeff(j);
            if (cj != 0.0) {
                add_cos(i - j, 0.5 * ai * cj);   // cos i cos j
                add_cos(i + j, 0.5 * ai * cj);
                add_sin(i + j, 0.5 * bi * cj);   // sin i cos j
                add_sin(i - j, 0.5 * bi * cj);
            }
            if (dj != 0.0) {
                add_cos(i - j, 0.5 * bi * dj);   // sin i sin j
                add_cos(i + j, -0.5 * bi * dj);
                add_sin(i + j, 0.5 * ai * dj);   // cos i sin j
                add_sin(i - j, -0.5 * ai * dj);
            }
        }
    }
    return TrigPoly(constant, std::move(rc), std::move(rs));
}

/// Littlewood-Paley block: n == 0 gives the constant term, n >= 1 the
/// sub-polynomial with frequencies k in [2^{n-1}, 2^n - 1].  Blocks
/// partition the coefficients.
inline TrigPoly dyadic_block(const TrigPoly& t, int n) {
    if (n < 0) throw std::invalid_argument("dyadic_block: negative block index");
    if (n == 0) return TrigPoly(t.constant());
    if (n > 62) return TrigPoly();
    const std::int64_t lo = std::int64_t{1} << (n - 1);
    const std::int64_t hi = std::min((std::int64_t{1} << n) - 1, t.rep_degree());
    if (lo > hi) return TrigPoly();
    std::vector<double> c(static_cast<std::size_t>(hi), 0.0), s(static_cast<std::size_t>(hi), 0.0);
    for (std::int64_t k = lo; k <= hi; ++k) {
        c[static_cast<std::size_t>(k - 1)] = t.cos_coeff(k);
        s[static_cast<std::size_t>(k - 1)] = t.sin_coeff(k);
    }
    return TrigPoly(0.0, std::move(c), std::move(s)).canonicalized();
}

/// Number of dyadic blocks needed to cover deg(t): deg <= 2^B - 1.
inline int block_count(const TrigPoly& t) {
    const std::int64_t d = t.degree();
    int b = 0;
    while ((std::int64_t{1} << b) - 1 < d) ++b;
    return b;
}

/// Exact L2(0, 2pi) norm by the Parseval identity:
/// sqrt(2 pi A^2 + pi sum(a_k^2 + b_k^2)).
inline double norm_l2_exact(const TrigPoly& t) {
    const auto& a = t.cos_coeffs();
    const auto& b = t.sin_coeffs();
    std::vector<double> sq(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sq[i] = a[i] * a[i] + b[i] * b[i];
    const double s = detail::pairwise_sum(sq);
    const double pi = std::numbers::pi;
    return std::sqrt(2.0 * pi * t.constant() * t.constant() + pi * s);
}

}  // namespace lacunary
