#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacunary/errors.hpp"
#include "lacunary/fft.hpp"
#include "lacunary/trigpoly.hpp"

namespace lacunary {

enum class NormKind { sup, l1 };

/// Rigorous bracket [lower, upper] around a norm value.  `grid_points` is
/// the final grid size the bracket was certified on.
struct NormEnclosure {
    double lower = 0.0;
    double upper = 0.0;
    NormKind p = NormKind::sup;
    std::uint64_t grid_points = 0;

    double width() const { return upper - lower; }
    double midpoint() const { return 0.5 * (lower + upper); }
    bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Thrown when the requested tolerance would need a grid beyond the cap.
/// Carries the best enclosure achieved so callers can still use it.
class CapExceededError : public CapError {
public:
    CapExceededError(const std::string& what, NormEnclosure best)
        : CapError(what), best_achieved(best) {}
    NormEnclosure best_achieved;
};

inline constexpr std::size_t kDefaultGridCap = std::size_t{1} << 24;

namespace detail {

// Values of the deriv-th derivative of t at x_j = 2 pi j / M + offset,
// j = 0..M-1, computed by one length-M transform of the (twisted) complex
// coefficients c_0 = A, c_k = a_k - i b_k.
inline std::vector<double> grid_values(const TrigPoly& t, std::size_t M, int deriv,
                                       double offset, const Fft& fft) {
    std::vector<std::complex<double>> z(M, {0.0, 0.0});
    if (deriv == 0) z[0] = {t.constant(), 0.0};
    const auto n = static_cast<std::size_t>(t.rep_degree());
    for (std::size_t i = 0; i < n && i + 1 < M; ++i) {
        const double k = static_cast<double>(i + 1);
        std::complex<double> c{t.cos_coeffs()[i], -t.sin_coeffs()[i]};
        if (deriv == 1)
            c *= std::complex<double>{0.0, k};
        else if (deriv == 2)
            c *= -k * k;
        if (offset != 0.0) c *= std::polar(1.0, k * offset);
        z[i + 1] = c;
    }
    fft.transform(z);
    std::vector<double> out(M);
    for (std::size_t j = 0; j < M; ++j) out[j] = z[j].real();
    return out;
}

// Streaming certificate for sup|t| from samples of t, t', t'' at spacing 2d.
// Around each sample x_j, Taylor with Lagrange remainder gives
//   |t(x_j + h)| <= |q_j(h)| + (d^3/6) ||t'''||,   |h| <= d,
// with q_j the local quadratic model, and Bernstein bounds the remainder by
// (d N)^3/6 times the (unknown) sup itself; solving the self-referential
// bound yields   sup <= max_j sup|q_j| / (1 - (dN)^3/6).
class SupAccumulator {
public:
    explicit SupAccumulator(double half_spacing) : d_(half_spacing) {}

    void feed(double t0, double t1, double t2) {
        max_abs_ = std::max(max_abs_, std::abs(t0));
        const double shift = d_ * t1, bend = 0.5 * d_ * d_ * t2;
        double q = std::max(std::abs(t0 - shift + bend), std::abs(t0 + shift + bend));
        if (t2 != 0.0) {
            const double h_crit = -t1 / t2;
            if (std::abs(h_crit) < d_)
                q = std::max(q, std::abs(t0 - 0.5 * t1 * t1 / t2));
        }
        max_q_ = std::max(max_q_, q);
    }

    NormEnclosure finalize(std::int64_t deg, double rounding_guard, std::size_t M) const {
        const double theta = static_cast<double>(deg) * d_;
        const double beta = theta * theta * theta / 6.0;
        NormEnclosure e;
        e.p = NormKind::sup;
        e.grid_points = M;
        e.lower = std::max(0.0, max_abs_ - rounding_guard);
        e.upper = std::max(e.lower, (max_q_ + 2.0 * rounding_guard) / (1.0 - beta));
        return e;
    }

private:
    double d_;
    double max_abs_ = 0.0;
    double max_q_ = 0.0;
};

inline double rounding_guard(double coeff_l1, std::size_t M) {
    const double levels = std::log2(static_cast<double>(M)) + 2.0;
    return coeff_l1 * levels * 0x1.0p-50;
}

inline std::size_t initial_grid(std::int64_t deg) {
    return next_pow2(std::max<std::size_t>(64, 8 * static_cast<std::size_t>(deg)));
}

inline std::size_t bumped_grid(std::size_t M, double shrink_factor) {
    const double f = std::clamp(shrink_factor, 2.0, 1024.0);
    return next_pow2(static_cast<std::size_t>(static_cast<double>(M) * f));
}

}  // namespace detail

/// Certified enclosure of max |t| over [0, 2pi], width <= tol.
///
/// Samples t, t', t'' on M equispaced points (M doubled/jumped as needed,
/// starting at max(64, 8 deg)) and certifies through the local quadratic
/// model plus the Bernstein bound ||t'''|| <= deg^3 ||t||.  Throws
/// CapExceededError carrying the best enclosure if tol needs more than
/// `grid_cap` points.
inline NormEnclosure norm_sup(const TrigPoly& t_in, double tol,
                              std::size_t grid_cap = kDefaultGridCap) {
    if (!(tol > 0.0)) throw std::invalid_argument("norm_sup: tol must be > 0");
    const TrigPoly t = t_in.is_canonical() ? t_in : t_in.canonicalized();
    const std::int64_t deg = t.degree();
    if (deg == 0) {
        const double v = std::abs(t.constant());
        return {v, v, NormKind::sup, 1};
    }
    const double s1 = t.coeff_l1();
    std::size_t M = detail::initial_grid(deg);
    if (M > grid_cap)
        throw CapExceededError("norm_sup: degree needs a grid beyond the cap",
                               {0.0, s1, NormKind::sup, 0});
    std::optional<NormEnclosure> best;
    for (;;) {
        const detail::Fft fft(M);
        const auto t0 = detail::grid_values(t, M, 0, 0.0, fft);
        const auto t1 = detail::grid_values(t, M, 1, 0.0, fft);
        const auto t2 = detail::grid_values(t, M, 2, 0.0, fft);
        detail::SupAccumulator acc(std::numbers::pi / static_cast<double>(M));
        for (std::size_t j = 0; j < M; ++j) acc.feed(t0[j], t1[j], t2[j]);
        const NormEnclosure e = acc.finalize(deg, detail::rounding_guard(s1, M), M);
        if (e.width() <= tol) return e;
        if (!best || e.width() < best->width()) best = e;
        const std::size_t next = detail::bumped_grid(M, std::cbrt(e.width() / tol));
        if (next > grid_cap)
            throw CapExceededError("norm_sup: tolerance needs a grid beyond the cap", *best);
        M = next;
    }
}

/// Certified enclosure of the L1(0, 2pi) norm, width <= tol.
///
/// Composite midpoint rule; cells certified zero-free get the C^2 midpoint
/// error (h^3/24) ||t''||, the rest fall back to the Lipschitz bound with
/// the local |t'| sample.  ||t'||, ||t''|| come from coefficient sums and a
/// loose norm_sup call, whichever is smaller.
inline NormEnclosure norm_l1(const TrigPoly& t_in, double tol,
                             std::size_t grid_cap = kDefaultGridCap) {
    if (!(tol > 0.0)) throw std::invalid_argument("norm_l1: tol must be > 0");
    const TrigPoly t = t_in.is_canonical() ? t_in : t_in.canonicalized();
    const std::int64_t deg = t.degree();
    const double two_pi = 2.0 * std::numbers::pi;
    if (deg == 0) {
        const double v = two_pi * std::abs(t.constant());
        return {v * (1.0 - 1e-15), v * (1.0 + 1e-15), NormKind::l1, 1};
    }

    const double s1 = t.coeff_l1();
    double sd1 = 0.0, sd2 = 0.0;  // coefficient bounds for ||t'||, ||t''||
    for (std::int64_t k = 1; k <= t.rep_degree(); ++k) {
        const double m = std::abs(t.cos_coeff(k)) + std::abs(t.sin_coeff(k));
        sd1 += static_cast<double>(k) * m;
        sd2 += static_cast<double>(k) * static_cast<double>(k) * m;
    }
    const double sup_up = norm_sup(t, std::max(0.02 * s1, 1e-6), grid_cap).upper;
    const double d2 = std::min(sd2, static_cast<double>(deg) * static_cast<double>(deg) * sup_up);

    std::size_t M = detail::initial_grid(deg);
    if (M > grid_cap)
        throw CapExceededError("norm_l1: degree needs a grid beyond the cap",
                               {0.0, two_pi * s1, NormKind::l1, 0});
    std::optional<NormEnclosure> best;
    for (;;) {
        const detail::Fft fft(M);
        const double h = two_pi / static_cast<double>(M);
        auto t0 = detail::grid_values(t, M, 0, 0.5 * h, fft);
        const auto t1 = detail::grid_values(t, M, 1, 0.5 * h, fft);
        const double guard = detail::rounding_guard(s1, M);

        double err = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            const double v = std::abs(t0[j]);
            const double slope = std::abs(t1[j]) + guard;
            const double swing = 0.5 * h * slope + 0.125 * h * h * d2;
            err += (v > swing + guard) ? (h * h * h / 24.0) * d2
                                       : 0.25 * h * h * (slope + 0.5 * h * d2);
            t0[j] = v;
        }
        const double sum = h * detail::pairwise_sum(t0);
        err = err * (1.0 + 1e-12) + 13.0 * guard;

        NormEnclosure e{std::max(0.0, sum - err), sum + err, NormKind::l1, M};
        if (e.width() <= tol) return e;
        if (!best || e.width() < best->width()) best = e;
        const std::size_t next = detail::bumped_grid(M, std::sqrt(e.width() / tol));
        if (next > grid_cap)
            throw CapExceededError("norm_l1: tolerance needs a grid beyond the cap", *best);
        M = next;
    }
}

}  // namespace lacunary
