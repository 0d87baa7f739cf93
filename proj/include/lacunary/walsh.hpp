#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacunary/errors.hpp"
#include "lacunary/rational.hpp"

namespace lacunary {

inline constexpr std::int64_t kWalshIndexCap = std::int64_t{1} << 20;
inline constexpr std::int64_t kStepCellCap = std::int64_t{1} << 22;

/// Piecewise-constant function on (0,1): value(i) on ((i)/cells, (i+1)/cells)
/// (0-based cells).  Values are exact rationals; endpoint values have
/// measure zero and are not represented.  Refining by cell duplication
/// changes nothing measurable.
class StepFunction {
public:
    StepFunction() : cells_(1), values_(1, Rational(0)) {}
    StepFunction(std::int64_t cells, std::vector<Rational> values)
        : cells_(cells), values_(std::move(values)) {
        if (cells_ <= 0 || static_cast<std::size_t>(cells_) != values_.size())
            throw std::invalid_argument("StepFunction: cell count must match value count");
    }
    static StepFunction constant(const Rational& v) { return StepFunction(1, {v}); }

    std::int64_t cells() const { return cells_; }
    const Rational& value(std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<Rational>& values() const { return values_; }

    /// Exact refinement to a multiple of the current resolution.
    StepFunction refined(std::int64_t new_cells) const {
        if (new_cells < cells_ || new_cells % cells_ != 0)
            throw std::invalid_argument("StepFunction: refinement must be a multiple of cells");
        const std::int64_t dup = new_cells / cells_;
        std::vector<Rational> v;
        v.reserve(static_cast<std::size_t>(new_cells));
        for (const auto& x : values_)
            for (std::int64_t d = 0; d < dup; ++d) v.push_back(x);
        return StepFunction(new_cells, std::move(v));
    }

private:
    std::int64_t cells_;
    std::vector<Rational> values_;
};

namespace detail {

inline std::int64_t common_cells(std::int64_t a, std::int64_t b) {
    const std::int64_t l = std::lcm(a, b);
    if (l > kStepCellCap) throw CapError("step functions: common refinement exceeds the cell cap");
    return l;
}

}  // namespace detail

/// Exact inner product int_0^1 f g = (1/L) sum f_i g_i at the common
/// refinement.
inline Rational step_inner(const StepFunction& f, const StepFunction& g) {
    const std::int64_t L = detail::common_cells(f.cells(), g.cells());
    const StepFunction fr = f.refined(L), gr = g.refined(L);
    Rational s(0);
    for (std::int64_t i = 0; i < L; ++i) s += fr.value(i) * gr.value(i);
    return s / Rational(L);
}

inline Rational step_l1(const StepFunction& f) {
    Rational s(0);
    for (const auto& v : f.values()) s += v.abs();
    return s / Rational(f.cells());
}

inline Rational step_sup(const StepFunction& f) {
    Rational m(0);
    for (const auto& v : f.values())
        if (v.abs() > m) m = v.abs();
    return m;
}

/// int_0^1 f^2, exact (the L2 exactness hook).
inline Rational step_l2sq(const StepFunction& f) { return step_inner(f, f); }

inline StepFunction step_add(const StepFunction& f, const StepFunction& g) {
    const std::int64_t L = detail::common_cells(f.cells(), g.cells());
    const StepFunction fr = f.refined(L), gr = g.refined(L);
    std::vector<Rational> v(static_cast<std::size_t>(L));
    for (std::int64_t i = 0; i < L; ++i) v[static_cast<std::size_t>(i)] = fr.value(i) + gr.value(i);
    return StepFunction(L, std::move(v));
}

inline StepFunction step_mul(const StepFunction& f, const StepFunction& g) {
    const std::int64_t L = detail::common_cells(f.cells(), g.cells());
    const StepFunction fr = f.refined(L), gr = g.refined(L);
    std::vector<Rational> v(static_cast<std::size_t>(L));
    for (std::int64_t i = 0; i < L; ++i) v[static_cast<std::size_t>(i)] = fr.value(i) * gr.value(i);
    return StepFunction(L, std::move(v));
}

inline StepFunction step_scale(const Rational& c, const StepFunction& f) {
    std::vector<Rational> v(f.values());
    for (auto& x : v) x *= c;
    return StepFunction(f.cells(), std::move(v));
}

/// Walsh function w_n as an exact step function: w_0 == 1, and for n >= 1
/// the product of Rademacher functions selected by the binary digits of n,
///   w_n = prod_k (r_{k+1})^{theta_k(n)},
/// at resolution 2^{s(n)+1} with s(n) = floor(log2 n).  All values are +-1.
inline StepFunction walsh_function(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("walsh_function: n must be >= 0");
    if (n > kWalshIndexCap) throw CapError("walsh_function: n exceeds the cap 2^20");
    if (n == 0) return StepFunction::constant(Rational(1));
    const int res = std::bit_width(static_cast<std::uint64_t>(n));  // s(n) + 1
    const std::int64_t cells = std::int64_t{1} << res;
    std::vector<Rational> v(static_cast<std::size_t>(cells));
    for (std::int64_t i = 0; i < cells; ++i) {
        // r_{k+1} on cell i is (-1)^{bit_{res-1-k}(i)}; multiply over set bits of n
        std::uint64_t rev = 0;
        for (int b = 0; b < res; ++b)
            if ((i >> b) & 1) rev |= std::uint64_t{1} << (res - 1 - b);
        const int parity = std::popcount(static_cast<std::uint64_t>(n) & rev) & 1;
        v[static_cast<std::size_t>(i)] = Rational(parity ? -1 : 1);
    }
    return StepFunction(cells, std::move(v));
}

/// Orthonormal step-function system phi_1, phi_2, ... with block boundaries
/// m_seq (m_1 = 1) and the finite-prefix sup bound M.
struct DiscreteSystem {
    std::vector<StepFunction> functions;
    std::vector<std::int64_t> m_seq;
    Rational M_bound;
};

/// Walsh prefix as a DiscreteSystem: phi_k = w_{k-1}, m_k = 2^{k-1}.
inline DiscreteSystem make_walsh_system(std::int64_t n_functions) {
    if (n_functions < 1) throw std::invalid_argument("make_walsh_system: need >= 1 function");
    DiscreteSystem sys;
    for (std::int64_t k = 0; k < n_functions; ++k) sys.functions.push_back(walsh_function(k));
    std::int64_t m = 1;
    sys.m_seq.push_back(1);
    while (m < n_functions) {
        m *= 2;
        sys.m_seq.push_back(m);
    }
    sys.M_bound = Rational(1);
    return sys;
}

struct SystemConditionsReport {
    bool phi1_is_one = false;
    bool orthonormal = false;
    std::int64_t ortho_i = 0, ortho_j = 0;  // first failing pair (1-based), 0 if none
    bool cond1_cell_constancy = false;
    int cond1_k = 0;
    std::int64_t cond1_j = 0;
    bool cond2_square_orthogonality = false;
    std::int64_t cond2_n = 0, cond2_j = 0;
    Rational sup_bound;  // condition 3: finite-prefix M

    bool all_pass() const {
        return phi1_is_one && orthonormal && cond1_cell_constancy && cond2_square_orthogonality;
    }
};

/// Exact verification of the discrete-system hypotheses on a prefix:
///  1) each phi_j is constant on the cells of width 1/m_k whenever j <= m_k,
///  2) int phi_n^2 phi_j = 0 for k >= 2, n > m_k, 2 <= j <= m_k,
///  3) the finite-prefix sup bound M (always finite; reported exactly),
/// plus phi_1 == 1 and exact orthonormality, which the theorem assumes.
inline SystemConditionsReport verify_system_conditions(const DiscreteSystem& sys,
                                                       std::int64_t prefix) {
    if (prefix < 1 || static_cast<std::size_t>(prefix) > sys.functions.size())
        throw std::invalid_argument("verify_system_conditions: prefix out of range");
    if (sys.m_seq.empty() || sys.m_seq[0] != 1)
        throw std::invalid_argument("verify_system_conditions: m_seq must start at 1");
    SystemConditionsReport rep;
    const auto& phi = sys.functions;

    rep.phi1_is_one = true;
    for (const auto& v : phi[0].values())
        if (v != Rational(1)) rep.phi1_is_one = false;

    rep.orthonormal = true;
    for (std::int64_t i = 1; i <= prefix && rep.orthonormal; ++i)
        for (std::int64_t j = i; j <= prefix; ++j) {
            const Rational want(i == j ? 1 : 0);
            if (step_inner(phi[static_cast<std::size_t>(i - 1)],
                           phi[static_cast<std::size_t>(j - 1)]) != want) {
                rep.orthonormal = false;
                rep.ortho_i = i;
                rep.ortho_j = j;
                break;
            }
        }

    rep.cond1_cell_constancy = true;
    for (std::size_t ki = 0; ki < sys.m_seq.size() && rep.cond1_cell_constancy; ++ki) {
        const std::int64_t mk = sys.m_seq[ki];
        for (std::int64_t j = 1; j <= std::min(mk, prefix); ++j) {
            const auto& f = phi[static_cast<std::size_t>(j - 1)];
            const std::int64_t L = detail::common_cells(f.cells(), mk);
            const StepFunction fr = f.refined(L);
            const std::int64_t group = L / mk;
            bool ok = true;
            for (std::int64_t c = 0; c < mk && ok; ++c)
                for (std::int64_t t = 1; t < group; ++t)
                    if (fr.value(c * group + t) != fr.value(c * group)) {
                        ok = false;
                        break;
                    }
            if (!ok) {
                rep.cond1_cell_constancy = false;
                rep.cond1_k = static_cast<int>(ki + 1);
                rep.cond1_j = j;
                break;
            }
        }
    }

    rep.cond2_square_orthogonality = true;
    for (std::int64_t n = 1; n <= prefix && rep.cond2_square_orthogonality; ++n) {
        const auto& fn = phi[static_cast<std::size_t>(n - 1)];
        StepFunction fn2 = step_mul(fn, fn);
        for (std::size_t ki = 1; ki < sys.m_seq.size(); ++ki) {
            const std::int64_t mk = sys.m_seq[ki];
            if (n <= mk) continue;
            for (std::int64_t j = 2; j <= std::min(mk, prefix); ++j) {
                if (step_inner(fn2, phi[static_cast<std::size_t>(j - 1)]) != Rational(0)) {
                    rep.cond2_square_orthogonality = false;
                    rep.cond2_n = n;
                    rep.cond2_j = j;
                    break;
                }
            }
            if (!rep.cond2_square_orthogonality) break;
        }
    }

    rep.sup_bound = Rational(0);
    for (std::int64_t n = 1; n <= prefix; ++n) {
        const Rational s = step_sup(phi[static_cast<std::size_t>(n - 1)]);
        if (s > rep.sup_bound) rep.sup_bound = s;
    }
    return rep;
}

/// Hypothesis violations are reported as structured errors naming the
/// failed precondition.
class HypothesisError : public std::invalid_argument {
public:
    HypothesisError(std::string which_arg, const std::string& what)
        : std::invalid_argument(what), which(std::move(which_arg)) {}
    std::string which;
};

struct DiscreteSidonReport {
    Rational sup;  // ||f||_inf, exact
    Rational rhs;  // sum ||p_k||_1, exact
    Rational M;
    bool holds = false;  // sup >= rhs / M, exact comparison
    double ratio = 0.0;  // sup / (rhs / M)
};

/// Exact audit of the discrete Sidon inequality
///   || sum_{k=l+1}^{N} p_k phi_{n_k} ||_inf >= (1/M) sum ||p_k||_1
/// in the theorem's indexing: l >= 1, p_k spans phi_1..phi_{m_l}, and each
/// n_k obeys m_{k-1} < n_k <= m_k.  `n_idx` and `p_coeffs` carry entries
/// for k = l+1..N in order.
inline DiscreteSidonReport discrete_sidon_check(const DiscreteSystem& sys, int l, int N,
                                                std::span<const std::int64_t> n_idx,
                                                const std::vector<std::vector<Rational>>& p_coeffs) {
    if (l < 1) throw HypothesisError("l", "discrete_sidon_check: l must be >= 1");
    if (N < l + 1) throw HypothesisError("N", "discrete_sidon_check: N must be >= l + 1");
    if (static_cast<std::size_t>(N) > sys.m_seq.size())
        throw HypothesisError("m_seq", "discrete_sidon_check: m_seq shorter than N");
    const auto count = static_cast<std::size_t>(N - l);
    if (n_idx.size() != count || p_coeffs.size() != count)
        throw HypothesisError("arity", "discrete_sidon_check: need one n_k and one p_k per k = l+1..N");
    const std::int64_t ml = sys.m_seq[static_cast<std::size_t>(l - 1)];
    for (std::size_t i = 0; i < count; ++i) {
        const int k = l + 1 + static_cast<int>(i);
        const std::int64_t nk = n_idx[i];
        const std::int64_t mk = sys.m_seq[static_cast<std::size_t>(k - 1)];
        const std::int64_t mk_prev = sys.m_seq[static_cast<std::size_t>(k - 2)];
        if (!(mk_prev < nk && nk <= mk))
            throw HypothesisError("n_seq", "discrete_sidon_check: n_" + std::to_string(k) +
                                               " violates m_{k-1} < n_k <= m_k");
        if (static_cast<std::size_t>(nk) > sys.functions.size())
            throw HypothesisError("n_seq", "discrete_sidon_check: phi_{n_k} not supplied");
        if (p_coeffs[i].size() > static_cast<std::size_t>(ml))
            throw HypothesisError("p_k", "discrete_sidon_check: p_k has more than m_l coefficients");
    }

    DiscreteSidonReport rep;
    rep.M = sys.M_bound;
    StepFunction f = StepFunction::constant(Rational(0));
    rep.rhs = Rational(0);
    for (std::size_t i = 0; i < count; ++i) {
        StepFunction pk = StepFunction::constant(Rational(0));
        for (std::size_t j = 0; j < p_coeffs[i].size(); ++j) {
            if (p_coeffs[i][j].is_zero()) continue;
            pk = step_add(pk, step_scale(p_coeffs[i][j], sys.functions[j]));
        }
        rep.rhs += step_l1(pk);
        f = step_add(f, step_mul(pk, sys.functions[static_cast<std::size_t>(n_idx[i] - 1)]));
    }
    rep.sup = step_sup(f);
    rep.holds = rep.sup * rep.M >= rep.rhs;
    if (!rep.rhs.is_zero())
        rep.ratio = rep.sup.to_double() * rep.M.to_double() / rep.rhs.to_double();
    return rep;
}

struct BicontrolReport {
    Rational lhs, sup, rhs;
    bool holds_lower = false, holds_upper = false;
};

/// Two-sided coefficient control for f = sum_{k=2}^{N} a_k phi_{n_k}:
///   (1/M) sum |a_k|  <=  ||f||_inf  <=  M sum |a_k|,
/// checked exactly.  `n_idx` and `a` carry entries for k = 2..N.
inline BicontrolReport corollary_bicontrol_check(const DiscreteSystem& sys,
                                                 std::span<const std::int64_t> n_idx,
                                                 std::span<const Rational> a) {
    if (n_idx.size() != a.size() || a.empty())
        throw HypothesisError("arity", "corollary_bicontrol_check: need one n_k per coefficient");
    const int N = static_cast<int>(a.size()) + 1;
    if (static_cast<std::size_t>(N) > sys.m_seq.size())
        throw HypothesisError("m_seq", "corollary_bicontrol_check: m_seq shorter than N");
    for (std::size_t i = 0; i < n_idx.size(); ++i) {
        const int k = 2 + static_cast<int>(i);
        const std::int64_t mk = sys.m_seq[static_cast<std::size_t>(k - 1)];
        const std::int64_t mk_prev = sys.m_seq[static_cast<std::size_t>(k - 2)];
        if (!(mk_prev < n_idx[i] && n_idx[i] <= mk))
            throw HypothesisError("n_seq", "corollary_bicontrol_check: n_" + std::to_string(k) +
                                               " violates m_{k-1} < n_k <= m_k");
        if (static_cast<std::size_t>(n_idx[i]) > sys.functions.size())
            throw HypothesisError("n_seq", "corollary_bicontrol_check: phi_{n_k} not supplied");
    }
    BicontrolReport rep;
    Rational mass(0);
    StepFunction f = StepFunction::constant(Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        mass += a[i].abs();
        f = step_add(f, step_scale(a[i], sys.functions[static_cast<std::size_t>(n_idx[i] - 1)]));
    }
    const Rational M = sys.M_bound;
    rep.lhs = mass / M;
    rep.sup = step_sup(f);
    rep.rhs = M * mass;
    rep.holds_lower = rep.lhs <= rep.sup;
    rep.holds_upper = rep.sup <= rep.rhs;
    return rep;
}

}  // namespace lacunary
