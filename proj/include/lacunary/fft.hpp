#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace lacunary::detail {

// Iterative radix-2 transform computing z[j] = sum_k c[k] exp(+2*pi*i*j*k/M).
// The butterfly order is fixed, so results are bit-reproducible for a given
// input on a given build.  Twiddles come from a table filled with std::cos /
// std::sin (no recurrences), which keeps the worst-case rounding of one
// output value below ~|c|_1 * log2(M) ulps.
class Fft {
public:
    explicit Fft(std::size_t size) : size_(size) {
        assert(size >= 2 && (size & (size - 1)) == 0);
        twiddles_.resize(size / 2);
        const double step = 2.0 * std::numbers::pi / static_cast<double>(size);
        for (std::size_t k = 0; k < size / 2; ++k) {
            const double a = step * static_cast<double>(k);
            twiddles_[k] = {std::cos(a), std::sin(a)};
        }
    }

    std::size_t size() const { return size_; }

    // In-place transform; v.size() must equal size().
    void transform(std::vector<std::complex<double>>& v) const {
        assert(v.size() == size_);
        bit_reverse(v);
        for (std::size_t len = 2; len <= size_; len <<= 1) {
            const std::size_t stride = size_ / len;
            for (std::size_t start = 0; start < size_; start += len) {
                for (std::size_t k = 0; k < len / 2; ++k) {
                    const std::complex<double> w = twiddles_[k * stride];
                    auto& lo = v[start + k];
                    auto& hi = v[start + k + len / 2];
                    const std::complex<double> t = w * hi;
                    hi = lo - t;
                    lo += t;
                }
            }
        }
    }

private:
    static void bit_reverse(std::vector<std::complex<double>>& v) {
        const std::size_t n = v.size();
        for (std::size_t i = 1, j = 0; i < n; ++i) {
            std::size_t bit = n >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(v[i], v[j]);
        }
    }

    std::size_t size_;
    std::vector<std::complex<double>> twiddles_;
};

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Deterministic pairwise (tree) sum; fixed association order.
inline double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

}  // namespace lacunary::detail
