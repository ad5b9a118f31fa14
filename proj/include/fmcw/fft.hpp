#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

// Self-contained DFT kernels: iterative radix-2 for power-of-two lengths and
// Bluestein's chirp-z algorithm for everything else, so exact-length
// transforms (brickwall filtering, decimation-exact resampling) never force a
// length round-off. Conventions match the usual unnormalized forward /
// 1/N-normalized inverse pair:
//
//   forward:  X[k] = sum_n x[n] exp(-j 2 pi n k / N)
//   inverse:  x[n] = (1/N) sum_k X[k] exp(+j 2 pi n k / N)

namespace fmcw::fft {

using cvec = std::vector<std::complex<double>>;

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace detail {

// In-place radix-2 Cooley-Tukey. a.size() must be a power of two.
inline void pow2_inplace(cvec& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    if ((n & (n - 1)) != 0)
        throw std::invalid_argument("pow2_inplace: length is not a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // twiddle table for the largest stage, reused with a stride by the others
    const double sign = inverse ? +1.0 : -1.0;
    std::vector<std::complex<double>> w(n / 2);
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double ang = sign * 2.0 * std::numbers::pi *
                           static_cast<double>(i) / static_cast<double>(n);
        w[i] = {std::cos(ang), std::sin(ang)};
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }

    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

// Bluestein chirp phase for index n modulo 2N, keeping the trig argument
// small so accuracy holds at large N.
inline std::complex<double> bluestein_chirp(std::uint64_t n, std::uint64_t N,
                                            double sign) {
    const std::uint64_t m = (n * n) % (2 * N);
    const double ang =
        sign * std::numbers::pi * static_cast<double>(m) / static_cast<double>(N);
    return {std::cos(ang), std::sin(ang)};
}

// Arbitrary-length forward DFT via Bluestein: x[n] -> X[k].
inline cvec bluestein(const cvec& x) {
    const std::size_t n = x.size();
    const std::size_t m = next_pow2(2 * n - 1);

    cvec a(m, {0.0, 0.0});
    cvec b(m, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = bluestein_chirp(i, n, -1.0);
        a[i] = x[i] * c;
        b[i] = std::conj(c);
        if (i != 0) b[m - i] = std::conj(c);
    }
    pow2_inplace(a, false);
    pow2_inplace(b, false);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    pow2_inplace(a, true);

    cvec out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = a[k] * bluestein_chirp(k, n, -1.0);
    return out;
}

}  // namespace detail

// Forward DFT, any length.
inline cvec forward(const cvec& x) {
    if (x.empty()) return {};
    if ((x.size() & (x.size() - 1)) == 0) {
        cvec a = x;
        detail::pow2_inplace(a, false);
        return a;
    }
    return detail::bluestein(x);
}

// Inverse DFT (1/N normalized), any length.
inline cvec inverse(const cvec& x) {
    if (x.empty()) return {};
    if ((x.size() & (x.size() - 1)) == 0) {
        cvec a = x;
        detail::pow2_inplace(a, true);
        return a;
    }
    // conj trick: ifft(x) = conj(fft(conj(x))) / N
    cvec a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = std::conj(x[i]);
    a = detail::bluestein(a);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto& z : a) z = std::conj(z) * inv;
    return a;
}

// Forward DFT zero-padded to length nfft (nfft >= x.size()).
inline cvec forward_padded(const cvec& x, std::size_t nfft) {
    cvec a(nfft, {0.0, 0.0});
    std::copy(x.begin(), x.end(), a.begin());
    if ((nfft & (nfft - 1)) == 0) {
        detail::pow2_inplace(a, false);
        return a;
    }
    return detail::bluestein(a);
}

}  // namespace fmcw::fft
