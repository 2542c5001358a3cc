#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace pswkb::detail {

using cxd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey, sign = -1 forward / +1 inverse (unnormalised).
inline void fft_pow2(std::vector<cxd>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = double(sign) * 2.0 * std::numbers::pi / double(len);
        const cxd wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cxd w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                cxd u = a[i + j];
                cxd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Arbitrary-length DFT via Bluestein's chirp-z algorithm. sign as above, unnormalised:
//   out[k] = sum_m in[m] exp(sign * 2 pi i m k / n)
inline std::vector<cxd> dft(const std::vector<cxd>& in, int sign) {
    const std::size_t n = in.size();
    if (n == 0) return {};
    if (is_pow2(n)) {
        std::vector<cxd> a = in;
        fft_pow2(a, sign);
        return a;
    }
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<cxd> a(m, cxd{}), b(m, cxd{});
    const double base = double(sign) * std::numbers::pi / double(n);
    std::vector<cxd> chirp(n);
    for (std::size_t i = 0; i < n; ++i) {
        // exponent i^2 reduced mod 2n to keep the angle bounded
        std::size_t q = (i * i) % (2 * n);
        chirp[i] = std::polar(1.0, base * double(q));
    }
    for (std::size_t i = 0; i < n; ++i) a[i] = in[i] * chirp[i];
    b[0] = cxd{1.0, 0.0};
    for (std::size_t i = 1; i < n; ++i) b[i] = b[m - i] = std::conj(chirp[i]);
    fft_pow2(a, -1);
    fft_pow2(b, -1);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, +1);
    std::vector<cxd> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * chirp[i] / double(m);
    return out;
}

} // namespace pswkb::detail
