#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/airy.hpp>

#include "pswkb/errors.hpp"
#include "pswkb/grid.hpp"
#include "pswkb/params.hpp"

namespace pswkb {

// Phi(y) = (1/sqrt(pi)) \int_0^inf cos(u^3/3 + u y) du = sqrt(pi) Ai(y).
inline double airy_phi(double y) {
    if (!std::isfinite(y)) throw domain_error("airy_phi: non-finite argument");
    return std::sqrt(std::numbers::pi) * boost::math::airy_ai(y);
}

inline double airy_phi_prime(double y) {
    if (!std::isfinite(y)) throw domain_error("airy_phi_prime: non-finite argument");
    return std::sqrt(std::numbers::pi) * boost::math::airy_ai_prime(y);
}

inline constexpr unsigned kMaxLaguerreOrder = 64;

// L_n(y) by the three-term recurrence (m+1) L_{m+1} = (2m+1-y) L_m - m L_{m-1}.
inline double laguerre(unsigned n, double y) {
    if (n > kMaxLaguerreOrder) throw unsupported_error("laguerre: order above guard (64)");
    if (!std::isfinite(y)) throw domain_error("laguerre: non-finite argument");
    if (n == 0) return 1.0;
    double lm1 = 1.0, lm = 1.0 - y;
    for (unsigned m = 1; m < n; ++m) {
        const double lp = ((2.0 * m + 1.0 - y) * lm - double(m) * lm1) / double(m + 1);
        lm1 = lm;
        lm = lp;
    }
    return lm;
}

// Normalised harmonic-oscillator eigenfunction psi_n(x) via the stable normalised
// Hermite-function recurrence; unit L2 norm in the continuum.
inline double hermite_wave(unsigned n, double x, const PhysParams& params) {
    if (n > kMaxLaguerreOrder) throw unsupported_error("hermite_wave: order above guard (64)");
    const double s = std::sqrt(params.mass * params.omega / params.hbar);
    const double u = s * x;
    double phi0 = std::pow(params.mass * params.omega / (std::numbers::pi * params.hbar), 0.25) *
                  std::exp(-0.5 * u * u);
    if (n == 0) return phi0;
    double prev = phi0;
    double cur = std::sqrt(2.0) * u * phi0;
    for (unsigned m = 1; m < n; ++m) {
        const double next =
            std::sqrt(2.0 / double(m + 1)) * u * cur - std::sqrt(double(m) / double(m + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace pswkb
