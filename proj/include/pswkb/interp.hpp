#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include "pswkb/grid.hpp"

namespace pswkb {

// Cubic (4-point Lagrange) interpolation of a sampled complex field; zero outside the
// window. Near the window edges the stencil is shifted one-sidedly.
inline cxd interp_cubic(const ComplexField1D& f, double x) {
    const Grid1D& g = f.grid;
    if (x < g.x_min() || x > g.x_max()) return {0.0, 0.0};
    const std::size_t n = g.size();
    const double t = (x - g.x_min()) / g.spacing();
    auto i1 = std::ptrdiff_t(std::floor(t));
    std::ptrdiff_t i0 = std::clamp<std::ptrdiff_t>(i1 - 1, 0, std::ptrdiff_t(n) - 4);
    const double u = t - double(i0);
    // Lagrange basis on offsets {0,1,2,3}
    const double u0 = u, u1 = u - 1.0, u2 = u - 2.0, u3 = u - 3.0;
    const double l0 = -u1 * u2 * u3 / 6.0;
    const double l1 = u0 * u2 * u3 / 2.0;
    const double l2 = -u0 * u1 * u3 / 2.0;
    const double l3 = u0 * u1 * u2 / 6.0;
    const cxd* v = f.values.data() + i0;
    return l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3];
}

// Same, restricted to samples with indices in [lo_idx, hi_idx]; used to keep interpolation
// stencils away from half-valued window-boundary samples of windowed states.
inline cxd interp_cubic_bounded(const ComplexField1D& f, double x, std::size_t lo_idx,
                                std::size_t hi_idx) {
    const Grid1D& g = f.grid;
    if (hi_idx >= g.size()) hi_idx = g.size() - 1;
    if (hi_idx < lo_idx + 3) { // too few interior nodes; fall back to linear/nearest
        if (hi_idx < lo_idx + 1) return f.values[lo_idx];
        const double t = (x - g.node(lo_idx)) / g.spacing();
        const double u = std::clamp(t, 0.0, double(hi_idx - lo_idx));
        const auto i = std::min(lo_idx + std::size_t(u), hi_idx - 1);
        const double w = u - double(i - lo_idx);
        return (1.0 - w) * f.values[i] + w * f.values[i + 1];
    }
    const double t = (x - g.x_min()) / g.spacing();
    auto i1 = std::ptrdiff_t(std::floor(t));
    std::ptrdiff_t i0 = std::clamp<std::ptrdiff_t>(i1 - 1, std::ptrdiff_t(lo_idx),
                                                   std::ptrdiff_t(hi_idx) - 3);
    const double u = t - double(i0);
    const double u0 = u, u1 = u - 1.0, u2 = u - 2.0, u3 = u - 3.0;
    const double l0 = -u1 * u2 * u3 / 6.0;
    const double l1 = u0 * u2 * u3 / 2.0;
    const double l2 = -u0 * u1 * u3 / 2.0;
    const double l3 = u0 * u1 * u2 / 6.0;
    const cxd* v = f.values.data() + i0;
    return l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3];
}

// Linear interpolation of real samples (used by user-sampled potentials).
inline double interp_linear_real(const ComplexField1D& f, double x) {
    const Grid1D& g = f.grid;
    if (!g.contains(x)) throw out_of_window_error("interp_linear_real: x outside sampled window");
    const double t = (x - g.x_min()) / g.spacing();
    const auto i = std::min(std::size_t(t), g.size() - 2);
    const double u = t - double(i);
    return (1.0 - u) * f.values[i].real() + u * f.values[i + 1].real();
}

} // namespace pswkb
