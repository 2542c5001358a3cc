#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pswkb/fft.hpp"
#include "pswkb/grid.hpp"

namespace pswkb {

// Conjugate grid of a sampled window: t_j = 2 pi j / (n dz), j = -floor(n/2) .. n-1-floor(n/2).
inline Grid1D conjugate_grid(const Grid1D& g) {
    const std::size_t n = g.size();
    const double dt = 2.0 * std::numbers::pi / (double(n) * g.spacing());
    const auto j0 = std::ptrdiff_t(n / 2);
    return Grid1D(-double(j0) * dt, double(std::ptrdiff_t(n) - 1 - j0) * dt, n);
}

// Samples of  Ftilde[f](t) = (1/sqrt(2 pi)) \int f(z) exp(-i z t) dz  on the conjugate grid,
// with explicit phase correction for the grid origin. The inverse direction flips the
// exponent sign (exp(+izt), same normalisation).
inline ComplexField1D inverse_fourier_grid(const ComplexField1D& f, bool inverse = false) {
    const std::size_t n = f.grid.size();
    const double dz = f.grid.spacing();
    const double z0 = f.grid.x_min();
    const int sign = inverse ? +1 : -1;

    std::vector<cxd> a = f.values;
    std::vector<cxd> bins = detail::dft(a, sign);

    Grid1D tg = conjugate_grid(f.grid);
    const auto j0 = std::ptrdiff_t(n / 2);
    std::vector<cxd> out(n);
    const double scale = dz / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = std::ptrdiff_t(i) - j0; // signed bin index
        const std::size_t jj = std::size_t((j % std::ptrdiff_t(n) + std::ptrdiff_t(n)) % std::ptrdiff_t(n));
        const double t = tg.node(i);
        out[i] = scale * std::polar(1.0, double(sign) * z0 * t) * bins[jj];
    }
    return ComplexField1D(tg, std::move(out));
}

// Spectral derivative of samples with a raised-cosine taper applied over the outer
// `taper_fraction` of the window on each side, plus an exponential high-wavenumber
// filter that keeps repeated differentiation from amplifying the rounding floor.
inline std::vector<cxd> spectral_derivative(const Grid1D& g, std::vector<cxd> v,
                                            unsigned order = 1, double taper_fraction = 0.1) {
    const std::size_t n = v.size();
    double re_max = 0.0, im_max = 0.0;
    for (const cxd& z : v) {
        re_max = std::max(re_max, std::abs(z.real()));
        im_max = std::max(im_max, std::abs(z.imag()));
    }
    const bool real_input = im_max <= 1e-13 * std::max(re_max, 1e-300);

    const auto edge = std::size_t(double(n) * taper_fraction);
    for (std::size_t i = 0; i < edge && i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(std::numbers::pi * double(i) / double(edge));
        v[i] *= w;
        v[n - 1 - i] *= w;
    }
    std::vector<cxd> bins = detail::dft(v, -1);
    const double dk = 2.0 * std::numbers::pi / (double(n) * g.spacing());
    const double k_nyq = 0.5 * double(n) * dk;
    for (std::size_t j = 0; j < n; ++j) {
        const auto sj = std::ptrdiff_t(j) <= std::ptrdiff_t(n / 2) ? std::ptrdiff_t(j)
                                                                   : std::ptrdiff_t(j) - std::ptrdiff_t(n);
        const double k = double(sj) * dk;
        cxd fac{std::exp(-36.0 * std::pow(std::abs(k) / k_nyq, 24.0)), 0.0};
        for (unsigned o = 0; o < order; ++o) fac *= cxd{0.0, k};
        bins[j] *= fac;
    }
    std::vector<cxd> back = detail::dft(bins, +1);
    for (cxd& z : back) z /= double(n);
    // differentiation preserves realness; drop the rounding leakage
    if (real_input)
        for (cxd& z : back) z = cxd{z.real(), 0.0};
    return back;
}

enum class Axis { x, p };

struct ConvolveInfo {
    double tail_mass = 0.0; // fraction of |integrand| mass within 5% of the window edge
};

// C(x,p) = \int A(x,p') B(x,p-p') dp'  (axis = p), or the x-axis analogue, by direct
// lattice summation with zero extension beyond the window.
inline RealField2D convolve_along_axis(const RealField2D& A, const RealField2D& B, Axis axis,
                                       ConvolveInfo* info = nullptr) {
    require_same_grids(A, B);
    const Grid1D& ag = (axis == Axis::p) ? A.p_grid : A.x_grid;
    if (!ag.symmetric_about_zero())
        throw domain_error("convolve_along_axis: convolved axis grid must be symmetric about 0");

    const std::size_t nx = A.x_grid.size(), np = A.p_grid.size();
    const double h = ag.spacing();
    const auto n_ax = std::ptrdiff_t((axis == Axis::p) ? np : nx);
    const auto zero_index = std::ptrdiff_t((n_ax - 1) / 2);

    RealField2D C(A.x_grid, A.p_grid);
    double mass = 0.0, edge_mass = 0.0;
    const auto edge_band = std::ptrdiff_t(std::max<double>(1.0, 0.05 * double(n_ax)));

    const std::size_t n_other = (axis == Axis::p) ? nx : np;
    for (std::size_t r = 0; r < n_other; ++r) {
        auto a_at = [&](std::ptrdiff_t m) {
            return (axis == Axis::p) ? A.at(r, std::size_t(m)) : A.at(std::size_t(m), r);
        };
        auto b_at = [&](std::ptrdiff_t m) {
            return (axis == Axis::p) ? B.at(r, std::size_t(m)) : B.at(std::size_t(m), r);
        };
        auto c_at = [&](std::ptrdiff_t m) -> double& {
            return (axis == Axis::p) ? C.at(r, std::size_t(m)) : C.at(std::size_t(m), r);
        };
        for (std::ptrdiff_t m = 0; m < n_ax; ++m) {
            double s = 0.0;
            for (std::ptrdiff_t l = 0; l < n_ax; ++l) {
                const std::ptrdiff_t j = m - l + zero_index; // node with value (m-l)*h
                if (j < 0 || j >= n_ax) continue;
                const double term = a_at(l) * b_at(j);
                s += term;
                const double am = std::abs(term);
                mass += am;
                if (l < edge_band || l >= n_ax - edge_band || j < edge_band || j >= n_ax - edge_band)
                    edge_mass += am;
            }
            c_at(m) = s * h;
        }
    }
    if (info) info->tail_mass = (mass > 0.0) ? edge_mass / mass : 0.0;
    return C;
}

} // namespace pswkb
