#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "pswkb/fourier.hpp"
#include "pswkb/grid.hpp"
#include "pswkb/interp.hpp"
#include "pswkb/parallel.hpp"
#include "pswkb/params.hpp"
#include "pswkb/quadrature.hpp"
#include "pswkb/wkb.hpp"

namespace pswkb {

struct WignerDiagnostics {
    double max_imag_residual = 0.0; // max |Im| before the real part is taken
    double tail_mass = 0.0;         // |g| mass fraction within 5% of the xi-window edge
    bool aliasing_warning = false;  // tail mass > 1e-4
};

// xi-sampling used by the transforms: twice as fine as the wave grid, window twice as long.
struct XiSpec {
    double half_window = 0.0;
    std::size_t n = 0;

    static XiSpec for_grid(const Grid1D& g) {
        XiSpec s;
        s.half_window = g.length();
        const double dxi = 0.5 * g.spacing();
        auto half_count = std::size_t(std::ceil(s.half_window / dxi));
        s.n = 2 * half_count + 1; // symmetric with a node at xi = 0
        return s;
    }
    Grid1D grid() const { return Grid1D(-half_window, half_window, n); }
};

// Momentum lattice conjugate to the xi grid: p_j = hbar * 2 pi j / (n dxi).
inline Grid1D wigner_conjugate_momentum_grid(const XiSpec& xi, const PhysParams& params) {
    Grid1D t = conjugate_grid(xi.grid());
    return Grid1D(params.hbar * t.x_min(), params.hbar * t.x_max(), t.size());
}

namespace detail {

inline bool is_conjugate_lattice(const Grid1D& p_grid, const XiSpec& xi, const PhysParams& params) {
    Grid1D want = wigner_conjugate_momentum_grid(xi, params);
    return p_grid.same_as(want, 1e-9 * std::max(1.0, std::abs(want.x_max())));
}

// One x-row of W from samples of g(xi) on the xi grid: either an FFT onto the conjugate
// lattice or a direct oscillatory sum onto an arbitrary p grid.
inline void wigner_row(const std::vector<cxd>& g, const Grid1D& xi_grid, const PhysParams& params,
                       const Grid1D& p_grid, bool conjugate, double* out_row,
                       double* max_imag) {
    const double hbar = params.hbar;
    const std::size_t n_xi = xi_grid.size();
    const double dxi = xi_grid.spacing();
    double imag_peak = 0.0;
    if (conjugate) {
        ComplexField1D gf(xi_grid, g);
        ComplexField1D tf = inverse_fourier_grid(gf);
        const double scale = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * hbar);
        for (std::size_t j = 0; j < p_grid.size(); ++j) {
            const cxd w = scale * tf.values[j];
            out_row[j] = w.real();
            imag_peak = std::max(imag_peak, std::abs(w.imag()));
        }
    } else {
        for (std::size_t j = 0; j < p_grid.size(); ++j) {
            const double t = p_grid.node(j) / hbar;
            // trapezoid sum with rotation recurrence, re-synced every 64 steps
            const cxd step = std::polar(1.0, -dxi * t);
            cxd rot = std::polar(1.0, -xi_grid.x_min() * t);
            cxd acc{0.0, 0.0};
            for (std::size_t m = 0; m < n_xi; ++m) {
                const double w = (m == 0 || m == n_xi - 1) ? 0.5 : 1.0;
                acc += w * g[m] * rot;
                rot = (m % 64 == 63) ? std::polar(1.0, -(xi_grid.x_min() + dxi * double(m + 1)) * t)
                                     : rot * step;
            }
            const cxd val = acc * dxi / (2.0 * std::numbers::pi * hbar);
            out_row[j] = val.real();
            imag_peak = std::max(imag_peak, std::abs(val.imag()));
        }
    }
    if (max_imag) *max_imag = imag_peak;
}

} // namespace detail

// W(x,p) = (1/2 pi hbar) \int conj(psi)(x + xi/2) psi(x - xi/2) exp(-i xi p / hbar) dxi,
// cross-correlation sampled by cubic interpolation of psi. The output x grid is the
// wave grid unless an explicit one is given.
inline RealField2D wigner_transform(const ComplexField1D& psi, const PhysParams& params,
                                    const Grid1D& x_out, const Grid1D& p_grid,
                                    WignerDiagnostics* diag = nullptr) {
    params.validate();
    const XiSpec xi = XiSpec::for_grid(psi.grid);
    const Grid1D xi_grid = xi.grid();
    const bool conj_lattice = detail::is_conjugate_lattice(p_grid, xi, params);

    RealField2D W(x_out, p_grid);
    std::vector<double> imag_by_row(x_out.size(), 0.0);
    std::vector<double> tail_by_row(x_out.size(), 0.0);

    parallel_for(x_out.size(), [&](std::size_t i) {
        const double x = x_out.node(i);
        std::vector<cxd> g(xi_grid.size());
        double mass = 0.0, edge_mass = 0.0;
        const double edge_zone = 0.05 * xi_grid.length();
        for (std::size_t m = 0; m < xi_grid.size(); ++m) {
            const double xiv = xi_grid.node(m);
            const cxd a = interp_cubic(psi, x + 0.5 * xiv);
            const cxd b = interp_cubic(psi, x - 0.5 * xiv);
            g[m] = std::conj(a) * b;
            const double am = std::abs(g[m]);
            mass += am;
            if (xiv < xi_grid.x_min() + edge_zone || xiv > xi_grid.x_max() - edge_zone)
                edge_mass += am;
        }
        tail_by_row[i] = (mass > 0.0) ? edge_mass / mass : 0.0;
        detail::wigner_row(g, xi_grid, params, p_grid, conj_lattice, &W.values[i * p_grid.size()],
                           &imag_by_row[i]);
    });

    if (diag) {
        diag->max_imag_residual = *std::max_element(imag_by_row.begin(), imag_by_row.end());
        diag->tail_mass = *std::max_element(tail_by_row.begin(), tail_by_row.end());
        diag->aliasing_warning = diag->tail_mass > 1e-4;
    }
    return W;
}

inline RealField2D wigner_transform(const ComplexField1D& psi, const PhysParams& params,
                                    const Grid1D& p_grid, WignerDiagnostics* diag = nullptr) {
    return wigner_transform(psi, params, psi.grid, p_grid, diag);
}

// W from a sampled total phase sigma: materialises psi = exp((i/hbar) sigma) and delegates.
inline RealField2D wigner_from_phase(const ComplexField1D& sigma, const PhysParams& params,
                                     const Grid1D& x_out, const Grid1D& p_grid,
                                     WignerDiagnostics* diag = nullptr) {
    std::vector<cxd> v(sigma.grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const cxd e = cxd{0.0, 1.0} / params.hbar * sigma.values[i];
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw domain_error("wigner_from_phase: sigma non-finite on the window");
        v[i] = std::exp(e);
    }
    ComplexField1D psi(sigma.grid, std::move(v));
    return wigner_transform(psi, params, x_out, p_grid, diag);
}

inline RealField2D wigner_from_phase(const ComplexField1D& sigma, const PhysParams& params,
                                     const Grid1D& p_grid, WignerDiagnostics* diag = nullptr) {
    return wigner_from_phase(sigma, params, sigma.grid, p_grid, diag);
}

// Product-state composition: the Wigner function of a pointwise product of wave functions
// is the p-convolution of their Wigner functions (x-convolution for a momentum-side product).
struct ProductCompositionInfo {
    Axis axis = Axis::p;
    ConvolveInfo convolution{};
};

inline RealField2D wigner_product_convolution(const RealField2D& Wa, const RealField2D& Wb,
                                              Axis axis, ProductCompositionInfo* info = nullptr) {
    ConvolveInfo ci;
    RealField2D out = convolve_along_axis(Wa, Wb, axis, &ci);
    if (info) {
        info->axis = axis;
        info->convolution = ci;
    }
    return out;
}

// A wave function windowed to [a, b]; stored samples are Y(x-a) psi(x) Y(b-x) with the
// half-value endpoint convention, so complementary windows sum to the original samples.
struct WindowedState {
    ComplexField1D psi;
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
    double norm = 0.0; // sqrt(sum |psi|^2 dx)

    // interior-limit evaluation: interpolation stencils use only nodes strictly inside
    // the support, so the half-valued boundary samples do not leak in
    cxd eval_interior(double y) const {
        if (y < support_lo || y > support_hi) return {0.0, 0.0};
        const Grid1D& g = psi.grid;
        if (y < g.x_min() || y > g.x_max()) return {0.0, 0.0};
        std::size_t lo = 0, hi = g.size() - 1;
        if (support_lo > g.x_min()) {
            const double t = (support_lo - g.x_min()) / g.spacing();
            lo = std::size_t(std::floor(t)) + 1;
        }
        if (support_hi < g.x_max()) {
            const double t = (support_hi - g.x_min()) / g.spacing();
            hi = (std::floor(t) == t) ? std::size_t(t) - 1 : std::size_t(std::floor(t));
        }
        return interp_cubic_bounded(psi, y, lo, hi);
    }
};

// Window a sampled state to [a, b] (either side may be infinite).
inline WindowedState make_windowed(const ComplexField1D& psi, double a, double b) {
    if (!(a < b)) throw domain_error("make_windowed: degenerate support");
    std::vector<cxd> v = psi.values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = psi.grid.node(i);
        double w = 1.0;
        if (x < a || x > b) w = 0.0;
        if (x == a || x == b) w = 0.5;
        v[i] *= w;
    }
    WindowedState ws{ComplexField1D(psi.grid, std::move(v)), a, b, 0.0};
    ws.norm = std::sqrt(ws.psi.squared_norm());
    return ws;
}

// Partial Wigner function with the exact truncated limits
//   xi in [Max(2(a-x), 2(x-b)), Min(2(x-a), 2(b-x))];
// zero outside the strip a < x < b by construction.
inline RealField2D partial_wigner(const WindowedState& state, const PhysParams& params,
                                  const Grid1D& x_out, const Grid1D& p_grid) {
    params.validate();
    if (!(state.support_lo < state.support_hi))
        throw domain_error("partial_wigner: degenerate support");
    const double cap = state.psi.grid.length(); // xi window cap for infinite supports
    RealField2D W(x_out, p_grid);

    parallel_for(x_out.size(), [&](std::size_t i) {
        const double x = x_out.node(i);
        const double lo = std::max(std::max(2.0 * (state.support_lo - x), 2.0 * (x - state.support_hi)),
                                   -cap);
        const double hi = std::min(std::min(2.0 * (x - state.support_lo), 2.0 * (state.support_hi - x)),
                                   cap);
        if (!(hi > lo)) return; // outside the strip (or degenerate at the edge): exact zero
        const double omega_max =
            std::max(std::abs(p_grid.x_max()), std::abs(p_grid.x_min())) / params.hbar + 6.0;
        const auto panels = std::size_t(std::max(32.0, std::ceil((hi - lo) * omega_max / 1.2)));
        for (std::size_t j = 0; j < p_grid.size(); ++j) {
            const double p = p_grid.node(j);
            auto f = [&](double xiv) {
                const cxd a = state.eval_interior(x + 0.5 * xiv);
                const cxd b = state.eval_interior(x - 0.5 * xiv);
                return std::conj(a) * b * std::polar(1.0, -xiv * p / params.hbar);
            };
            const cxd val = integrate_panels<cxd>(f, lo, hi, panels);
            W.at(i, j) = (val / (2.0 * std::numbers::pi * params.hbar)).real();
        }
    });
    return W;
}

// Interference Wigner function of two states with spatially separated supports
// (a_l < b_l <= a_r < b_r), from the real part of the truncated cross integral.
inline RealField2D interference_wigner(const WindowedState& left, const WindowedState& right,
                                       const PhysParams& params, const Grid1D& x_out,
                                       const Grid1D& p_grid) {
    params.validate();
    if (!(left.support_hi <= right.support_lo + 1e-12))
        throw precondition_error("interference_wigner: supports overlap beyond a shared endpoint");
    const double cap = left.psi.grid.length();
    RealField2D W(x_out, p_grid);

    parallel_for(x_out.size(), [&](std::size_t i) {
        const double x = x_out.node(i);
        const double lo = std::max(
            std::max(2.0 * (left.support_lo - x), 2.0 * (x - right.support_hi)), -cap);
        const double hi = std::min(
            std::min(2.0 * (left.support_hi - x), 2.0 * (x - right.support_lo)), cap);
        if (!(hi > lo)) return;
        const double omega_max =
            std::max(std::abs(p_grid.x_max()), std::abs(p_grid.x_min())) / params.hbar + 6.0;
        const auto panels = std::size_t(std::max(32.0, std::ceil((hi - lo) * omega_max / 1.2)));
        for (std::size_t j = 0; j < p_grid.size(); ++j) {
            const double p = p_grid.node(j);
            auto f = [&](double xiv) {
                const cxd a = left.eval_interior(x + 0.5 * xiv);
                const cxd b = right.eval_interior(x - 0.5 * xiv);
                return std::conj(a) * b * std::polar(1.0, -xiv * p / params.hbar);
            };
            const cxd val = integrate_panels<cxd>(f, lo, hi, panels);
            W.at(i, j) = (val / (std::numbers::pi * params.hbar)).real();
        }
    });
    return W;
}

// Spectrum of the interference operator |l><r| + |r><l|: eigenvalues +-|l||r| with the
// normalised sum/difference eigenvectors; everything orthogonal to both has eigenvalue 0.
struct InterferenceSpectrum {
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
    double norm_left = 0.0;
    double norm_right = 0.0;
};

inline InterferenceSpectrum interference_spectrum(const WindowedState& left,
                                                  const WindowedState& right) {
    if (!(left.norm > 0.0) || !(right.norm > 0.0))
        throw domain_error("interference_spectrum: zero-norm input");
    InterferenceSpectrum s;
    s.norm_left = left.norm;
    s.norm_right = right.norm;
    s.lambda_plus = left.norm * right.norm;
    s.lambda_minus = -s.lambda_plus;
    return s;
}

// rho_x[i] = sum_j W[i,j] dp;  rho_p[j] = sum_i W[i,j] dx.
inline std::pair<std::vector<double>, std::vector<double>> marginals(const RealField2D& W) {
    std::vector<double> rx(W.x_grid.size(), 0.0), rp(W.p_grid.size(), 0.0);
    for (std::size_t i = 0; i < W.x_grid.size(); ++i)
        for (std::size_t j = 0; j < W.p_grid.size(); ++j) {
            rx[i] += W.at(i, j);
            rp[j] += W.at(i, j);
        }
    for (double& v : rx) v *= W.p_grid.spacing();
    for (double& v : rp) v *= W.x_grid.spacing();
    return {rx, rp};
}

// Position-representation kernel of the box symbol Y(x+a)Y(a-x)Y(p+c)Y(c-p):
//   K(x, x') = sin(c (x-x') / hbar) / (pi (x-x'))   inside |x + x'| < 2a, else 0,
// normalised so that the forward correspondence reproduces the symbol.
inline RealField2D box_symbol_kernel(double a, double c, const PhysParams& params,
                                     const Grid1D& grid) {
    if (!(a > 0.0) || !(c > 0.0)) throw domain_error("box_symbol_kernel: need a, c > 0");
    return RealField2D::sample(grid, grid, [&](double x, double xp) {
        if (std::abs(x + xp) >= 2.0 * a) return 0.0;
        const double d = x - xp;
        if (std::abs(d) < 1e-12) return c / (std::numbers::pi * params.hbar);
        return std::sin(c * d / params.hbar) / (std::numbers::pi * d);
    });
}

// Lattice-consistent split of a state into windowed pieces at the given cut points plus
// the full/partial/interference Wigner fields on a shared conjugate momentum lattice.
// Bilinearity of the cross-correlation in the stored samples makes
//   full = sum partials + interference   hold to machine precision here.
struct WignerDecomposition {
    Grid1D x_grid;
    Grid1D p_grid;
    RealField2D full;
    std::vector<RealField2D> partials;
    RealField2D interference;
};

enum class WignerComponent { full, no_interference, interference };

// Component-resolved Wigner field of a state split at the given cut points. The three
// components share one cross-correlation sampling, so full = no_interference +
// interference holds identically on any output grids.
inline RealField2D component_wigner(const ComplexField1D& psi, const std::vector<double>& cuts,
                                    const PhysParams& params, const Grid1D& x_out,
                                    const Grid1D& p_grid, WignerComponent component) {
    params.validate();
    std::vector<double> edges;
    edges.push_back(-std::numeric_limits<double>::infinity());
    for (double c : cuts) edges.push_back(c);
    edges.push_back(std::numeric_limits<double>::infinity());
    std::vector<WindowedState> pieces;
    for (std::size_t l = 0; l + 1 < edges.size(); ++l)
        pieces.push_back(make_windowed(psi, edges[l], edges[l + 1]));

    const XiSpec xi = XiSpec::for_grid(psi.grid);
    const Grid1D xi_grid = xi.grid();
    const bool conj_lattice = detail::is_conjugate_lattice(p_grid, xi, params);

    RealField2D W(x_out, p_grid);
    parallel_for(x_out.size(), [&](std::size_t i) {
        const double x = x_out.node(i);
        std::vector<cxd> g(xi_grid.size(), cxd{});
        std::vector<cxd> up(pieces.size()), dn(pieces.size());
        for (std::size_t m = 0; m < xi_grid.size(); ++m) {
            const double xiv = xi_grid.node(m);
            cxd up_sum{0.0, 0.0}, dn_sum{0.0, 0.0}, diag{0.0, 0.0};
            for (std::size_t l = 0; l < pieces.size(); ++l) {
                up[l] = interp_cubic(pieces[l].psi, x + 0.5 * xiv);
                dn[l] = interp_cubic(pieces[l].psi, x - 0.5 * xiv);
                up_sum += up[l];
                dn_sum += dn[l];
                diag += std::conj(up[l]) * dn[l];
            }
            switch (component) {
                case WignerComponent::full: g[m] = std::conj(up_sum) * dn_sum; break;
                case WignerComponent::no_interference: g[m] = diag; break;
                case WignerComponent::interference:
                    g[m] = std::conj(up_sum) * dn_sum - diag;
                    break;
            }
        }
        detail::wigner_row(g, xi_grid, params, p_grid, conj_lattice, &W.values[i * p_grid.size()],
                           nullptr);
    });
    return W;
}

inline WignerDecomposition decompose_wigner(const ComplexField1D& psi,
                                            const std::vector<double>& cuts,
                                            const PhysParams& params, const Grid1D& x_out) {
    params.validate();
    std::vector<double> edges;
    edges.push_back(-std::numeric_limits<double>::infinity());
    for (double c : cuts) edges.push_back(c);
    edges.push_back(std::numeric_limits<double>::infinity());
    std::vector<WindowedState> pieces;
    for (std::size_t l = 0; l + 1 < edges.size(); ++l)
        pieces.push_back(make_windowed(psi, edges[l], edges[l + 1]));

    const XiSpec xi = XiSpec::for_grid(psi.grid);
    const Grid1D xi_grid = xi.grid();
    const Grid1D p_grid = wigner_conjugate_momentum_grid(xi, params);

    WignerDecomposition out{x_out, p_grid, RealField2D(x_out, p_grid), {}, RealField2D(x_out, p_grid)};
    out.partials.assign(pieces.size(), RealField2D(x_out, p_grid));

    const std::size_t np = p_grid.size();
    parallel_for(x_out.size(), [&](std::size_t i) {
        const double x = x_out.node(i);
        const std::size_t n_pieces = pieces.size();
        std::vector<std::vector<cxd>> up(n_pieces, std::vector<cxd>(xi_grid.size()));
        std::vector<std::vector<cxd>> dn(n_pieces, std::vector<cxd>(xi_grid.size()));
        for (std::size_t m = 0; m < xi_grid.size(); ++m) {
            const double xiv = xi_grid.node(m);
            for (std::size_t l = 0; l < n_pieces; ++l) {
                up[l][m] = interp_cubic(pieces[l].psi, x + 0.5 * xiv);
                dn[l][m] = interp_cubic(pieces[l].psi, x - 0.5 * xiv);
            }
        }
        std::vector<cxd> g(xi_grid.size());
        std::vector<double> row(np, 0.0);

        auto transform_into = [&](double* dst, double scale) {
            detail::wigner_row(g, xi_grid, params, p_grid, true, row.data(), nullptr);
            for (std::size_t j = 0; j < np; ++j) dst[j] += scale * row[j];
        };

        // partial terms
        for (std::size_t l = 0; l < n_pieces; ++l) {
            for (std::size_t m = 0; m < xi_grid.size(); ++m) g[m] = std::conj(up[l][m]) * dn[l][m];
            transform_into(&out.partials[l].values[i * np], 1.0);
            transform_into(&out.full.values[i * np], 1.0);
        }
        // interference terms (both orderings of each unordered pair)
        for (std::size_t l = 0; l < n_pieces; ++l)
            for (std::size_t r = 0; r < n_pieces; ++r) {
                if (l == r) continue;
                for (std::size_t m = 0; m < xi_grid.size(); ++m)
                    g[m] = std::conj(up[l][m]) * dn[r][m];
                transform_into(&out.interference.values[i * np], 1.0);
                transform_into(&out.full.values[i * np], 1.0);
            }
    });
    return out;
}

} // namespace pswkb
