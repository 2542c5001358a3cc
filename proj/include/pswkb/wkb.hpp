#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "pswkb/grid.hpp"
#include "pswkb/potentials.hpp"
#include "pswkb/quadrature.hpp"
#include "pswkb/special.hpp"

namespace pswkb {

enum class Branch { I, II };

inline constexpr unsigned kMaxWkbOrder = 4;

// (hbar/i)^k
inline cxd hbar_over_i_pow(double hbar, unsigned k) {
    cxd f{1.0, 0.0};
    const cxd b{0.0, -hbar}; // hbar / i = -i hbar
    for (unsigned j = 0; j < k; ++j) f *= b;
    return f;
}

// Jets of the phase-term derivatives sigma_k'(x), k = 0..K, branch I convention
// sigma_0' = principal sqrt(2M(E-V)); branch II flips the sign of sigma_0', which
// propagates through the recurrence as sigma_k^{II} = (-1)^{k+1} sigma_k^{I}.
inline std::vector<Jet> phase_derivative_jets(const PotentialModel& m, double E, Branch branch,
                                              unsigned K, double x, std::size_t extra_degree = 2) {
    if (K > kMaxWkbOrder) throw domain_error("phase order K must be <= 4");
    const std::size_t deg = K + extra_degree;
    Jet v = potential_jet(m, x, deg);
    Jet q = Jet::constant(2.0 * m.params.mass * E, deg) - (2.0 * m.params.mass) * v;
    if (std::abs(q.value()) < 1e-14)
        throw validity_error("phase terms: classical momentum vanishes inside region");
    Jet s0 = q.sqrt();
    if (branch == Branch::II) s0 = cxd{-1.0, 0.0} * s0;

    std::vector<Jet> s;
    s.reserve(K + 1);
    s.push_back(s0);
    const Jet inv_2s0 = (cxd{2.0, 0.0} * s0).reciprocal();
    for (unsigned k = 1; k <= K; ++k) {
        Jet acc = s[k - 1].derivative();
        for (unsigned j = 1; j <= k - 1; ++j) acc += s[j] * s[k - j];
        s.push_back(cxd{-1.0, 0.0} * (acc * inv_2s0));
    }
    return s;
}

// Residual of the exact phase equation  (sigma')^2/2M - i hbar sigma''/2M - (E - V)
// for the truncated series sigma = sum_k (hbar/i)^k sigma_k; order hbar^{K+1}.
inline cxd phase_equation_residual(const PotentialModel& m, double E, Branch branch, unsigned K,
                                   double x) {
    auto s = phase_derivative_jets(m, E, branch, K, x);
    const double hbar = m.params.hbar;
    cxd sp{0.0, 0.0}, spp{0.0, 0.0};
    for (unsigned k = 0; k <= K; ++k) {
        const cxd f = hbar_over_i_pow(hbar, k);
        sp += f * s[k].value();
        spp += f * s[k].derivative().value();
    }
    const double M = m.params.mass;
    return sp * sp / (2.0 * M) - cxd{0.0, hbar} * spp / (2.0 * M) - (E - eval_potential(m, x));
}

// Sampled phase terms sigma_0..sigma_K on a region. Integration constants are zero at
// x_ref except sigma_1, which keeps its closed form -(1/4) Log(2M(E-V)) so that
// exp(sigma_1) = p^{-1/2} up to a constant phase; that form is branch independent.
struct PhaseSeries {
    double region_lo = 0.0, region_hi = 0.0;
    Branch branch = Branch::I;
    unsigned order = 1;
    double x_ref = 0.0;
    double hbar = 1.0;
    double energy = 0.0;
    Grid1D grid;
    std::vector<std::vector<cxd>> terms; // terms[k][i] = sigma_k at grid node i

    cxd term_at(unsigned k, std::size_t i) const { return terms[k][i]; }

    // Total phase at node i; terms[] already hold the stored branch's sigma_k.
    cxd total_at(std::size_t i) const {
        cxd acc{0.0, 0.0};
        for (unsigned k = 0; k <= order; ++k) acc += hbar_over_i_pow(hbar, k) * terms[k][i];
        return acc;
    }
};

inline PhaseSeries solve_phase_terms(const PotentialModel& m, double E, Branch branch, unsigned K,
                                     double region_lo, double region_hi, std::size_t n_samples,
                                     double x_ref, double validity_margin = 0.0) {
    if (K > kMaxWkbOrder) throw domain_error("solve_phase_terms: K must be <= 4");
    if (!(region_lo < region_hi)) throw domain_error("solve_phase_terms: empty region");
    for (const auto& tp : turning_points(m, E).points) {
        if (tp.x >= region_lo - validity_margin && tp.x <= region_hi + validity_margin)
            throw validity_error("solve_phase_terms: region touches a turning point");
    }
    if (x_ref < region_lo - 1e-12 || x_ref > region_hi + 1e-12)
        throw domain_error("solve_phase_terms: x_ref outside region");

    Grid1D g(region_lo, region_hi, n_samples);
    PhaseSeries out{region_lo, region_hi, branch, K, x_ref, m.params.hbar, E, g, {}};
    out.terms.assign(K + 1, std::vector<cxd>(n_samples, cxd{}));

    // sigma_k' evaluated pointwise through the jet recurrence for the requested branch
    auto deriv = [&](unsigned k, double x) -> cxd {
        auto s = phase_derivative_jets(m, E, branch, k, x, 1);
        return s[k].value();
    };

    // cumulative integration from x_ref outward along the grid
    std::vector<double> nodes(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) nodes[i] = g.node(i);
    const std::size_t i_ref = g.nearest(x_ref);

    for (unsigned k = 0; k <= K; ++k) {
        if (k == 1) {
            for (std::size_t i = 0; i < n_samples; ++i) {
                const cxd q = 2.0 * m.params.mass * (E - eval_potential(m, nodes[i]));
                out.terms[1][i] = -0.25 * std::log(q);
            }
            continue;
        }
        auto f = [&](double x) { return deriv(k, x); };
        std::vector<cxd> vals(n_samples, cxd{});
        cxd ref_offset = integrate<cxd>(f, x_ref, nodes[i_ref], 1e-13, 1e-13);
        vals[i_ref] = ref_offset;
        for (std::size_t i = i_ref + 1; i < n_samples; ++i)
            vals[i] = vals[i - 1] + integrate<cxd>(f, nodes[i - 1], nodes[i], 1e-13, 1e-13);
        for (std::size_t i = i_ref; i-- > 0;)
            vals[i] = vals[i + 1] - integrate<cxd>(f, nodes[i], nodes[i + 1], 1e-13, 1e-13);
        out.terms[k] = std::move(vals);
    }

    return out;
}

// Branch II terms from branch I by the sign rule sigma_k^{II} = (-1)^{k+1} sigma_k^{I}.
inline PhaseSeries other_branch(const PhaseSeries& s) {
    PhaseSeries out = s;
    out.branch = (s.branch == Branch::I) ? Branch::II : Branch::I;
    for (unsigned k = 0; k <= s.order; ++k) {
        const double flip = (k % 2 == 0) ? -1.0 : 1.0;
        for (auto& v : out.terms[k]) v *= flip;
    }
    return out;
}

// sigma_odd = sum (hbar/i)^{2k+1} sigma_{2k+1},  sigma_even = sum (hbar/i)^{2k} sigma_{2k}.
inline std::pair<std::vector<cxd>, std::vector<cxd>> split_odd_even(const PhaseSeries& s) {
    std::vector<cxd> odd(s.grid.size(), cxd{}), even(s.grid.size(), cxd{});
    for (unsigned k = 0; k <= s.order; ++k) {
        const cxd f = hbar_over_i_pow(s.hbar, k);
        for (std::size_t i = 0; i < s.grid.size(); ++i) {
            if (k % 2 == 1)
                odd[i] += f * s.terms[k][i];
            else
                even[i] += f * s.terms[k][i];
        }
    }
    return {odd, even};
}

// Action integral between the two turning points, with sqrt endpoint handling.
inline double action_integral(const PotentialModel& m, double E) {
    auto tps = turning_points(m, E);
    if (tps.points.size() != 2)
        throw quantization_error("action_integral: need exactly two turning points");
    const double x1 = tps.points[0].x, x2 = tps.points[1].x;
    auto f = [&](double x) {
        const double q = 2.0 * m.params.mass * (E - eval_potential(m, x));
        return q > 0.0 ? std::sqrt(q) : 0.0;
    };
    return integrate_tanh_sinh(f, x1, x2, 1e-13);
}

// Solve  \int_{x1}^{x2} p dy = hbar (n + 1/2) pi  for E (bracket then secant/bisection).
inline double quantize_energy(const PotentialModel& m, unsigned n) {
    const double target = m.params.hbar * (double(n) + 0.5) * std::numbers::pi;
    auto g = [&](double E) { return action_integral(m, E) - target; };

    // crude potential minimum over the root-search window
    auto [wlo, whi] = detail::root_search_window(m, m.params.hbar * m.params.omega * (double(n) + 0.5));
    double vmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 512; ++i)
        vmin = std::min(vmin, eval_potential(m, wlo + (whi - wlo) * double(i) / 512.0));

    const double scale = std::max(1e-6, m.params.hbar * m.params.omega);
    double E_lo = vmin + 1e-9 * scale;
    double g_lo;
    try {
        g_lo = g(E_lo);
    } catch (const quantization_error&) {
        throw quantization_error("quantize_energy: no bracketing interval found");
    }
    double E_hi = vmin + scale;
    double g_hi = 0.0;
    bool bracketed = false;
    for (int it = 0; it < 80; ++it) {
        try {
            g_hi = g(E_hi);
        } catch (const quantization_error&) {
            throw quantization_error("quantize_energy: no bracketing interval found");
        }
        if (g_lo <= 0.0 && g_hi >= 0.0) {
            bracketed = true;
            break;
        }
        E_lo = E_hi;
        g_lo = g_hi;
        E_hi = vmin + (E_hi - vmin) * 2.0;
    }
    if (!bracketed) throw quantization_error("quantize_energy: no bracketing interval found");

    // secant with bisection fallback, absolute tolerance 1e-10 in the action
    double a = E_lo, b = E_hi, fa = g_lo, fb = g_hi;
    for (int it = 0; it < 200; ++it) {
        double c = (std::abs(fb - fa) > 0.0) ? b - fb * (b - a) / (fb - fa) : 0.5 * (a + b);
        if (!(c > a && c < b)) c = 0.5 * (a + b);
        const double fc = g(c);
        if (std::abs(fc) <= 1e-10) return c;
        if (fa * fc <= 0.0) {
            b = c;
            fb = fc;
        } else {
            a = c;
            fa = fc;
        }
    }
    throw quantization_error("quantize_energy: secant iteration did not converge");
}

enum class PatchOrientation { left, right };

// Exact solution of the linearised stationary equation near a turning point:
//   psi(x) = C Phi((2 M F / hbar^2)^{1/3} (x_t - x))            (left turning point)
//   psi(x) = C Phi((2 M F / hbar^2)^{1/3} (x - x_t))            (right turning point)
// with F = |V'(x_t)| stored as a magnitude.
struct LocalAirySolution {
    double x_t = 0.0;
    double slope_magnitude = 1.0; // F
    cxd scale{1.0, 0.0};          // C
    PatchOrientation orientation = PatchOrientation::left;
    double hbar = 1.0, mass = 1.0;

    double argument_scale() const {
        return std::cbrt(2.0 * mass * slope_magnitude / (hbar * hbar));
    }
    double argument(double x) const {
        const double s = (orientation == PatchOrientation::left) ? (x_t - x) : (x - x_t);
        return argument_scale() * s;
    }
    cxd eval(double x) const { return scale * airy_phi(argument(x)); }
};

inline LocalAirySolution airy_patch(const PotentialModel& m, double E, double tp,
                                    PatchOrientation orientation) {
    const double slope = potential_derivative(m, tp);
    if (slope == 0.0) throw degenerate_turning_point_error("airy_patch: degenerate slope");
    if (std::abs(eval_potential(m, tp) - E) > 1e-8 * std::max(1.0, std::abs(E)))
        throw domain_error("airy_patch: tp is not a turning point of E");
    LocalAirySolution s;
    s.x_t = tp;
    s.slope_magnitude = std::abs(slope);
    s.orientation = orientation;
    s.hbar = m.params.hbar;
    s.mass = m.params.mass;
    return s;
}

// Region fractions of the five-region decomposition, in units of the turning point
// position; defaults follow the harmonic-oscillator example and are configurable.
struct RegionLayout {
    double forbidden_start = 1.25; // A regions begin at +-forbidden_start * x0
    double patch_outer = 1.5;      // B regions span [patch_inner, patch_outer] * x0
    double patch_inner = 0.75;
    double allowed_end = 0.875; // C region is [-allowed_end, allowed_end] * x0
};

struct MatchDiagnostics {
    double ratio_dev_left = 0.0;  // fitted forbidden-side connection ratio vs closed form
    double ratio_dev_right = 0.0;
    double fitted_delta_left = 0.0;  // before snapping
    double fitted_delta_right = 0.0;
    double fit_residual = 0.0; // worst relative rms residual across the four fits
};

// Matched five-region assembly for a two-turning-point problem.
struct MatchedAssembly {
    PotentialModel model;
    double energy = 0.0;
    unsigned n = 0;
    unsigned order = 1;
    double x1 = 0.0, x2 = 0.0; // turning points
    RegionLayout layout{};
    // region boundaries (absolute coordinates)
    double aL_hi = 0.0, bL_lo = 0.0, bL_hi = 0.0, c_lo = 0.0, c_hi = 0.0, bR_lo = 0.0,
           bR_hi = 0.0, aR_lo = 0.0;
    LocalAirySolution patch_left, patch_right;
    // coefficients in the real-amplitude convention of the matching relations
    double D_AL = 0.0, C_BL = 0.0, D_C = 0.0, delta = 0.0, C_BR = 0.0, D_AR = 0.0;
    double normalisation = 1.0; // N, fixed by unit norm at assembly time
    MatchDiagnostics diagnostics{};
    std::optional<PhaseSeries> phase_AL, phase_C, phase_AR; // for order >= 2 corrections

    double forbidden_momentum(double x) const {
        return std::sqrt(std::max(0.0, 2.0 * model.params.mass * (eval_potential(model, x) - energy)));
    }
    double allowed_momentum(double x) const {
        return std::sqrt(std::max(0.0, 2.0 * model.params.mass * (energy - eval_potential(model, x))));
    }
};

namespace detail {

// forbidden-side connection fit in the patch variable z: ratio of Phi(z) against the
// asymptotic model z^{-1/4} exp(-zeta) (1 - 5/72 zeta + 385/10368 zeta^2)
inline std::pair<double, double> connection_fit_forbidden(double z_lo, double z_hi) {
    const std::size_t n = 96;
    double num = 0.0, den = 0.0, res = 0.0;
    std::vector<double> ratio(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = z_lo + (z_hi - z_lo) * double(i) / double(n - 1);
        const double zeta = (2.0 / 3.0) * std::pow(z, 1.5);
        const double model = std::pow(z, -0.25) * std::exp(-zeta) *
                             (1.0 - 5.0 / (72.0 * zeta) + 385.0 / (10368.0 * zeta * zeta));
        const double f = airy_phi(z);
        ratio[i] = f / model;
        num += ratio[i];
        den += 1.0;
    }
    const double R = num / den;
    for (double r : ratio) res = std::max(res, std::abs(r / R - 1.0));
    return {R, res};
}

// allowed-side fit of Phi(-y) in the basis built around the asymptotic form
//   y^{-1/4} [ sin(zeta + pi/4) - u1/zeta cos(zeta + pi/4) ]  (and its quadrature partner),
// so the fitted offset reads delta = pi/4 + atan2(beta, alpha)
inline std::tuple<double, double, double> connection_fit_allowed(double y_lo, double y_hi) {
    const std::size_t n = 128;
    double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
    std::vector<std::array<double, 3>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = y_lo + (y_hi - y_lo) * double(i) / double(n - 1);
        const double zeta = (2.0 / 3.0) * std::pow(y, 1.5) + std::numbers::pi / 4.0;
        const double u1 = 5.0 / (72.0 * (zeta - std::numbers::pi / 4.0));
        const double amp = std::pow(y, -0.25);
        const double bs = amp * (std::sin(zeta) - u1 * std::cos(zeta));
        const double bc = amp * (std::cos(zeta) + u1 * std::sin(zeta));
        const double f = airy_phi(-y);
        rows[i] = {bs, bc, f};
        s11 += bs * bs;
        s12 += bs * bc;
        s22 += bc * bc;
        b1 += bs * f;
        b2 += bc * f;
    }
    const double det = s11 * s22 - s12 * s12;
    const double alpha = (b1 * s22 - b2 * s12) / det;
    const double beta = (s11 * b2 - s12 * b1) / det;
    double res = 0.0, scale = std::hypot(alpha, beta);
    for (auto& r : rows)
        res = std::max(res, std::abs(alpha * r[0] + beta * r[1] - r[2]) / scale);
    return {alpha, beta, res};
}

} // namespace detail

// Determine region boundaries, run the connection fits, snap the phase offset to the
// discrete set pi/4 + m pi (simplest member m = 0) and set the coefficients from the
// matching relations; the normalisation N stays symbolic until assembly.
inline MatchedAssembly match_coefficients(const PotentialModel& m, double E, unsigned n,
                                          unsigned order = 1, RegionLayout layout = {},
                                          double fit_residual_threshold = 0.08) {
    auto tps = turning_points(m, E);
    if (tps.points.size() != 2)
        throw matching_error("match_coefficients: need exactly two turning points", 0.0);

    MatchedAssembly a;
    a.model = m;
    a.energy = E;
    a.n = n;
    a.order = order;
    a.layout = layout;
    a.x1 = tps.points[0].x;
    a.x2 = tps.points[1].x;

    const double x0 = std::max(std::abs(a.x1), std::abs(a.x2));
    a.aL_hi = -layout.forbidden_start * x0;
    a.bL_lo = -layout.patch_outer * x0;
    a.bL_hi = -layout.patch_inner * x0;
    a.c_lo = -layout.allowed_end * x0;
    a.c_hi = layout.allowed_end * x0;
    a.bR_lo = layout.patch_inner * x0;
    a.bR_hi = layout.patch_outer * x0;
    a.aR_lo = layout.forbidden_start * x0;

    a.patch_left = airy_patch(m, E, a.x1, PatchOrientation::left);
    a.patch_right = airy_patch(m, E, a.x2, PatchOrientation::right);

    // connection fits in the patch variable over the physical overlap windows
    const double cl = a.patch_left.argument_scale();
    const double cr = a.patch_right.argument_scale();
    auto [Rl, res1] = detail::connection_fit_forbidden(cl * (a.x1 - a.aL_hi), cl * (a.x1 - a.bL_lo));
    auto [Rr, res2] = detail::connection_fit_forbidden(cr * (a.aR_lo - a.x2), cr * (a.bR_hi - a.x2));
    // Allowed-side fit windows sit inside Airy-asymptotic validity: distances from the
    // turning point in [mult * validity_radius, that + (x2-x1)/4], clipped to region C.
    const double mult = 3.0;
    auto allowed_window = [&](double tp_x, double vr) {
        const double d_lo = std::max(mult * vr, 0.05 * (a.x2 - a.x1));
        const double d_hi = std::min(d_lo + 0.25 * (a.x2 - a.x1), 0.49 * (a.x2 - a.x1));
        return std::pair<double, double>{d_lo, d_hi};
    };
    auto [dl_lo, dl_hi] = allowed_window(a.x1, validity_radius(m, a.x1));
    auto [dr_lo, dr_hi] = allowed_window(a.x2, validity_radius(m, a.x2));
    auto [aL, bL, resL] = detail::connection_fit_allowed(cl * dl_lo, cl * dl_hi);
    auto [aR, bR, resR] = detail::connection_fit_allowed(cr * dr_lo, cr * dr_hi);

    a.diagnostics.ratio_dev_left = Rl / 0.5 - 1.0;
    a.diagnostics.ratio_dev_right = Rr / 0.5 - 1.0;
    a.diagnostics.fitted_delta_left = std::numbers::pi / 4.0 + std::atan2(bL, aL);
    a.diagnostics.fitted_delta_right = std::numbers::pi / 4.0 + std::atan2(bR, aR);
    a.diagnostics.fit_residual = std::max({res1, res2, resL, resR});
    if (a.diagnostics.fit_residual > fit_residual_threshold)
        throw matching_error("match_coefficients: connection fit residual above threshold",
                             a.diagnostics.fit_residual);

    // snap delta to the discrete set pi/4 + m pi; the fits select the member (m = 0)
    const double snapL = std::round((a.diagnostics.fitted_delta_left - std::numbers::pi / 4.0) /
                                    std::numbers::pi);
    a.delta = std::numbers::pi / 4.0 + snapL * std::numbers::pi;

    // coefficient relations, N = 1 until normalisation
    const double hbar = m.params.hbar, M = m.params.mass;
    const double factor_l = std::pow(2.0 * M * a.patch_left.slope_magnitude * hbar, 1.0 / 6.0);
    const double factor_r = std::pow(2.0 * M * a.patch_right.slope_magnitude * hbar, 1.0 / 6.0);
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    a.D_C = 1.0;                      // N
    a.C_BL = a.D_C / factor_l;        // from D_C = (-1)^m C_BL (2MF hbar)^{1/6}, m = 0
    a.D_AL = 0.5 * a.C_BL * factor_l; // = N/2
    a.C_BR = parity * a.D_C / factor_r;
    a.D_AR = 0.5 * a.C_BR * factor_r; // = (-1)^n N/2
    a.patch_left.scale = a.C_BL;
    a.patch_right.scale = a.C_BR;

    // phase series for the higher-order corrections
    if (order >= 2) {
        const double margin = 3.0 * validity_radius(m, a.x1);
        a.phase_AL = solve_phase_terms(m, E, Branch::II, order, a.bL_lo - 6.0 * x0,
                                       a.aL_hi + 0.25 * margin, 512, a.aL_hi);
        a.phase_C = solve_phase_terms(m, E, Branch::I, order, a.c_lo, a.c_hi, 512, 0.0);
        a.phase_AR = solve_phase_terms(m, E, Branch::I, order, a.aR_lo - 0.25 * margin,
                                       a.bR_hi + 6.0 * x0, 512, a.aR_lo);
    }
    return a;
}

namespace detail {

inline double raised_cosine(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return 0.5 - 0.5 * std::cos(std::numbers::pi * t);
}

} // namespace detail

// Evaluate the matched piecewise solution at x (unnormalised; multiply by N afterwards).
inline cxd assembly_eval_unnormalised(const MatchedAssembly& a, double x) {
    const double hbar = a.model.params.hbar;

    auto forbidden_exp = [&](double from, double to) {
        auto f = [&](double y) { return a.forbidden_momentum(y); };
        return integrate_tanh_sinh(f, std::min(from, to), std::max(from, to), 1e-12) *
               ((to >= from) ? 1.0 : -1.0);
    };
    auto correction = [&](const std::optional<PhaseSeries>& ps, double xx) -> cxd {
        if (!ps || a.order < 2) return cxd{1.0, 0.0};
        // interpolate the k >= 2 terms linearly on the stored grid
        cxd acc{0.0, 0.0};
        const Grid1D& g = ps->grid;
        const double t = std::clamp((xx - g.x_min()) / g.spacing(), 0.0, double(g.size() - 1));
        const auto i = std::min(std::size_t(t), g.size() - 2);
        const double u = t - double(i);
        for (unsigned k = 2; k <= ps->order; ++k) {
            const cxd v = (1.0 - u) * ps->terms[k][i] + u * ps->terms[k][i + 1];
            acc += hbar_over_i_pow(hbar, k) * v;
        }
        return std::exp(acc);
    };

    // the zeroth approximation keeps the phase sigma_0 only (no 1/sqrt(p) amplitude)
    auto amp = [&](double momentum) { return a.order >= 1 ? 1.0 / std::sqrt(momentum) : 1.0; };

    auto piece_AL = [&](double xx) -> cxd {
        return a.D_AL * amp(a.forbidden_momentum(xx)) * std::exp(forbidden_exp(a.x1, xx) / hbar) *
               correction(a.phase_AL, xx);
    };
    auto piece_AR = [&](double xx) -> cxd {
        return a.D_AR * amp(a.forbidden_momentum(xx)) * std::exp(-forbidden_exp(a.x2, xx) / hbar) *
               correction(a.phase_AR, xx);
    };
    auto theta = [&](double xx) {
        auto f = [&](double y) { return a.allowed_momentum(y); };
        return integrate_tanh_sinh(f, a.x1, xx, 1e-12) / hbar;
    };
    auto piece_C = [&](double xx) -> cxd {
        const double pa = a.allowed_momentum(xx);
        if (a.order < 2) return a.D_C * amp(pa) * std::sin(theta(xx) + a.delta);
        // two-branch combination with the k >= 2 corrections
        const cxd gI = [&] {
            cxd acc{0.0, 0.0};
            const Grid1D& g = a.phase_C->grid;
            const double t = std::clamp((xx - g.x_min()) / g.spacing(), 0.0, double(g.size() - 1));
            const auto i = std::min(std::size_t(t), g.size() - 2);
            const double u = t - double(i);
            for (unsigned k = 2; k <= a.phase_C->order; ++k)
                acc += hbar_over_i_pow(hbar, k) *
                       ((1.0 - u) * a.phase_C->terms[k][i] + u * a.phase_C->terms[k][i + 1]);
            return acc;
        }();
        const cxd gII = -std::conj(gI); // sigma_k real in the allowed region
        const double th = theta(xx);
        const cxd up = std::exp(cxd{0.0, th + a.delta} + gI);
        const cxd dn = std::exp(cxd{0.0, -(th + a.delta)} + gII);
        return a.D_C / std::sqrt(pa) * (up - dn) / cxd{0.0, 2.0};
    };

    // region membership with raised-cosine blending over the four overlap zones
    if (x <= a.bL_lo) return piece_AL(x);
    if (x <= a.aL_hi) {
        const double w = detail::raised_cosine((x - a.bL_lo) / (a.aL_hi - a.bL_lo));
        return (1.0 - w) * piece_AL(x) + w * a.patch_left.eval(x);
    }
    if (x < a.c_lo) return a.patch_left.eval(x);
    if (x <= a.bL_hi) {
        const double w = detail::raised_cosine((x - a.c_lo) / (a.bL_hi - a.c_lo));
        return (1.0 - w) * a.patch_left.eval(x) + w * piece_C(x);
    }
    if (x < a.bR_lo) return piece_C(x);
    if (x <= a.c_hi) {
        const double w = detail::raised_cosine((x - a.bR_lo) / (a.c_hi - a.bR_lo));
        return (1.0 - w) * piece_C(x) + w * a.patch_right.eval(x);
    }
    if (x < a.aR_lo) return a.patch_right.eval(x);
    if (x <= a.bR_hi) {
        const double w = detail::raised_cosine((x - a.aR_lo) / (a.bR_hi - a.aR_lo));
        return (1.0 - w) * a.patch_right.eval(x) + w * piece_AR(x);
    }
    return piece_AR(x);
}

// Piecewise global solution on a grid, blended over the overlaps and normalised to unit
// discrete norm. Sets assembly.normalisation to the factor N actually applied.
inline ComplexField1D assemble_wavefunction(MatchedAssembly& a, const Grid1D& grid) {
    std::vector<cxd> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = assembly_eval_unnormalised(a, grid.node(i));
    double norm2 = 0.0;
    for (const cxd& z : v) norm2 += std::norm(z);
    norm2 *= grid.spacing();
    if (!(norm2 > 0.0)) throw coverage_error("assemble_wavefunction: zero norm on grid");
    const double N = 1.0 / std::sqrt(norm2);
    for (cxd& z : v) z *= N;
    a.normalisation = N;
    return ComplexField1D(grid, std::move(v));
}

} // namespace pswkb
