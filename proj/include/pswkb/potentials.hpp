#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "pswkb/grid.hpp"
#include "pswkb/interp.hpp"
#include "pswkb/jet.hpp"
#include "pswkb/params.hpp"
#include "pswkb/special.hpp"

namespace pswkb {

enum class PotentialKind { harmonic, poeschl_teller, linear, user_sampled };

// A 1-D potential model. `linear` is V(x) = V0 - F (x - x_ref); `user_sampled`
// interpolates the stored real samples linearly.
struct PotentialModel {
    PotentialKind kind = PotentialKind::harmonic;
    PhysParams params{};
    double linear_v0 = 0.0;
    double linear_slope_f = 1.0; // F = -dV/dx
    double linear_x_ref = 0.0;
    std::optional<ComplexField1D> samples{};

    static PotentialModel harmonic(const PhysParams& p) {
        p.validate();
        return PotentialModel{PotentialKind::harmonic, p};
    }
    static PotentialModel poeschl_teller(const PhysParams& p) {
        p.validate();
        return PotentialModel{PotentialKind::poeschl_teller, p};
    }
    static PotentialModel linear(const PhysParams& p, double v0, double slope_f, double x_ref) {
        p.validate();
        PotentialModel m{PotentialKind::linear, p};
        m.linear_v0 = v0;
        m.linear_slope_f = slope_f;
        m.linear_x_ref = x_ref;
        return m;
    }
    static PotentialModel sampled(const PhysParams& p, ComplexField1D field) {
        p.validate();
        PotentialModel m{PotentialKind::user_sampled, p};
        m.samples = std::move(field);
        return m;
    }
};

inline double eval_potential(const PotentialModel& m, double x) {
    if (!std::isfinite(x)) throw domain_error("eval_potential: non-finite x");
    switch (m.kind) {
        case PotentialKind::harmonic:
            return 0.5 * m.params.mass * m.params.omega * m.params.omega * x * x;
        case PotentialKind::poeschl_teller: {
            const double c = std::cosh(m.params.a * x);
            return -(m.params.hbar * m.params.hbar * m.params.a * m.params.a / m.params.mass) /
                   (c * c);
        }
        case PotentialKind::linear:
            return m.linear_v0 - m.linear_slope_f * (x - m.linear_x_ref);
        case PotentialKind::user_sampled:
            return interp_linear_real(*m.samples, x);
    }
    throw domain_error("eval_potential: unknown kind");
}

inline double potential_derivative(const PotentialModel& m, double x) {
    switch (m.kind) {
        case PotentialKind::harmonic:
            return m.params.mass * m.params.omega * m.params.omega * x;
        case PotentialKind::poeschl_teller: {
            const double a = m.params.a;
            const double c = std::cosh(a * x), s = std::sinh(a * x);
            return 2.0 * m.params.hbar * m.params.hbar * a * a * a / m.params.mass * s / (c * c * c);
        }
        case PotentialKind::linear:
            return -m.linear_slope_f;
        case PotentialKind::user_sampled: {
            const Grid1D& g = m.samples->grid;
            const double h = g.spacing();
            const double xm = std::max(g.x_min(), x - 0.5 * h);
            const double xp = std::min(g.x_max(), x + 0.5 * h);
            return (interp_linear_real(*m.samples, xp) - interp_linear_real(*m.samples, xm)) /
                   (xp - xm);
        }
    }
    throw domain_error("potential_derivative: unknown kind");
}

// Taylor jet of V at x. Analytic kinds provide exact coefficients to any degree;
// user-sampled models support degree <= 1 only.
inline Jet potential_jet(const PotentialModel& m, double x, std::size_t degree) {
    Jet v(degree);
    switch (m.kind) {
        case PotentialKind::harmonic: {
            const double mw2 = m.params.mass * m.params.omega * m.params.omega;
            v.c[0] = 0.5 * mw2 * x * x;
            if (degree >= 1) v.c[1] = mw2 * x;
            if (degree >= 2) v.c[2] = 0.5 * mw2;
            return v;
        }
        case PotentialKind::poeschl_teller: {
            // cosh(a(x+t)) jet, then V = -C / cosh^2
            Jet ch(degree);
            double am = 1.0;
            for (std::size_t i = 0; i <= degree; ++i) {
                ch.c[i] = am * ((i % 2 == 0) ? std::cosh(m.params.a * x) : std::sinh(m.params.a * x));
                am *= m.params.a / double(i + 1);
            }
            const double C = m.params.hbar * m.params.hbar * m.params.a * m.params.a / m.params.mass;
            return std::complex<double>(-C) * (ch * ch).reciprocal();
        }
        case PotentialKind::linear:
            v.c[0] = m.linear_v0 - m.linear_slope_f * (x - m.linear_x_ref);
            if (degree >= 1) v.c[1] = -m.linear_slope_f;
            return v;
        case PotentialKind::user_sampled:
            if (degree > 1)
                throw validity_error("potential_jet: user_sampled supports degree <= 1");
            v.c[0] = eval_potential(m, x);
            if (degree >= 1) v.c[1] = potential_derivative(m, x);
            return v;
    }
    throw domain_error("potential_jet: unknown kind");
}

struct TurningPoint {
    double x = 0.0;
    int slope_sign = 0; // sign of V'(x)
};

struct TurningPointSet {
    std::vector<TurningPoint> points; // sorted ascending
};

namespace detail {
inline std::pair<double, double> root_search_window(const PotentialModel& m, double E) {
    switch (m.kind) {
        case PotentialKind::harmonic: {
            const double amp =
                std::sqrt(std::max(1.0, 2.0 * std::abs(E) / m.params.mass)) / m.params.omega;
            const double x_char = std::max(std::sqrt(m.params.hbar / (m.params.mass * m.params.omega)), amp);
            return {-10.0 * x_char, 10.0 * x_char};
        }
        case PotentialKind::poeschl_teller:
            return {-10.0 / m.params.a, 10.0 / m.params.a};
        case PotentialKind::linear: {
            const double slope = std::abs(m.linear_slope_f);
            const double x_char =
                (slope > 0.0) ? std::abs(m.linear_v0 - E) / slope + 1.0
                              : 1.0; // flat potential: no roots, any finite window will do
            return {m.linear_x_ref - 10.0 * x_char, m.linear_x_ref + 10.0 * x_char};
        }
        case PotentialKind::user_sampled:
            return {m.samples->grid.x_min(), m.samples->grid.x_max()};
    }
    throw domain_error("root_search_window: unknown kind");
}
} // namespace detail

// All real roots of V(x) = E in the search window, by sign scan plus bisection.
inline TurningPointSet turning_points(const PotentialModel& m, double E) {
    if (!std::isfinite(E)) throw domain_error("turning_points: non-finite E");
    auto [lo, hi] = detail::root_search_window(m, E);
    const std::size_t n_scan = 8192;
    const double h = (hi - lo) / double(n_scan);
    auto f = [&](double x) { return eval_potential(m, x) - E; };

    TurningPointSet out;
    double xa = lo, fa = f(xa);
    for (std::size_t i = 1; i <= n_scan; ++i) {
        const double xb = lo + double(i) * h;
        const double fb = f(xb);
        if (fa == 0.0) out.points.push_back({xa, 0});
        if (fa * fb < 0.0) {
            double a = xa, b = xb, va = fa;
            for (int it = 0; it < 128 && (b - a) > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b));
                 ++it) {
                const double mid = 0.5 * (a + b);
                const double vm = f(mid);
                if (va * vm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    va = vm;
                }
            }
            double root = 0.5 * (a + b);
            // Newton polish where the slope is analytic
            for (int it = 0; it < 3; ++it) {
                const double d = potential_derivative(m, root);
                if (d == 0.0) break;
                root -= f(root) / d;
            }
            const double dv = potential_derivative(m, root);
            out.points.push_back({root, dv > 0.0 ? 1 : (dv < 0.0 ? -1 : 0)});
        }
        xa = xb;
        fa = fb;
    }
    return out;
}

// Right-hand side of the WKB applicability inequality at a turning point:
//   (1/2) (hbar^2 / (M |V'(x0)|))^{1/3}.
inline double validity_radius(const PotentialModel& m, double x0) {
    const double slope = potential_derivative(m, x0);
    if (slope == 0.0 || !std::isfinite(slope))
        throw degenerate_turning_point_error("validity_radius: vanishing slope at turning point");
    const double h2 = m.params.hbar * m.params.hbar;
    return 0.5 * std::cbrt(h2 / (m.params.mass * std::abs(slope)));
}

// Exact Wigner energy eigenfunction of the 1-D harmonic oscillator:
//   W_n = ((-1)^n / pi hbar) exp(-2H/hbar omega) L_n(4H/hbar omega).
inline double ho_exact_wigner_value(unsigned n, const PhysParams& params, double x, double p) {
    const double H = p * p / (2.0 * params.mass) +
                     0.5 * params.mass * params.omega * params.omega * x * x;
    const double y = 2.0 * H / (params.hbar * params.omega);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign / (std::numbers::pi * params.hbar) * std::exp(-y) * laguerre(n, 2.0 * y);
}

inline RealField2D ho_exact_wigner(unsigned n, const PhysParams& params, const Grid1D& x_grid,
                                   const Grid1D& p_grid) {
    params.validate();
    return RealField2D::sample(x_grid, p_grid, [&](double x, double p) {
        return ho_exact_wigner_value(n, params, x, p);
    });
}

inline ComplexField1D ho_exact_wave(unsigned n, const PhysParams& params, const Grid1D& grid) {
    params.validate();
    return ComplexField1D::sample(grid, [&](double x) { return hermite_wave(n, x, params); });
}

// Unbound Poeschl-Teller scattering state psi_k = A (ik - a tanh(ax)) / (ik + a) e^{ikx}.
inline cxd pt_exact_wave_value(const PhysParams& params, double x) {
    const cxd ik{0.0, params.k};
    return params.amplitude * (ik - params.a * std::tanh(params.a * x)) / (ik + params.a) *
           std::polar(1.0, params.k * x);
}

inline ComplexField1D pt_exact_wave(const PhysParams& params, const Grid1D& grid) {
    params.validate();
    return ComplexField1D::sample(grid, [&](double x) { return pt_exact_wave_value(params, x); });
}

} // namespace pswkb
