#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>

#include "pswkb/errors.hpp"

namespace pswkb {

namespace detail {

// 15-point Gauss-Kronrod pair (7-point Gauss embedded), abscissae on [0,1] half-interval.
struct GK15 {
    static constexpr std::array<double, 8> xk = {
        0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
        0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
    static constexpr std::array<double, 4> wg = {
        0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
};

// The Gauss-7 nodes are the odd-index Kronrod abscissae plus the centre.
template <class F, class R>
void gk15(F&& f, double a, double b, R& result, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    R resk{}, resg{};
    for (std::size_t i = 0; i < 8; ++i) {
        const double dx = h * GK15::xk[i];
        const R fv = (i == 7) ? R(f(c)) : R(f(c - dx) + f(c + dx));
        resk += GK15::wk[i] * fv;
        if (i == 1 || i == 3 || i == 5) resg += GK15::wg[(i - 1) / 2] * fv;
        if (i == 7) resg += GK15::wg[3] * fv;
    }
    result = resk * h;
    err = std::abs(std::abs(resk - resg)) * std::abs(h);
}

} // namespace detail

// Adaptive quadrature (recursive bisection on a 15-point Gauss-Kronrod rule).
// Works for double or complex<double> integrands.
template <class R = double, class F>
R integrate(F&& f, double a, double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
            int max_depth = 48) {
    struct Impl {
        F& f;
        double abs_tol, rel_tol;
        R run(double a, double b, int depth) {
            R whole;
            double err;
            detail::gk15(f, a, b, whole, err);
            if (depth <= 0) return whole;
            if (err <= abs_tol + rel_tol * std::abs(whole)) return whole;
            const double m = 0.5 * (a + b);
            return run(a, m, depth - 1) + run(m, b, depth - 1);
        }
    };
    Impl impl{f, abs_tol, rel_tol};
    return impl.run(a, b, max_depth);
}

// Tanh-sinh (double-exponential) quadrature on [a,b]; robust to integrable endpoint
// singularities such as the sqrt edges of an action integral.
template <class F>
double integrate_tanh_sinh(F&& f, double a, double b, double tol = 1e-13) {
    const double c = 0.5 * (a + b), h0 = 0.5 * (b - a);
    auto g = [&](double t) {
        const double u = std::numbers::pi / 2.0 * std::sinh(t);
        const double x = c + h0 * std::tanh(u);
        const double w = h0 * (std::numbers::pi / 2.0) * std::cosh(t) / std::pow(std::cosh(u), 2);
        if (x <= a || x >= b || !std::isfinite(w) || w == 0.0) return 0.0;
        return f(x) * w;
    };
    double h = 1.0;
    double sum = g(0.0);
    const double t_max = 4.5;
    for (double t = h; t <= t_max; t += h) sum += g(t) + g(-t);
    double prev = sum * h;
    for (int level = 1; level <= 10; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= t_max; t += 2.0 * h) add += g(t) + g(-t);
        sum += add;
        const double cur = sum * h;
        if (level >= 3 && std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

// Composite Gauss-Legendre (5-point panels); fixed-cost quadrature for smooth rows.
template <class R = double, class F>
R integrate_panels(F&& f, double a, double b, std::size_t n_panels) {
    static constexpr std::array<double, 5> x5 = {-0.906179845938664, -0.538469310105683, 0.0,
                                                 0.538469310105683, 0.906179845938664};
    static constexpr std::array<double, 5> w5 = {0.236926885056189, 0.478628670499366,
                                                 0.568888888888889, 0.478628670499366,
                                                 0.236926885056189};
    R total{};
    const double h = (b - a) / double(n_panels);
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double pa = a + double(k) * h;
        const double mid = pa + 0.5 * h;
        for (std::size_t i = 0; i < 5; ++i) total += R(f(mid + 0.5 * h * x5[i])) * (w5[i] * 0.5 * h);
    }
    return total;
}

} // namespace pswkb
