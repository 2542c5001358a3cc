#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pswkb/fourier.hpp"
#include "pswkb/grid.hpp"
#include "pswkb/interp.hpp"
#include "pswkb/params.hpp"
#include "pswkb/potentials.hpp"

namespace pswkb {

// Star-product orientation: with the kernel used here,  x * p - p * x = -i hbar  and the
// Wigner ridge of exp(ikx) sits at p = -hbar k; the two conventions are locked together.
inline constexpr double kStarOrientation = -1.0;

// Bivariate polynomial symbol  sum_{i,j} c[i][j] x^i p^j  (closed under the star product;
// the differential expansion terminates exactly against any second factor).
struct PolySymbol {
    std::size_t nx = 1, np = 1; // coefficient matrix extents (degree + 1)
    std::vector<cxd> c = {cxd{0.0, 0.0}};

    static PolySymbol zero() { return {}; }
    static PolySymbol constant(cxd v) { return {1, 1, {v}}; }
    static PolySymbol x() { return {2, 1, {cxd{0, 0}, cxd{1, 0}}}; }
    static PolySymbol p() { return {1, 2, {cxd{0, 0}, cxd{1, 0}}}; }

    cxd& at(std::size_t i, std::size_t j) { return c[i * np + j]; }
    cxd at(std::size_t i, std::size_t j) const { return c[i * np + j]; }

    cxd eval(double xv, double pv) const {
        cxd acc{0.0, 0.0};
        double xi = 1.0;
        for (std::size_t i = 0; i < nx; ++i) {
            double pj = 1.0;
            cxd row{0.0, 0.0};
            for (std::size_t j = 0; j < np; ++j) {
                row += at(i, j) * pj;
                pj *= pv;
            }
            acc += row * xi;
            xi *= xv;
        }
        return acc;
    }

    PolySymbol dx() const {
        if (nx <= 1) return zero();
        PolySymbol r{nx - 1, np, std::vector<cxd>((nx - 1) * np)};
        for (std::size_t i = 1; i < nx; ++i)
            for (std::size_t j = 0; j < np; ++j) r.at(i - 1, j) = double(i) * at(i, j);
        return r;
    }
    PolySymbol dp() const {
        if (np <= 1) return zero();
        PolySymbol r{nx, np - 1, std::vector<cxd>(nx * (np - 1))};
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 1; j < np; ++j) r.at(i, j - 1) = double(j) * at(i, j);
        return r;
    }
    bool is_zero() const {
        for (const cxd& v : c)
            if (std::abs(v) != 0.0) return false;
        return true;
    }

    friend PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
        PolySymbol r{a.nx + b.nx - 1, a.np + b.np - 1,
                     std::vector<cxd>((a.nx + b.nx - 1) * (a.np + b.np - 1))};
        for (std::size_t i = 0; i < a.nx; ++i)
            for (std::size_t j = 0; j < a.np; ++j)
                for (std::size_t k = 0; k < b.nx; ++k)
                    for (std::size_t l = 0; l < b.np; ++l)
                        r.at(i + k, j + l) += a.at(i, j) * b.at(k, l);
        return r;
    }
    friend PolySymbol operator*(cxd s, PolySymbol a) {
        for (cxd& v : a.c) v *= s;
        return a;
    }
    friend PolySymbol operator+(const PolySymbol& a, const PolySymbol& b) {
        PolySymbol r{std::max(a.nx, b.nx), std::max(a.np, b.np), {}};
        r.c.assign(r.nx * r.np, cxd{0.0, 0.0});
        for (std::size_t i = 0; i < a.nx; ++i)
            for (std::size_t j = 0; j < a.np; ++j) r.at(i, j) += a.at(i, j);
        for (std::size_t i = 0; i < b.nx; ++i)
            for (std::size_t j = 0; j < b.np; ++j) r.at(i, j) += b.at(i, j);
        return r;
    }
    friend PolySymbol operator-(const PolySymbol& a, const PolySymbol& b) {
        return a + (cxd{-1.0, 0.0} * b);
    }
};

inline PolySymbol ho_hamiltonian_symbol(const PhysParams& params) {
    PolySymbol h{3, 3, std::vector<cxd>(9)};
    h.at(0, 2) = 1.0 / (2.0 * params.mass);
    h.at(2, 0) = 0.5 * params.mass * params.omega * params.omega;
    return h;
}

// Complex samples on an (x,p) grid, with cached mixed spectral derivatives.
struct SampledSymbol {
    Grid1D x_grid;
    Grid1D p_grid;
    std::vector<cxd> values; // row-major [i * np + j]

    SampledSymbol(Grid1D xg, Grid1D pg) : x_grid(xg), p_grid(pg), values(xg.size() * pg.size()) {}
    explicit SampledSymbol(const RealField2D& f) : x_grid(f.x_grid), p_grid(f.p_grid) {
        values.assign(f.values.begin(), f.values.end());
    }

    cxd& at(std::size_t i, std::size_t j) { return values[i * p_grid.size() + j]; }
    cxd at(std::size_t i, std::size_t j) const { return values[i * p_grid.size() + j]; }

    SampledSymbol derivative_x(double taper = 0.1) const {
        SampledSymbol r(x_grid, p_grid);
        const std::size_t nx = x_grid.size(), np = p_grid.size();
        std::vector<cxd> col(nx);
        for (std::size_t j = 0; j < np; ++j) {
            for (std::size_t i = 0; i < nx; ++i) col[i] = at(i, j);
            auto d = spectral_derivative(x_grid, col, 1, taper);
            for (std::size_t i = 0; i < nx; ++i) r.at(i, j) = d[i];
        }
        return r;
    }
    SampledSymbol derivative_p(double taper = 0.1) const {
        SampledSymbol r(x_grid, p_grid);
        const std::size_t nx = x_grid.size(), np = p_grid.size();
        std::vector<cxd> row(np);
        for (std::size_t i = 0; i < nx; ++i) {
            for (std::size_t j = 0; j < np; ++j) row[j] = at(i, j);
            auto d = spectral_derivative(p_grid, row, 1, taper);
            for (std::size_t j = 0; j < np; ++j) r.at(i, j) = d[j];
        }
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cxd& v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

namespace detail {

inline double binom(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

// mixed spectral derivative table d_x^a d_p^b B for a <= ax_max, b <= bp_max
inline std::vector<std::vector<SampledSymbol>> derivative_table(const SampledSymbol& B,
                                                                unsigned ax_max, unsigned bp_max) {
    std::vector<std::vector<SampledSymbol>> t;
    t.reserve(ax_max + 1);
    for (unsigned a = 0; a <= ax_max; ++a) {
        std::vector<SampledSymbol> row;
        row.reserve(bp_max + 1);
        row.push_back(a == 0 ? B : t[a - 1][0].derivative_x());
        for (unsigned b = 1; b <= bp_max; ++b) row.push_back(row[b - 1].derivative_p());
        t.push_back(std::move(row));
    }
    return t;
}

} // namespace detail

// Exact star product of polynomial symbols (terminating bidirectional expansion).
inline PolySymbol moyal_star(const PolySymbol& A, const PolySymbol& B, const PhysParams& params) {
    const cxd ih2 = kStarOrientation * cxd{0.0, 0.5 * params.hbar};
    PolySymbol out = PolySymbol::zero();
    cxd pref{1.0, 0.0};
    const unsigned m_max = unsigned(A.nx - 1 + A.np - 1);
    for (unsigned m = 0; m <= m_max; ++m) {
        if (m > 0) pref *= ih2 / double(m);
        PolySymbol term = PolySymbol::zero();
        bool any = false;
        for (unsigned j = 0; j <= m; ++j) {
            PolySymbol da = A;
            for (unsigned q = 0; q < m - j; ++q) da = da.dx();
            for (unsigned q = 0; q < j; ++q) da = da.dp();
            if (da.is_zero()) continue;
            PolySymbol db = B;
            for (unsigned q = 0; q < m - j; ++q) db = db.dp();
            for (unsigned q = 0; q < j; ++q) db = db.dx();
            if (db.is_zero()) continue;
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            term = term + (cxd{sgn * detail::binom(m, j), 0.0} * (da * db));
            any = true;
        }
        if (any) out = out + (pref * term);
    }
    return out;
}

// Star product of a polynomial symbol with a sampled symbol; the expansion terminates at
// the polynomial's total degree. Sampled-side derivatives are spectral with a cosine taper.
inline SampledSymbol moyal_star(const PolySymbol& A, const SampledSymbol& B,
                                const PhysParams& params) {
    const unsigned degx = unsigned(A.nx - 1), degp = unsigned(A.np - 1);
    auto table = detail::derivative_table(B, degp, degx); // d_x^{<=degp} d_p^{<=degx}
    SampledSymbol out(B.x_grid, B.p_grid);
    const cxd ih2 = kStarOrientation * cxd{0.0, 0.5 * params.hbar};
    cxd pref{1.0, 0.0};
    for (unsigned m = 0; m <= degx + degp; ++m) {
        if (m > 0) pref *= ih2 / double(m);
        for (unsigned j = 0; j <= m; ++j) {
            if (j > degp || m - j > degx) continue;
            PolySymbol da = A;
            for (unsigned q = 0; q < m - j; ++q) da = da.dx();
            for (unsigned q = 0; q < j; ++q) da = da.dp();
            if (da.is_zero()) continue;
            const SampledSymbol& db = table[j][m - j]; // d_x^j d_p^{m-j} B
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            const cxd w = pref * sgn * detail::binom(m, j);
            for (std::size_t i = 0; i < out.x_grid.size(); ++i) {
                const double xv = out.x_grid.node(i);
                for (std::size_t jj = 0; jj < out.p_grid.size(); ++jj)
                    out.at(i, jj) += w * da.eval(xv, out.p_grid.node(jj)) * db.at(i, jj);
            }
        }
    }
    return out;
}

inline SampledSymbol moyal_star(const SampledSymbol& A, const PolySymbol& B,
                                const PhysParams& params) {
    const unsigned degx = unsigned(B.nx - 1), degp = unsigned(B.np - 1);
    auto table = detail::derivative_table(A, degp, degx);
    SampledSymbol out(A.x_grid, A.p_grid);
    const cxd ih2 = kStarOrientation * cxd{0.0, 0.5 * params.hbar};
    cxd pref{1.0, 0.0};
    for (unsigned m = 0; m <= degx + degp; ++m) {
        if (m > 0) pref *= ih2 / double(m);
        for (unsigned j = 0; j <= m; ++j) {
            // term: (d_x^{m-j} d_p^j A) (d_p^{m-j} d_x^j B), needs m-j <= degp_B? no:
            // B-side factors: d_p^{m-j} d_x^j B nonzero requires m-j <= degp, j <= degx
            if (m - j > degp || j > degx) continue;
            PolySymbol db = B;
            for (unsigned q = 0; q < m - j; ++q) db = db.dp();
            for (unsigned q = 0; q < j; ++q) db = db.dx();
            if (db.is_zero()) continue;
            const SampledSymbol& da = table[m - j][j]; // d_x^{m-j} d_p^j A
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            const cxd w = pref * sgn * detail::binom(m, j);
            for (std::size_t i = 0; i < out.x_grid.size(); ++i) {
                const double xv = out.x_grid.node(i);
                for (std::size_t jj = 0; jj < out.p_grid.size(); ++jj)
                    out.at(i, jj) += w * da.at(i, jj) * db.eval(xv, out.p_grid.node(jj));
            }
        }
    }
    return out;
}

// Doubly-sampled star by the truncated differential expansion; converges quickly for
// smooth decaying symbols, truncation order chosen by the caller.
inline SampledSymbol moyal_star(const SampledSymbol& A, const SampledSymbol& B,
                                const PhysParams& params, unsigned max_order = 8) {
    auto ta = detail::derivative_table(A, max_order, max_order);
    auto tb = detail::derivative_table(B, max_order, max_order);
    SampledSymbol out(A.x_grid, A.p_grid);
    const cxd ih2 = kStarOrientation * cxd{0.0, 0.5 * params.hbar};
    cxd pref{1.0, 0.0};
    for (unsigned m = 0; m <= max_order; ++m) {
        if (m > 0) pref *= ih2 / double(m);
        for (unsigned j = 0; j <= m; ++j) {
            const SampledSymbol& da = ta[m - j][j];
            const SampledSymbol& db = tb[j][m - j];
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            const cxd w = pref * sgn * detail::binom(m, j);
            for (std::size_t k = 0; k < out.values.size(); ++k)
                out.values[k] += w * da.values[k] * db.values[k];
        }
    }
    return out;
}

// Reference evaluation of the star product through its integral kernel, reduced to a
// separable double integral over (x', x'') with partial momentum transforms; used as the
// validation route for sampled pairs (window truncation error documented by the caller).
inline cxd moyal_star_kernel_point(const SampledSymbol& A, const SampledSymbol& B,
                                   const PhysParams& params, double x, double p) {
    const double hbar = params.hbar;
    const Grid1D& xg = A.x_grid;
    const Grid1D& pg = A.p_grid;
    const double dp = pg.spacing(), dx = xg.spacing();

    auto partial_transform = [&](const SampledSymbol& S, double tau, std::size_t i, int sign) {
        // \int S(x_i, p') exp(sign * 2i tau p' / hbar) dp'
        cxd acc{0.0, 0.0};
        for (std::size_t j = 0; j < pg.size(); ++j) {
            const double w = (j == 0 || j == pg.size() - 1) ? 0.5 : 1.0;
            acc += w * S.at(i, j) * std::polar(1.0, double(sign) * 2.0 * tau * pg.node(j) / hbar);
        }
        return acc * dp;
    };

    // kernel exponent: (2i/hbar) [ (x2 - x)(p' - p) - (x1 - x)(p'' - p) ],
    // A carries (x1, p'), B carries (x2, p'')
    cxd acc{0.0, 0.0};
    for (std::size_t i1 = 0; i1 < xg.size(); ++i1) {
        const double x1 = xg.node(i1);
        const double w1 = (i1 == 0 || i1 == xg.size() - 1) ? 0.5 : 1.0;
        for (std::size_t i2 = 0; i2 < xg.size(); ++i2) {
            const double x2 = xg.node(i2);
            const double w2 = (i2 == 0 || i2 == xg.size() - 1) ? 0.5 : 1.0;
            const cxd fa = partial_transform(A, x2 - x, i1, +1);
            const cxd fb = partial_transform(B, x1 - x, i2, -1);
            acc += w1 * w2 * fa * fb * std::polar(1.0, 2.0 * p * (x1 - x2) / hbar);
        }
    }
    const double pref = 1.0 / (std::numbers::pi * hbar * std::numbers::pi * hbar);
    return pref * acc * dx * dx;
}

// Moyal bracket {A, B}_M = (A*B - B*A) / (i hbar).
template <class SA, class SB>
auto moyal_bracket(const SA& A, const SB& B, const PhysParams& params) {
    auto ab = moyal_star(A, B, params);
    auto ba = moyal_star(B, A, params);
    const cxd inv{0.0, -1.0 / params.hbar}; // 1 / (i hbar)
    if constexpr (std::is_same_v<decltype(ab), PolySymbol>) {
        return inv * (ab - ba);
    } else {
        decltype(ab) out = ab;
        for (std::size_t k = 0; k < out.values.size(); ++k)
            out.values[k] = inv * (ab.values[k] - ba.values[k]);
        return out;
    }
}

struct StarResidualReport {
    double r_eigen = 0.0;
    double r_bracket = 0.0;
};

// Residuals of the stationary star equations over a core window:
//   r_eigen  = max|H*W - E W| / max|W|
//   r_bracket = max|{H, W}_M| / (max|W| * characteristic_frequency)
inline StarResidualReport star_eigen_residual(const PolySymbol& H, const RealField2D& W, double E,
                                              const PhysParams& params, double core_x, double core_p,
                                              double characteristic_frequency) {
    if (H.np > 3) throw precondition_error("star_eigen_residual: H must have p-degree <= 2");
    SampledSymbol Ws(W);
    SampledSymbol HW = moyal_star(H, Ws, params);
    SampledSymbol WH = moyal_star(Ws, H, params);

    double wmax = 0.0, emax = 0.0, bmax = 0.0;
    const cxd inv{0.0, -1.0 / params.hbar};
    for (std::size_t i = 0; i < W.x_grid.size(); ++i) {
        if (std::abs(W.x_grid.node(i)) > core_x) continue;
        for (std::size_t j = 0; j < W.p_grid.size(); ++j) {
            if (std::abs(W.p_grid.node(j)) > core_p) continue;
            wmax = std::max(wmax, std::abs(W.at(i, j)));
            emax = std::max(emax, std::abs(HW.at(i, j) - E * W.at(i, j)));
            bmax = std::max(bmax, std::abs(inv * (HW.at(i, j) - WH.at(i, j))));
        }
    }
    if (wmax == 0.0) throw domain_error("star_eigen_residual: W vanishes on the core window");
    return {emax / wmax, bmax / (wmax * characteristic_frequency)};
}

// Closedness of the star product:  \iint A*B dx dp  vs  \iint A.B dx dp (caller compares).
inline std::pair<double, double> closedness_check(const RealField2D& A, const RealField2D& B,
                                                  const PhysParams& params,
                                                  unsigned max_order = 8) {
    require_same_grids(A, B);
    SampledSymbol sa(A), sb(B);
    SampledSymbol ab = moyal_star(sa, sb, params, max_order);
    double star_int = 0.0, plain_int = 0.0;
    for (std::size_t k = 0; k < ab.values.size(); ++k) {
        star_int += ab.values[k].real();
        plain_int += A.values[k] * B.values[k];
    }
    const double meas = A.x_grid.spacing() * A.p_grid.spacing();
    return {star_int * meas, plain_int * meas};
}

} // namespace pswkb
