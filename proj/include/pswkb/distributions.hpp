#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <variant>
#include <vector>

#include "pswkb/fourier.hpp"
#include "pswkb/grid.hpp"
#include "pswkb/parallel.hpp"
#include "pswkb/params.hpp"
#include "pswkb/quadrature.hpp"
#include "pswkb/wkb.hpp"

namespace pswkb {

// z / sinh(pi z / (2 alpha)), removable singularity at z = 0 (limit 2 alpha / pi).
inline double z_over_sinh(double z, double alpha) {
    const double u = std::numbers::pi * z / (2.0 * alpha);
    if (std::abs(u) < 1e-6) return (2.0 * alpha / std::numbers::pi) * (1.0 - u * u / 6.0);
    return z / std::sinh(u);
}

// --- distribution atoms -------------------------------------------------------------

struct DeltaAtom {
    double at = 0.0;
};
struct CexpAtom { // exp(i freq z)
    double freq = 0.0;
};
struct PvCschAtom { // vp exp(i mod (z-c)) / sinh(pi (z-c) / (2 alpha))
    double center = 0.0;
    double alpha = 1.0; // width parameter: Eq.-style argument pi (z-c) / (2 alpha)
    double mod = 0.0;
};
struct TanhAtom { // exp(i mod z) tanh(alpha (z - center))
    double alpha = 1.0;
    double center = 0.0;
    double mod = 0.0;
};
struct ZCschAtom { // exp(i mod (z-c)) (z-c) / sinh(pi (z-c) / (2 alpha)), smooth
    double center = 0.0;
    double alpha = 1.0;
    double mod = 0.0;
};
struct Sech2Atom { // exp(i mod z) sech^2(alpha (z - center)), smooth
    double alpha = 1.0;
    double center = 0.0;
    double mod = 0.0;
};
struct SmoothAtom { // sampled smooth function
    ComplexField1D field;
};
struct PvGenericAtom { // sampled odd-singular kernel with an excluded point
    ComplexField1D samples;
    double singular_point = 0.0;
};

using AtomShape = std::variant<DeltaAtom, CexpAtom, PvCschAtom, TanhAtom, ZCschAtom, Sech2Atom,
                               SmoothAtom, PvGenericAtom>;

struct DistAtom {
    AtomShape shape;
    cxd weight{1.0, 0.0};
};

struct DistExpr {
    std::vector<DistAtom> atoms;

    DistExpr& append(AtomShape s, cxd w) {
        atoms.push_back({std::move(s), w});
        return *this;
    }

    // merge coincident deltas, drop negligible weights
    void normalise(double tol = 0.0) {
        std::vector<DistAtom> out;
        for (auto& a : atoms) {
            if (std::abs(a.weight) <= tol) continue;
            if (auto* d = std::get_if<DeltaAtom>(&a.shape)) {
                bool merged = false;
                for (auto& b : out)
                    if (auto* e = std::get_if<DeltaAtom>(&b.shape))
                        if (std::abs(e->at - d->at) <= 1e-12 * std::max(1.0, std::abs(d->at))) {
                            b.weight += a.weight;
                            merged = true;
                            break;
                        }
                if (merged) continue;
            }
            out.push_back(std::move(a));
        }
        atoms = std::move(out);
    }
};

// --- pairing against test functions --------------------------------------------------

using TestFn = std::function<cxd(double)>;

namespace detail {

// principal-value pairing by the symmetric difference form; regular at u = 0
inline cxd pair_pv_csch(const PvCschAtom& a, const TestFn& phi, double reach) {
    const double U = std::min(reach, 45.0 * a.alpha);
    auto f = [&](double u) {
        const cxd plus = std::polar(1.0, a.mod * u) * phi(a.center + u);
        const cxd minus = std::polar(1.0, -a.mod * u) * phi(a.center - u);
        return (plus - minus) / std::sinh(std::numbers::pi * u / (2.0 * a.alpha));
    };
    return integrate<cxd>(f, 0.0, U, 1e-13, 1e-11);
}

inline cxd pair_pv_generic(const PvGenericAtom& a, const TestFn& phi) {
    const Grid1D& g = a.samples.grid;
    const double h = g.spacing();
    const double s = a.singular_point;
    const double reach = std::max(g.x_max() - s, s - g.x_min());
    const double u0 = 2.0 * h;
    // odd-model inner part: residue A from the nearest clean samples
    const cxd hp = interp_cubic(a.samples, s + u0);
    const cxd hm = interp_cubic(a.samples, s - u0);
    const cxd A = 0.5 * (hp - hm) * u0; // h(z) ~ A/(z-s)
    auto inner = [&](double u) { return A * (phi(s + u) - phi(s - u)) / u; };
    cxd acc = integrate<cxd>(inner, 1e-9, u0, 1e-13, 1e-11);
    auto outer = [&](double u) {
        cxd v{0.0, 0.0};
        if (s + u <= g.x_max()) v += interp_cubic(a.samples, s + u) * phi(s + u);
        if (s - u >= g.x_min()) v += interp_cubic(a.samples, s - u) * phi(s - u);
        return v;
    };
    acc += integrate<cxd>(outer, u0, reach, 1e-13, 1e-11);
    return acc;
}

} // namespace detail

// <expr, phi> over the window [lo, hi]; deltas act exactly, pv atoms by symmetric
// difference quadrature, smooth atoms by quadrature of their closed or sampled form.
inline cxd pair_with(const DistExpr& e, const TestFn& phi, double lo, double hi) {
    cxd acc{0.0, 0.0};
    for (const auto& atom : e.atoms) {
        const cxd w = atom.weight;
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DeltaAtom>) {
                    if (s.at >= lo && s.at <= hi) acc += w * phi(s.at);
                } else if constexpr (std::is_same_v<T, CexpAtom>) {
                    acc += w * integrate<cxd>(
                                   [&](double z) { return std::polar(1.0, s.freq * z) * phi(z); },
                                   lo, hi, 1e-13, 1e-11);
                } else if constexpr (std::is_same_v<T, PvCschAtom>) {
                    const double reach = std::max(hi - s.center, s.center - lo);
                    acc += w * detail::pair_pv_csch(s, phi, reach);
                } else if constexpr (std::is_same_v<T, TanhAtom>) {
                    acc += w * integrate<cxd>(
                                   [&](double z) {
                                       return std::polar(1.0, s.mod * z) *
                                              std::tanh(s.alpha * (z - s.center)) * phi(z);
                                   },
                                   lo, hi, 1e-13, 1e-11);
                } else if constexpr (std::is_same_v<T, ZCschAtom>) {
                    acc += w * integrate<cxd>(
                                   [&](double z) {
                                       return std::polar(1.0, s.mod * (z - s.center)) *
                                              z_over_sinh(z - s.center, s.alpha) * phi(z);
                                   },
                                   lo, hi, 1e-13, 1e-11);
                } else if constexpr (std::is_same_v<T, Sech2Atom>) {
                    acc += w * integrate<cxd>(
                                   [&](double z) {
                                       const double c = std::cosh(s.alpha * (z - s.center));
                                       return std::polar(1.0, s.mod * z) / (c * c) * phi(z);
                                   },
                                   lo, hi, 1e-13, 1e-11);
                } else if constexpr (std::is_same_v<T, SmoothAtom>) {
                    const Grid1D& g = s.field.grid;
                    cxd sum{0.0, 0.0};
                    for (std::size_t i = 0; i < g.size(); ++i) {
                        const double z = g.node(i);
                        if (z < lo || z > hi) continue;
                        const double tw = (i == 0 || i == g.size() - 1) ? 0.5 : 1.0;
                        sum += tw * s.field.values[i] * phi(z);
                    }
                    acc += w * sum * g.spacing();
                } else if constexpr (std::is_same_v<T, PvGenericAtom>) {
                    acc += w * detail::pair_pv_generic(s, phi);
                }
            },
            atom.shape);
    }
    return acc;
}

// --- Fourier rules --------------------------------------------------------------------

namespace detail {

inline AtomShape reflect_shape(const AtomShape& s, cxd& w) {
    return std::visit(
        [&](const auto& a) -> AtomShape {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, DeltaAtom>) return DeltaAtom{-a.at};
            else if constexpr (std::is_same_v<T, CexpAtom>) return CexpAtom{-a.freq};
            else if constexpr (std::is_same_v<T, PvCschAtom>) {
                w = -w;
                return PvCschAtom{-a.center, a.alpha, -a.mod};
            } else if constexpr (std::is_same_v<T, TanhAtom>) {
                w = -w;
                return TanhAtom{a.alpha, -a.center, -a.mod};
            } else if constexpr (std::is_same_v<T, ZCschAtom>)
                return ZCschAtom{-a.center, a.alpha, -a.mod};
            else if constexpr (std::is_same_v<T, Sech2Atom>)
                return Sech2Atom{a.alpha, -a.center, -a.mod};
            else if constexpr (std::is_same_v<T, SmoothAtom>) {
                const Grid1D& g = a.field.grid;
                Grid1D rg(-g.x_max(), -g.x_min(), g.size());
                std::vector<cxd> v(g.size());
                for (std::size_t i = 0; i < g.size(); ++i) v[i] = a.field.values[g.size() - 1 - i];
                return SmoothAtom{ComplexField1D(rg, std::move(v))};
            } else
                throw unsupported_error("dist_fourier: no reflection rule for this atom");
        },
        s);
}

} // namespace detail

enum class FourierDirection { forward, inverse };

// Atom-wise transform under Ftilde[f](t) = (1/sqrt(2 pi)) \int f(z) exp(-izt) dz;
// the pv 1/sinh and tanh kinds exchange, delta and complex exponentials exchange,
// (z-c)/sinh and sech^2 exchange, sampled atoms go through the grid transform.
inline DistExpr dist_fourier(const DistExpr& e, FourierDirection dir) {
    DistExpr out;
    const double rt_pi_2 = std::sqrt(std::numbers::pi / 2.0);
    for (const auto& atom : e.atoms) {
        cxd w = atom.weight;
        AtomShape transformed = std::visit(
            [&](const auto& a) -> AtomShape {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, DeltaAtom>) {
                    w *= 1.0 / std::sqrt(2.0 * std::numbers::pi);
                    return CexpAtom{-a.at};
                } else if constexpr (std::is_same_v<T, CexpAtom>) {
                    w *= std::sqrt(2.0 * std::numbers::pi);
                    return DeltaAtom{a.freq};
                } else if constexpr (std::is_same_v<T, PvCschAtom>) {
                    // Ftilde -> -i alpha sqrt(2/pi) e^{-i c t} tanh(alpha (t - mod))
                    w *= cxd{0.0, -1.0} * a.alpha * std::sqrt(2.0 / std::numbers::pi);
                    return TanhAtom{a.alpha, a.mod, -a.center};
                } else if constexpr (std::is_same_v<T, TanhAtom>) {
                    // Ftilde -> (-i/alpha) sqrt(pi/2) e^{-i c (t - mod)} pv csch(pi (t-mod)/(2 alpha))
                    w *= cxd{0.0, -1.0} / a.alpha * rt_pi_2;
                    return PvCschAtom{a.mod, a.alpha, -a.center};
                } else if constexpr (std::is_same_v<T, ZCschAtom>) {
                    // Ftilde[(z) csch] = alpha^2 sqrt(2/pi) sech^2(alpha t) shifted/modulated
                    w *= a.alpha * a.alpha * std::sqrt(2.0 / std::numbers::pi);
                    return Sech2Atom{a.alpha, a.mod, -a.center};
                } else if constexpr (std::is_same_v<T, Sech2Atom>) {
                    w *= 1.0 / (a.alpha * a.alpha) * std::sqrt(std::numbers::pi / 2.0);
                    // Ftilde[sech^2(alpha t)](u) = (1/(alpha^2 sqrt(2/pi)))^{-1}... inverse pair
                    return ZCschAtom{a.mod, a.alpha, -a.center};
                } else if constexpr (std::is_same_v<T, SmoothAtom>) {
                    return SmoothAtom{inverse_fourier_grid(a.field, false)};
                } else
                    throw unsupported_error("dist_fourier: atom without a transform rule");
            },
            atom.shape);
        if (dir == FourierDirection::inverse) transformed = detail::reflect_shape(transformed, w);
        out.append(std::move(transformed), w);
    }
    out.normalise();
    return out;
}

// --- convolution ----------------------------------------------------------------------

// residual channel integrand: I(z; mu) = \int sin(mu u) csch(pi u / 2 alpha)
//                                         sin(mu (z-u)) csch(pi (z-u) / 2 alpha) du
inline double pv_csch_cross_residual(double z, double mu, double alpha) {
    const double tail = 21.0 * alpha; // |csch| < 1e-14 beyond pi u/(2 alpha) ~ 33
    const double lo = std::min(0.0, z) - tail, hi = std::max(0.0, z) + tail;
    auto f = [&](double u) {
        const double s1 = (std::abs(u) < 1e-9)
                              ? mu * 2.0 * alpha / std::numbers::pi
                              : std::sin(mu * u) / std::sinh(std::numbers::pi * u / (2.0 * alpha));
        const double t = z - u;
        const double s2 = (std::abs(t) < 1e-9)
                              ? mu * 2.0 * alpha / std::numbers::pi
                              : std::sin(mu * t) / std::sinh(std::numbers::pi * t / (2.0 * alpha));
        return s1 * s2;
    };
    return integrate<double>(f, lo, hi, 1e-12, 1e-10);
}

struct ConvolveGridPolicy {
    std::size_t n = 2001;
    double halfwidth_alphas = 30.0; // residual sampling window in units of alpha
};

namespace detail {

inline AtomShape shift_shape(const AtomShape& s, double c, cxd& w) {
    return std::visit(
        [&](const auto& a) -> AtomShape {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, DeltaAtom>) return DeltaAtom{a.at + c};
            else if constexpr (std::is_same_v<T, CexpAtom>) {
                w *= std::polar(1.0, -a.freq * c);
                return a;
            } else if constexpr (std::is_same_v<T, PvCschAtom>)
                return PvCschAtom{a.center + c, a.alpha, a.mod};
            else if constexpr (std::is_same_v<T, ZCschAtom>)
                return ZCschAtom{a.center + c, a.alpha, a.mod};
            else if constexpr (std::is_same_v<T, Sech2Atom>) {
                // absolute modulation: f(z-c) picks up exp(-i mod c)
                w *= std::polar(1.0, -a.mod * c);
                return Sech2Atom{a.alpha, a.center + c, a.mod};
            } else if constexpr (std::is_same_v<T, TanhAtom>) {
                w *= std::polar(1.0, -a.mod * c);
                return TanhAtom{a.alpha, a.center + c, a.mod};
            } else if constexpr (std::is_same_v<T, SmoothAtom>) {
                const Grid1D& g = a.field.grid;
                return SmoothAtom{ComplexField1D(Grid1D(g.x_min() + c, g.x_max() + c, g.size()),
                                                 a.field.values)};
            } else
                throw unsupported_error("dist_convolve: atom has no shift rule");
        },
        s);
}

} // namespace detail

// Convolution of two atom expressions. Channels: delta * anything (shift), equal-width
// pv csch pairs (closed delta + (z)/sinh parts plus a numerically integrated residual for
// opposite modulations), and sampled * sampled on a shared grid.
inline DistExpr dist_convolve(const DistExpr& e1, const DistExpr& e2,
                              ConvolveGridPolicy policy = {}) {
    DistExpr out;
    for (const auto& a1 : e1.atoms)
        for (const auto& a2 : e2.atoms) {
            const cxd w12 = a1.weight * a2.weight;
            if (const auto* d = std::get_if<DeltaAtom>(&a1.shape)) {
                cxd w = w12;
                out.append(detail::shift_shape(a2.shape, d->at, w), w);
                continue;
            }
            if (const auto* d = std::get_if<DeltaAtom>(&a2.shape)) {
                cxd w = w12;
                out.append(detail::shift_shape(a1.shape, d->at, w), w);
                continue;
            }
            const auto* p1 = std::get_if<PvCschAtom>(&a1.shape);
            const auto* p2 = std::get_if<PvCschAtom>(&a2.shape);
            if (p1 && p2) {
                if (std::abs(p1->alpha - p2->alpha) > 1e-12 * std::abs(p1->alpha))
                    throw unsupported_error("dist_convolve: pv widths differ");
                const double alpha = p1->alpha;
                const double c = p1->center + p2->center;
                if (std::abs(p1->mod - p2->mod) <= 1e-12) {
                    // same modulation: -4 alpha^2 delta + 2 (z) e^{i mod z} csch, exact
                    out.append(DeltaAtom{c}, w12 * (-4.0 * alpha * alpha));
                    out.append(ZCschAtom{c, alpha, p1->mod}, w12 * 2.0);
                } else if (std::abs(p1->mod + p2->mod) <= 1e-12) {
                    const double mu = std::abs(p1->mod);
                    out.append(DeltaAtom{c}, w12 * (-4.0 * alpha * alpha));
                    out.append(ZCschAtom{c, alpha, mu}, w12);
                    out.append(ZCschAtom{c, alpha, -mu}, w12);
                    // residual sin.sin/sinh.sinh integral, sampled
                    const double hw = policy.halfwidth_alphas * alpha;
                    Grid1D rg(c - hw, c + hw, policy.n);
                    std::vector<cxd> rv(policy.n);
                    for (std::size_t i = 0; i < policy.n; ++i)
                        rv[i] = pv_csch_cross_residual(rg.node(i) - c, mu, alpha);
                    out.append(SmoothAtom{ComplexField1D(rg, std::move(rv))}, w12 * 2.0);
                } else {
                    throw unsupported_error("dist_convolve: pv modulations are not paired");
                }
                continue;
            }
            const auto* s1 = std::get_if<SmoothAtom>(&a1.shape);
            const auto* s2 = std::get_if<SmoothAtom>(&a2.shape);
            if (s1 && s2) {
                if (!s1->field.grid.same_as(s2->field.grid))
                    throw unsupported_error("dist_convolve: sampled atoms on different grids");
                const Grid1D& g = s1->field.grid;
                const double h = g.spacing();
                // output on a grid spanning the sum of supports
                Grid1D og(2.0 * g.x_min(), 2.0 * g.x_max(), 2 * g.size() - 1);
                std::vector<cxd> v(og.size(), cxd{});
                for (std::size_t m = 0; m < og.size(); ++m) {
                    cxd acc{0.0, 0.0};
                    for (std::size_t l = 0; l < g.size(); ++l) {
                        const auto j = std::ptrdiff_t(m) - std::ptrdiff_t(l);
                        if (j < 0 || j >= std::ptrdiff_t(g.size())) continue;
                        acc += s1->field.values[l] * s2->field.values[std::size_t(j)];
                    }
                    v[m] = acc * h;
                }
                out.append(SmoothAtom{ComplexField1D(og, std::move(v))}, w12);
                continue;
            }
            throw unsupported_error("dist_convolve: unsupported atom pair");
        }
    out.normalise();
    return out;
}

// --- Wigner function of a state given by atoms ------------------------------------------

namespace detail {

// multiply an expression by exp(i f z)
inline DistExpr modulate(const DistExpr& e, double f) {
    DistExpr out;
    for (const auto& atom : e.atoms) {
        cxd w = atom.weight;
        AtomShape s = std::visit(
            [&](const auto& a) -> AtomShape {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, DeltaAtom>) {
                    w *= std::polar(1.0, f * a.at);
                    return a;
                } else if constexpr (std::is_same_v<T, CexpAtom>) return CexpAtom{a.freq + f};
                else if constexpr (std::is_same_v<T, PvCschAtom>) {
                    w *= std::polar(1.0, f * a.center);
                    return PvCschAtom{a.center, a.alpha, a.mod + f};
                } else if constexpr (std::is_same_v<T, ZCschAtom>) {
                    w *= std::polar(1.0, f * a.center);
                    return ZCschAtom{a.center, a.alpha, a.mod + f};
                } else if constexpr (std::is_same_v<T, TanhAtom>)
                    return TanhAtom{a.alpha, a.center, a.mod + f};
                else if constexpr (std::is_same_v<T, Sech2Atom>)
                    return Sech2Atom{a.alpha, a.center, a.mod + f};
                else if constexpr (std::is_same_v<T, SmoothAtom>) {
                    ComplexField1D fd = a.field;
                    for (std::size_t i = 0; i < fd.grid.size(); ++i)
                        fd.values[i] *= std::polar(1.0, f * fd.grid.node(i));
                    return SmoothAtom{std::move(fd)};
                } else
                    throw unsupported_error("modulate: unsupported atom");
            },
            atom.shape);
        out.append(std::move(s), w);
    }
    return out;
}

inline DistExpr conjugate(const DistExpr& e) {
    DistExpr out;
    for (const auto& atom : e.atoms) {
        cxd w = std::conj(atom.weight);
        AtomShape s = std::visit(
            [&](const auto& a) -> AtomShape {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, DeltaAtom>) return a;
                else if constexpr (std::is_same_v<T, CexpAtom>) return CexpAtom{-a.freq};
                else if constexpr (std::is_same_v<T, PvCschAtom>)
                    return PvCschAtom{a.center, a.alpha, -a.mod};
                else if constexpr (std::is_same_v<T, ZCschAtom>)
                    return ZCschAtom{a.center, a.alpha, -a.mod};
                else if constexpr (std::is_same_v<T, TanhAtom>)
                    return TanhAtom{a.alpha, a.center, -a.mod};
                else if constexpr (std::is_same_v<T, Sech2Atom>)
                    return Sech2Atom{a.alpha, a.center, -a.mod};
                else if constexpr (std::is_same_v<T, SmoothAtom>) {
                    ComplexField1D fd = a.field;
                    for (auto& v : fd.values) v = std::conj(v);
                    return SmoothAtom{std::move(fd)};
                } else
                    throw unsupported_error("conjugate: unsupported atom");
            },
            atom.shape);
        out.append(std::move(s), w);
    }
    return out;
}

// substitute u -> -2p/hbar, producing an expression in the momentum variable
inline DistExpr substitute_to_momentum(const DistExpr& e, double hbar) {
    DistExpr out;
    for (const auto& atom : e.atoms) {
        cxd w = atom.weight;
        AtomShape s = std::visit(
            [&](const auto& a) -> AtomShape {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, DeltaAtom>) {
                    w *= 0.5 * hbar; // delta(-2p/hbar - c) = (hbar/2) delta(p + c hbar/2)
                    return DeltaAtom{-0.5 * hbar * a.at};
                } else if constexpr (std::is_same_v<T, CexpAtom>)
                    return CexpAtom{-2.0 * a.freq / hbar};
                else if constexpr (std::is_same_v<T, PvCschAtom>) {
                    w *= -1.0; // csch is odd under the sign flip of its argument
                    return PvCschAtom{-0.5 * hbar * a.center, 0.5 * hbar * a.alpha,
                                      -2.0 * a.mod / hbar};
                } else if constexpr (std::is_same_v<T, ZCschAtom>) {
                    w *= 2.0 / hbar; // (u - c) = -(2/hbar)(p - c_p) and the even csch factor
                    return ZCschAtom{-0.5 * hbar * a.center, 0.5 * hbar * a.alpha,
                                     -2.0 * a.mod / hbar};
                } else if constexpr (std::is_same_v<T, Sech2Atom>)
                    return Sech2Atom{2.0 * a.alpha / hbar, -0.5 * hbar * a.center,
                                     -2.0 * a.mod / hbar};
                else if constexpr (std::is_same_v<T, SmoothAtom>) {
                    const Grid1D& g = a.field.grid;
                    Grid1D pg(-0.5 * hbar * g.x_max(), -0.5 * hbar * g.x_min(), g.size());
                    std::vector<cxd> v(g.size());
                    for (std::size_t i = 0; i < g.size(); ++i) v[i] = a.field.values[g.size() - 1 - i];
                    return SmoothAtom{ComplexField1D(pg, std::move(v))};
                } else
                    throw unsupported_error("substitute_to_momentum: unsupported atom");
            },
            atom.shape);
        out.append(std::move(s), w);
    }
    out.normalise();
    return out;
}

} // namespace detail

// Wigner function of a (possibly nonnormalisable) state in atom form:
//   W(x, .) = (1/pi hbar) ( conj(e^{itx} Ftilde[psi]) *_t e^{itx} Ftilde[psi] )(-2p/hbar),
// returned as one momentum-space expression per requested x.
inline std::vector<DistExpr> dist_wigner(const DistExpr& psi, const PhysParams& params,
                                         const std::vector<double>& x_samples,
                                         ConvolveGridPolicy policy = {}) {
    params.validate();
    const DistExpr ft = dist_fourier(psi, FourierDirection::forward);
    std::vector<DistExpr> out;
    out.reserve(x_samples.size());
    for (double x : x_samples) {
        DistExpr G = detail::modulate(ft, x);
        DistExpr F = detail::conjugate(G);
        DistExpr conv = dist_convolve(F, G, policy);
        DistExpr W = detail::substitute_to_momentum(conv, params.hbar);
        for (auto& a : W.atoms) a.weight *= 1.0 / (std::numbers::pi * params.hbar);
        W.normalise();
        out.push_back(std::move(W));
    }
    return out;
}

// Momentum-representation wave function of the Poeschl-Teller scattering state:
// a delta at p = k hbar plus a principal-value 1/sinh kernel centred there.
inline DistExpr pt_momentum_wave(const PhysParams& params) {
    params.validate();
    const double k = params.k, a = params.a, hbar = params.hbar;
    const cxd ik{0.0, k};
    const cxd front = params.amplitude * std::sqrt(2.0 * std::numbers::pi * hbar) * ik / (ik + a);
    DistExpr e;
    e.append(DeltaAtom{k * hbar}, front);
    // equals the printed -vp 1/sinh(pi (p - k hbar)/(2 a hbar)) with the argument negated;
    // the sign is fixed by the position-space round trip
    e.append(PvCschAtom{k * hbar, a * hbar, 0.0}, front / (2.0 * k * hbar));
    return e;
}

// Position-space atoms of the Poeschl-Teller state itself (for the Wigner pipeline).
inline DistExpr pt_position_atoms(const PhysParams& params) {
    params.validate();
    const cxd ik{0.0, params.k};
    const cxd denom = ik + params.a;
    DistExpr e;
    e.append(CexpAtom{params.k}, params.amplitude * ik / denom);
    e.append(TanhAtom{params.a, 0.0, params.k}, -params.amplitude * params.a / denom);
    return e;
}

// Exact Poeschl-Teller Wigner function: a delta ridge at p = -hbar k with coefficient
// |A|^2 (k^2 - a^2)/(k^2 + a^2), a modulated principal-value 1/sinh term, a smooth
// (k hbar + p)/sinh term, and a residual integral term (adaptive quadrature).
struct PtWignerField {
    double delta_coefficient = 0.0;
    double delta_location = 0.0; // p = -hbar k
    RealField2D pv_term;         // samples of the pv prefactor including the kernel
    RealField2D smooth_term;
    RealField2D residual_term;
};

inline double pt_wigner_pv_prefactor(const PhysParams& params, double x, double p) {
    const double k = params.k, a = params.a, hbar = params.hbar;
    const double c2 = std::norm(params.amplitude);
    const double z = k * hbar + p;
    return -(2.0 * c2 * k / (hbar * (a * a + k * k))) * std::cos(2.0 * x * z / hbar);
}

inline PtWignerField pt_exact_wigner(const PhysParams& params, const Grid1D& x_grid,
                                     const Grid1D& p_grid) {
    params.validate();
    const double k = params.k, a = params.a, hbar = params.hbar;
    const double c2 = std::norm(params.amplitude);
    const double den = a * a + k * k;

    PtWignerField out{c2 * (k * k - a * a) / den, -hbar * k, RealField2D(x_grid, p_grid),
                      RealField2D(x_grid, p_grid), RealField2D(x_grid, p_grid)};

    parallel_for(x_grid.size(), [&](std::size_t i) {
        const double x = x_grid.node(i);
        for (std::size_t j = 0; j < p_grid.size(); ++j) {
            const double p = p_grid.node(j);
            const double z = k * hbar + p;                     // momentum offset from the ridge
            const double arg = std::numbers::pi * z / (a * hbar); // pv kernel argument
            // pv term samples: prefactor times the kernel itself (singular at z = 0)
            const double kernel = (std::abs(arg) < 1e-12) ? 0.0 : 1.0 / std::sinh(arg);
            out.pv_term.at(i, j) = pt_wigner_pv_prefactor(params, x, p) * kernel;
            out.smooth_term.at(i, j) = (2.0 * c2 / (hbar * hbar * den)) *
                                       std::cos(2.0 * x * z / hbar) *
                                       z_over_sinh(z, 0.5 * a * hbar);
            const double zeta = 2.0 * k + 2.0 * p / hbar; // wave-number units
            out.residual_term.at(i, j) =
                (c2 / (hbar * den)) * pv_csch_cross_residual(zeta, x, a);
        }
    });
    return out;
}

// <W(x, .), phi> for the exact Poeschl-Teller Wigner function, pairing all four terms.
inline double pt_wigner_pair(const PhysParams& params, double x, const TestFn& phi, double p_lo,
                             double p_hi) {
    const double k = params.k, a = params.a, hbar = params.hbar;
    const double c2 = std::norm(params.amplitude);
    const double den = a * a + k * k;
    double acc = 0.0;
    // delta term
    const double p_delta = -hbar * k;
    if (p_delta >= p_lo && p_delta <= p_hi)
        acc += c2 * (k * k - a * a) / den * phi(p_delta).real();
    // pv term: modulated kernel centred at p = -hbar k with width parameter a hbar / 2
    PvCschAtom pv{p_delta, 0.5 * a * hbar, 0.0};
    auto phi_mod = [&](double p) {
        return pt_wigner_pv_prefactor(params, x, p) * phi(p);
    };
    const double reach = std::max(p_hi - p_delta, p_delta - p_lo);
    acc += detail::pair_pv_csch(pv, phi_mod, reach).real();
    // smooth term
    acc += integrate<double>(
        [&](double p) {
            const double z = k * hbar + p;
            return (2.0 * c2 / (hbar * hbar * den)) * std::cos(2.0 * x * z / hbar) *
                   z_over_sinh(z, 0.5 * a * hbar) * phi(p).real();
        },
        p_lo, p_hi, 1e-12, 1e-10);
    // residual term
    acc += integrate<double>(
        [&](double p) {
            const double zeta = 2.0 * k + 2.0 * p / hbar;
            return (c2 / (hbar * den)) * pv_csch_cross_residual(zeta, x, a) * phi(p).real();
        },
        p_lo, p_hi, 1e-10, 1e-8);
    return acc;
}

// First-order WKB phase of the Poeschl-Teller state in closed form, base point x = 0:
//   sigma_0' = p(x) = hbar sqrt(k^2 + 2 a^2 sech^2(ax)),  sigma_1 = -(1/2) ln p.
inline cxd pt_wkb_sigma0(const PhysParams& params, double x) {
    const double k = params.k, a = params.a, hbar = params.hbar;
    const double s = std::sinh(a * x), c = std::cosh(a * x);
    const double root = std::sqrt(k * k * c * c + 2.0 * a * a);
    return hbar * (std::sqrt(2.0) * std::atan(std::sqrt(2.0) * a * s / root) +
                   (k / a) * std::asinh(k * s / std::sqrt(k * k + 2.0 * a * a)));
}

inline cxd pt_wkb_sigma1(const PhysParams& params, double x) {
    const double k = params.k, a = params.a, hbar = params.hbar;
    const double sech = 1.0 / std::cosh(a * x);
    const double p = hbar * std::sqrt(k * k + 2.0 * a * a * sech * sech);
    return -0.5 * std::log(p);
}

inline PhaseSeries pt_wkb_phase(const PhysParams& params, const Grid1D& grid) {
    params.validate();
    PhaseSeries s{grid.x_min(), grid.x_max(), Branch::I, 1, 0.0, params.hbar,
                  params.scattering_energy(), grid, {}};
    s.terms.assign(2, std::vector<cxd>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        s.terms[0][i] = pt_wkb_sigma0(params, x);
        s.terms[1][i] = pt_wkb_sigma1(params, x);
    }
    return s;
}

} // namespace pswkb

