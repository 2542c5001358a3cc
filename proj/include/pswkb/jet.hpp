#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pswkb/errors.hpp"

namespace pswkb {

// Truncated Taylor series (jet) at a point: sum_m c[m] (x - x0)^m. Jet arithmetic gives
// exact derivatives of the WKB phase recurrence without finite-difference noise.
struct Jet {
    std::vector<std::complex<double>> c;

    explicit Jet(std::size_t degree) : c(degree + 1, {0.0, 0.0}) {}
    Jet(std::vector<std::complex<double>> coeffs) : c(std::move(coeffs)) {}

    std::size_t degree() const { return c.size() - 1; }
    std::complex<double> value() const { return c[0]; }

    Jet& operator+=(const Jet& o) {
        for (std::size_t i = 0; i < c.size() && i < o.c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t i = 0; i < c.size() && i < o.c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(std::min(a.degree(), b.degree()));
        for (std::size_t m = 0; m < r.c.size(); ++m)
            for (std::size_t j = 0; j <= m; ++j) r.c[m] += a.c[j] * b.c[m - j];
        return r;
    }
    friend Jet operator*(std::complex<double> s, Jet a) {
        for (auto& x : a.c) x *= s;
        return a;
    }

    // d/dx: one degree is consumed.
    Jet derivative() const {
        if (degree() == 0) throw domain_error("Jet::derivative: degree exhausted");
        Jet r(degree() - 1);
        for (std::size_t m = 0; m + 1 < c.size(); ++m) r.c[m] = double(m + 1) * c[m + 1];
        return r;
    }

    // Principal square root; requires a nonzero leading coefficient.
    Jet sqrt() const {
        Jet r(degree());
        const std::complex<double> g0 = std::sqrt(c[0]);
        if (std::abs(g0) == 0.0) throw domain_error("Jet::sqrt: vanishing leading term");
        r.c[0] = g0;
        for (std::size_t m = 1; m < c.size(); ++m) {
            std::complex<double> acc = c[m];
            for (std::size_t j = 1; j < m; ++j) acc -= r.c[j] * r.c[m - j];
            r.c[m] = acc / (2.0 * g0);
        }
        return r;
    }

    Jet reciprocal() const {
        if (std::abs(c[0]) == 0.0) throw domain_error("Jet::reciprocal: vanishing leading term");
        Jet r(degree());
        r.c[0] = 1.0 / c[0];
        for (std::size_t m = 1; m < c.size(); ++m) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t j = 1; j <= m; ++j) acc += c[j] * r.c[m - j];
            r.c[m] = -acc * r.c[0];
        }
        return r;
    }

    static Jet constant(std::complex<double> v, std::size_t degree) {
        Jet r(degree);
        r.c[0] = v;
        return r;
    }
};

} // namespace pswkb
