#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "pswkb/errors.hpp"

namespace pswkb {

using cxd = std::complex<double>;

// Uniform 1-D grid over [x_min, x_max] with n nodes (both endpoints included).
class Grid1D {
  public:
    Grid1D(double x_min, double x_max, std::size_t n)
        : x_min_(x_min), x_max_(x_max), n_(n) {
        if (n < 2) throw domain_error("Grid1D: need at least 2 nodes");
        if (!(x_min < x_max)) throw domain_error("Grid1D: x_min must be < x_max");
        if (!std::isfinite(x_min) || !std::isfinite(x_max))
            throw domain_error("Grid1D: bounds must be finite");
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return n_; }
    double spacing() const { return (x_max_ - x_min_) / double(n_ - 1); }
    double node(std::size_t i) const { return x_min_ + double(i) * spacing(); }
    double length() const { return x_max_ - x_min_; }

    // Nearest node index, clamped to the grid.
    std::size_t nearest(double x) const {
        double t = (x - x_min_) / spacing();
        if (t <= 0.0) return 0;
        auto i = std::size_t(t + 0.5);
        return i >= n_ ? n_ - 1 : i;
    }

    bool contains(double x) const { return x >= x_min_ && x <= x_max_; }

    // Grid symmetric about zero with a node at exactly zero.
    bool symmetric_about_zero() const {
        if (std::abs(x_min_ + x_max_) > 1e-12 * (std::abs(x_min_) + std::abs(x_max_)))
            return false;
        return n_ % 2 == 1;
    }

    bool same_as(const Grid1D& o, double tol = 1e-12) const {
        return n_ == o.n_ && std::abs(x_min_ - o.x_min_) <= tol &&
               std::abs(x_max_ - o.x_max_) <= tol;
    }

  private:
    double x_min_, x_max_;
    std::size_t n_;
};

// Complex samples on a Grid1D, one value per node.
struct ComplexField1D {
    Grid1D grid;
    std::vector<cxd> values;

    ComplexField1D(Grid1D g, std::vector<cxd> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw domain_error("ComplexField1D: value count != node count");
        for (const cxd& z : values)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw domain_error("ComplexField1D: non-finite sample");
    }

    explicit ComplexField1D(Grid1D g) : grid(g), values(g.size(), cxd{0.0, 0.0}) {}

    template <class F>
    static ComplexField1D sample(Grid1D g, F&& f) {
        std::vector<cxd> v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = cxd(f(g.node(i)));
        return ComplexField1D(g, std::move(v));
    }

    double squared_norm() const {
        double s = 0.0;
        for (const cxd& z : values) s += std::norm(z);
        return s * grid.spacing();
    }
};

// Real samples on an (x, p) product grid, row-major: value(i, j) = values[i * n_p + j].
struct RealField2D {
    Grid1D x_grid;
    Grid1D p_grid;
    std::vector<double> values;

    RealField2D(Grid1D xg, Grid1D pg, std::vector<double> v)
        : x_grid(xg), p_grid(pg), values(std::move(v)) {
        if (values.size() != x_grid.size() * p_grid.size())
            throw domain_error("RealField2D: value count != node-count product");
        for (double d : values)
            if (!std::isfinite(d)) throw domain_error("RealField2D: non-finite sample");
    }

    RealField2D(Grid1D xg, Grid1D pg)
        : x_grid(xg), p_grid(pg), values(xg.size() * pg.size(), 0.0) {}

    double& at(std::size_t i, std::size_t j) { return values[i * p_grid.size() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * p_grid.size() + j]; }

    template <class F>
    static RealField2D sample(Grid1D xg, Grid1D pg, F&& f) {
        RealField2D out(xg, pg);
        for (std::size_t i = 0; i < xg.size(); ++i)
            for (std::size_t j = 0; j < pg.size(); ++j)
                out.at(i, j) = f(xg.node(i), pg.node(j));
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (double d : values) m = std::max(m, std::abs(d));
        return m;
    }

    // Discrete phase-space integral  sum W dx dp.
    double integral() const {
        double s = 0.0;
        for (double d : values) s += d;
        return s * x_grid.spacing() * p_grid.spacing();
    }
};

inline void require_same_grids(const RealField2D& a, const RealField2D& b) {
    if (!a.x_grid.same_as(b.x_grid) || !a.p_grid.same_as(b.p_grid))
        throw incompatible_grids_error("fields do not share grids");
}

} // namespace pswkb
