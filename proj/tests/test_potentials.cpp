#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pswkb/pswkb.hpp"

using namespace pswkb;
using Catch::Approx;

namespace {
PhysParams unit_params() {
    return PhysParams{};
}
} // namespace

TEST_CASE("eval_potential closed forms") {
    PotentialModel ho = PotentialModel::harmonic(unit_params());
    CHECK(eval_potential(ho, 2.0) == Approx(2.0));

    PotentialModel pt = PotentialModel::poeschl_teller(unit_params());
    CHECK(eval_potential(pt, 0.0) == Approx(-1.0));
    CHECK(std::abs(eval_potential(pt, 20.0)) < 1e-12);
    CHECK(std::abs(eval_potential(pt, -25.0)) < 1e-12);
    // even potential
    for (double x : {0.3, 1.7, 4.4}) CHECK(eval_potential(pt, x) == eval_potential(pt, -x));

    PotentialModel lin = PotentialModel::linear(unit_params(), 2.0, 3.0, 1.0);
    CHECK(eval_potential(lin, 1.0) == Approx(2.0));
    CHECK(eval_potential(lin, 2.0) == Approx(-1.0));

    Grid1D g(-2.0, 2.0, 41);
    PotentialModel us = PotentialModel::sampled(
        unit_params(), ComplexField1D::sample(g, [](double x) { return x * x; }));
    CHECK(eval_potential(us, 0.55) == Approx(0.55 * 0.55).margin(3e-3)); // linear interpolation
    CHECK_THROWS_AS(eval_potential(us, 3.0), out_of_window_error);
}

TEST_CASE("turning points of the oscillator, scattering and linear models") {
    PotentialModel ho = PotentialModel::harmonic(unit_params());
    const double E8 = 8.5;
    auto tps = turning_points(ho, E8);
    REQUIRE(tps.points.size() == 2);
    CHECK(tps.points[0].x == Approx(-std::sqrt(17.0)).margin(1e-10));
    CHECK(tps.points[1].x == Approx(std::sqrt(17.0)).margin(1e-10));
    CHECK(tps.points[0].slope_sign == -1);
    CHECK(tps.points[1].slope_sign == 1);
    CHECK(tps.points[0].x == Approx(-tps.points[1].x).margin(1e-12));
    for (const auto& tp : tps.points)
        CHECK(std::abs(eval_potential(ho, tp.x) - E8) <= 1e-10 * std::max(1.0, std::abs(E8)));

    PotentialModel pt = PotentialModel::poeschl_teller(unit_params());
    CHECK(turning_points(pt, 0.5).points.empty());
    CHECK(turning_points(pt, 3.0).points.empty());

    PotentialModel lin = PotentialModel::linear(unit_params(), 2.0, 3.0, 1.5);
    auto ltp = turning_points(lin, 2.0);
    REQUIRE(ltp.points.size() == 1);
    CHECK(ltp.points[0].x == Approx(1.5).margin(1e-10));
}

TEST_CASE("validity radius value and scaling laws") {
    PhysParams p = unit_params();
    PotentialModel ho = PotentialModel::harmonic(p);
    const double x0 = std::sqrt(17.0);
    CHECK(validity_radius(ho, x0) == Approx(0.31181369386735579).epsilon(1e-12));

    PhysParams p2 = p;
    p2.hbar = 2.0;
    PotentialModel ho2 = PotentialModel::harmonic(p2);
    CHECK(validity_radius(ho2, x0) / validity_radius(ho, x0) ==
          Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-12));

    const double F = 3.0;
    PotentialModel lin = PotentialModel::linear(p, 0.0, F, 0.0);
    CHECK(validity_radius(lin, 5.0) == Approx(0.5 * std::cbrt(1.0 / F)).epsilon(1e-12));

    CHECK_THROWS_AS(validity_radius(ho, 0.0), degenerate_turning_point_error);
}

TEST_CASE("exact oscillator Wigner eigenfunction") {
    PhysParams p = unit_params();
    CHECK(ho_exact_wigner_value(0, p, 0.0, 0.0) == Approx(1.0 / std::numbers::pi).epsilon(1e-14));
    // n = 0 closed Gaussian form
    for (double x : {-1.0, 0.4})
        for (double pp : {-0.6, 1.2}) {
            const double want = std::exp(-(pp * pp + x * x)) / std::numbers::pi;
            CHECK(ho_exact_wigner_value(0, p, x, pp) == Approx(want).epsilon(1e-13));
        }
    // normalisation of the n = 8 field by dense summation
    Grid1D g(-8.0, 8.0, 512);
    RealField2D W8 = ho_exact_wigner(8, p, g, g);
    CHECK(W8.integral() == Approx(1.0).margin(1e-6));
}

TEST_CASE("oscillator Wigner sign changes along the p = 0 ray") {
    PhysParams p = unit_params();
    for (unsigned n : {1u, 4u, 8u, 10u}) {
        const double x0 = std::sqrt(2.0 * n + 1.0);
        std::size_t changes = 0;
        double prev = ho_exact_wigner_value(n, p, 0.0, 0.0);
        for (std::size_t i = 1; i < 4096; ++i) {
            const double x = x0 * double(i) / 4095.0;
            const double cur = ho_exact_wigner_value(n, p, x, 0.0);
            if (prev * cur < 0.0) ++changes;
            prev = cur;
        }
        CHECK(changes == n);
    }
}

TEST_CASE("exact oscillator waves are normalised and recurrence-stable") {
    PhysParams p = unit_params();
    Grid1D g(-12.0, 12.0, 2048);
    for (unsigned n : {0u, 8u}) {
        ComplexField1D psi = ho_exact_wave(n, p, g);
        CHECK(psi.squared_norm() == Approx(1.0).margin(1e-8));
    }
    // ground state closed form
    ComplexField1D psi0 = ho_exact_wave(0, p, g);
    for (std::size_t i = 0; i < g.size(); i += 97) {
        const double x = g.node(i);
        const double want = std::pow(1.0 / std::numbers::pi, 0.25) * std::exp(-0.5 * x * x);
        CHECK(std::abs(psi0.values[i] - cxd{want, 0.0}) < 1e-12);
    }
}

TEST_CASE("scattering state modulus and density dip") {
    PhysParams p = unit_params();
    p.k = 6.0;
    p.a = 1.0;
    Grid1D g(-30.0, 30.0, 4096);
    ComplexField1D psi = pt_exact_wave(p, g);
    // transmission without reflection: |psi| -> |A| at both ends
    CHECK(std::abs(psi.values.front()) == Approx(1.0).margin(1e-8));
    CHECK(std::abs(psi.values.back()) == Approx(1.0).margin(1e-8));
    // value at the origin
    const cxd at0 = pt_exact_wave_value(p, 0.0);
    CHECK(std::abs(at0) == Approx(6.0 / std::sqrt(37.0)).epsilon(1e-12));
    // the density dip: minimum of |psi|^2 equals k^2/(k^2+a^2) = 36/37 and sits at x = 0
    double min_d = 1e30, argmin = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::norm(psi.values[i]) < min_d) {
            min_d = std::norm(psi.values[i]);
            argmin = g.node(i);
        }
    CHECK(std::abs(argmin) < 2.0 * g.spacing());
    CHECK(min_d == Approx(36.0 / 37.0).margin(1e-5)); // grid-limited location of the dip
    CHECK(std::norm(pt_exact_wave_value(p, 0.0)) == Approx(36.0 / 37.0).epsilon(1e-12));
}

TEST_CASE("potential jets match analytic derivatives") {
    PhysParams p = unit_params();
    PotentialModel pt = PotentialModel::poeschl_teller(p);
    const double x = 0.7;
    Jet v = potential_jet(pt, x, 4);
    CHECK(v.c[0].real() == Approx(eval_potential(pt, x)).epsilon(1e-14));
    CHECK(v.c[1].real() == Approx(potential_derivative(pt, x)).epsilon(1e-12));
    // second derivative by central differences
    const double h = 1e-5;
    const double d2 =
        (eval_potential(pt, x + h) - 2.0 * eval_potential(pt, x) + eval_potential(pt, x - h)) /
        (h * h);
    CHECK(2.0 * v.c[2].real() == Approx(d2).margin(1e-5));
}
