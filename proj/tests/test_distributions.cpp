#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pswkb/pswkb.hpp"

using namespace pswkb;
using Catch::Approx;

namespace {

PhysParams pt_params(double k = 6.0, double a = 1.0) {
    PhysParams p;
    p.k = k;
    p.a = a;
    return p;
}

TestFn gaussian_test(double center, double width) {
    return [=](double z) { return cxd{std::exp(-(z - center) * (z - center) / (2.0 * width * width)), 0.0}; };
}

} // namespace

TEST_CASE("atom pairings against quadrature ground truth") {
    // delta acts exactly
    DistExpr d;
    d.append(DeltaAtom{0.7}, cxd{2.0, 1.0});
    auto phi = gaussian_test(0.0, 1.0);
    CHECK(std::abs(pair_with(d, phi, -10.0, 10.0) - cxd{2.0, 1.0} * phi(0.7)) < 1e-14);

    // pv csch against the closed Fourier-pair value: <vp csch((z-c)/s'), phi>
    // via independent dense symmetric-difference quadrature
    PvCschAtom pv{0.5, 1.3, 0.0}; // kernel 1/sinh(pi (z-c) / (2 alpha))
    DistExpr e;
    e.append(pv, cxd{1.0, 0.0});
    auto phi2 = gaussian_test(1.1, 0.8);
    double ref = 0.0;
    const double du = 1e-4;
    for (double u = 0.5 * du; u < 60.0; u += du) {
        ref += ((phi2(pv.center + u) - phi2(pv.center - u)).real() /
                std::sinh(std::numbers::pi * u / (2.0 * pv.alpha))) *
               du;
    }
    CHECK(pair_with(e, phi2, -60.0, 60.0).real() == Approx(ref).margin(1e-7));
}

TEST_CASE("Fourier rules: forward then inverse is the identity on every atom kind") {
    auto phi = gaussian_test(0.4, 1.2);
    std::vector<DistExpr> fixtures;
    {
        DistExpr e;
        e.append(DeltaAtom{1.3}, cxd{1.0, -0.5});
        fixtures.push_back(e);
    }
    {
        DistExpr e;
        e.append(CexpAtom{2.0}, cxd{0.7, 0.1});
        fixtures.push_back(e);
    }
    {
        DistExpr e;
        e.append(PvCschAtom{0.3, 1.1, 0.8}, cxd{1.0, 0.0});
        fixtures.push_back(e);
    }
    {
        DistExpr e;
        e.append(TanhAtom{1.4, -0.2, 0.5}, cxd{0.0, 1.0});
        fixtures.push_back(e);
    }
    {
        DistExpr e;
        e.append(ZCschAtom{-0.6, 0.9, 0.4}, cxd{1.0, 1.0});
        fixtures.push_back(e);
    }
    {
        DistExpr e;
        e.append(Sech2Atom{1.2, 0.5, -0.3}, cxd{2.0, 0.0});
        fixtures.push_back(e);
    }
    for (const auto& e : fixtures) {
        DistExpr back = dist_fourier(dist_fourier(e, FourierDirection::forward),
                                     FourierDirection::inverse);
        const cxd before = pair_with(e, phi, -40.0, 40.0);
        const cxd after = pair_with(back, phi, -40.0, 40.0);
        CHECK(std::abs(before - after) < 1e-10 * std::max(1.0, std::abs(before)));
    }
    // smooth sampled atom round trip on-grid
    Grid1D g(-16.0, 16.0, 512);
    DistExpr sm;
    sm.append(SmoothAtom{ComplexField1D::sample(
                  g, [](double z) { return std::exp(-0.5 * z * z) * std::cos(z); })},
              cxd{1.0, 0.0});
    DistExpr back = dist_fourier(dist_fourier(sm, FourierDirection::forward),
                                 FourierDirection::inverse);
    const cxd b0 = pair_with(sm, phi, -16.0, 16.0);
    const cxd b1 = pair_with(back, phi, -16.0, 16.0);
    CHECK(std::abs(b0 - b1) < 1e-9);
}

TEST_CASE("Fourier rules: translated delta and the pv/tanh exchange constants") {
    // delta(z - z0) -> (1/sqrt(2 pi)) exp(-i z0 t)
    DistExpr d;
    d.append(DeltaAtom{0.9}, cxd{1.0, 0.0});
    DistExpr f = dist_fourier(d, FourierDirection::forward);
    REQUIRE(f.atoms.size() == 1);
    const auto* ce = std::get_if<CexpAtom>(&f.atoms[0].shape);
    REQUIRE(ce != nullptr);
    CHECK(ce->freq == Approx(-0.9));
    CHECK(std::abs(f.atoms[0].weight - cxd{1.0 / std::sqrt(2.0 * std::numbers::pi), 0.0}) < 1e-15);

    // Ftilde[tanh(a t)](u) = -(i/a) sqrt(pi/2) vp csch(pi u / (2a)); verify by pairing
    // against a regularised quadrature of the defining integral
    const double a = 1.3;
    DistExpr t;
    t.append(TanhAtom{a, 0.0, 0.0}, cxd{1.0, 0.0});
    DistExpr ft = dist_fourier(t, FourierDirection::forward);
    REQUIRE(ft.atoms.size() == 1);
    const auto* pvr = std::get_if<PvCschAtom>(&ft.atoms[0].shape);
    REQUIRE(pvr != nullptr);
    CHECK(pvr->alpha == Approx(a));
    CHECK(std::abs(ft.atoms[0].weight - cxd{0.0, -1.0} / a * std::sqrt(std::numbers::pi / 2.0)) <
          1e-14);

    // derivative identity route: Ftilde[(z) csch] is the sech^2 atom of the tanh derivative
    DistExpr zc;
    zc.append(ZCschAtom{0.0, a, 0.0}, cxd{1.0, 0.0});
    DistExpr fz = dist_fourier(zc, FourierDirection::forward);
    REQUIRE(fz.atoms.size() == 1);
    const auto* s2 = std::get_if<Sech2Atom>(&fz.atoms[0].shape);
    REQUIRE(s2 != nullptr);
    CHECK(s2->alpha == Approx(a));
    CHECK(std::abs(fz.atoms[0].weight -
                   cxd{a * a * std::sqrt(2.0 / std::numbers::pi), 0.0}) < 1e-14);
}

TEST_CASE("scattering state atoms transform to the delta-plus-pv structure") {
    PhysParams p = pt_params();
    DistExpr pos = pt_position_atoms(p);
    // sanity: the atoms evaluate to the exact wave
    Grid1D g(-5.0, 5.0, 201);
    for (std::size_t i = 0; i < g.size(); i += 20) {
        const double x = g.node(i);
        const cxd ik{0.0, p.k};
        const cxd val = (p.amplitude * ik / (ik + p.a)) * std::polar(1.0, p.k * x) +
                        (-p.amplitude * p.a / (ik + p.a)) * std::tanh(p.a * x) *
                            std::polar(1.0, p.k * x);
        CHECK(std::abs(val - pt_exact_wave_value(p, x)) < 1e-14);
    }

    DistExpr ft = dist_fourier(pos, FourierDirection::forward);
    REQUIRE(ft.atoms.size() == 2);
    const DeltaAtom* da = nullptr;
    const PvCschAtom* pv = nullptr;
    cxd w_delta{}, w_pv{};
    for (const auto& atom : ft.atoms) {
        if (const auto* x = std::get_if<DeltaAtom>(&atom.shape)) {
            da = x;
            w_delta = atom.weight;
        }
        if (const auto* x = std::get_if<PvCschAtom>(&atom.shape)) {
            pv = x;
            w_pv = atom.weight;
        }
    }
    REQUIRE(da != nullptr);
    REQUIRE(pv != nullptr);
    CHECK(da->at == Approx(p.k));
    CHECK(pv->center == Approx(p.k));
    CHECK(pv->alpha == Approx(p.a));
    // weights: (A i/(a + ik)) sqrt(pi/2) {2k delta + vp csch(pi (t-k)/(2a))}
    const cxd front = p.amplitude * cxd{0.0, 1.0} / (cxd{p.a, p.k}) *
                      std::sqrt(std::numbers::pi / 2.0);
    CHECK(std::abs(w_delta - front * 2.0 * p.k) < 1e-13);
    CHECK(std::abs(w_pv - front) < 1e-14);
}

TEST_CASE("momentum wave atoms and the round trip back to position space") {
    PhysParams p = pt_params(); // hbar = 1 so the momentum and wave-number forms coincide
    DistExpr pw = pt_momentum_wave(p);
    REQUIRE(pw.atoms.size() == 2);
    const cxd front =
        p.amplitude * std::sqrt(2.0 * std::numbers::pi) * cxd{0.0, p.k} / cxd{p.a, p.k};
    for (const auto& atom : pw.atoms) {
        if (const auto* d = std::get_if<DeltaAtom>(&atom.shape)) {
            CHECK(d->at == Approx(p.k * p.hbar));
            CHECK(std::abs(atom.weight - front) < 1e-13);
        }
        if (const auto* v = std::get_if<PvCschAtom>(&atom.shape)) {
            CHECK(v->center == Approx(p.k * p.hbar));
            CHECK(v->alpha == Approx(p.a * p.hbar));
            // magnitude matches the printed prefactor 1/(2 k hbar); the kernel argument is
            // oriented so that the position-space round trip reproduces the exact wave
            CHECK(std::abs(atom.weight - front / (2.0 * p.k * p.hbar)) < 1e-14);
        }
    }

    // round trip: psi(x) = sqrt(hbar) * inverse transform at t = x (hbar = 1)
    DistExpr pos = dist_fourier(pw, FourierDirection::inverse);
    for (double x : {-4.0, -1.2, 0.0, 0.8, 3.0, 5.0}) {
        // evaluate the atom expression pointwise: cexp and tanh atoms only
        cxd val{0.0, 0.0};
        for (const auto& atom : pos.atoms) {
            if (const auto* ce = std::get_if<CexpAtom>(&atom.shape))
                val += atom.weight * std::polar(1.0, ce->freq * x);
            else if (const auto* th = std::get_if<TanhAtom>(&atom.shape))
                val += atom.weight * std::polar(1.0, th->mod * x) *
                       std::tanh(th->alpha * (x - th->center));
            else
                FAIL("unexpected atom kind in the position-space expression");
        }
        CHECK(std::abs(val - pt_exact_wave_value(p, x)) <=
              1e-6 * std::abs(pt_exact_wave_value(p, x)));
    }
}

TEST_CASE("momentum wave pairing consistency against dense quadrature") {
    PhysParams p = pt_params();
    DistExpr pw = pt_momentum_wave(p); // here equal to Ftilde[psi] since hbar = 1
    for (auto [c, w] : {std::pair{4.0, 1.0}, std::pair{7.5, 0.7}, std::pair{5.5, 1.5}}) {
        auto phi = gaussian_test(c, w);
        // oracle: <Ftilde[psi], phi> = \int psi(x) Ftilde[phi](x) dx with the Gaussian
        // transform known in closed form
        auto ft_phi = [&](double x) {
            return cxd{w * std::exp(-0.5 * w * w * x * x), 0.0} *
                   std::polar(1.0, -c * x); // sqrt(2pi)-normalised Gaussian pair
        };
        const cxd oracle = integrate<cxd>(
            [&](double x) { return pt_exact_wave_value(p, x) * ft_phi(x); }, -60.0, 60.0, 1e-10,
            1e-10);
        const cxd atoms = pair_with(pw, phi, c - 40.0, c + 40.0);
        CHECK(std::abs(atoms - oracle) < 1e-6 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("convolution channels: delta shift and the pv pair identities") {
    // delta(z - s) * smooth f = f(z - s)
    Grid1D g(-8.0, 8.0, 257);
    DistExpr a;
    a.append(DeltaAtom{1.5}, cxd{1.0, 0.0});
    DistExpr b;
    b.append(SmoothAtom{ComplexField1D::sample(g, [](double z) { return std::exp(-z * z); })},
             cxd{1.0, 0.0});
    DistExpr c = dist_convolve(a, b);
    REQUIRE(c.atoms.size() == 1);
    const auto* sm = std::get_if<SmoothAtom>(&c.atoms[0].shape);
    REQUIRE(sm != nullptr);
    CHECK(sm->field.grid.x_min() == Approx(-8.0 + 1.5));

    // same-modulation pv pair: -4 a^2 delta(z) + 2 z e^{i mu z} csch(pi z / 2a)
    const double alpha = 1.0;
    DistExpr p1;
    p1.append(PvCschAtom{0.0, alpha, 0.7}, cxd{1.0, 0.0});
    DistExpr conv = dist_convolve(p1, p1);
    bool saw_delta = false, saw_zcsch = false;
    for (const auto& atom : conv.atoms) {
        if (const auto* d = std::get_if<DeltaAtom>(&atom.shape)) {
            saw_delta = true;
            CHECK(d->at == Approx(0.0).margin(1e-14));
            CHECK(std::abs(atom.weight - cxd{-4.0 * alpha * alpha, 0.0}) < 1e-13);
        }
        if (const auto* z = std::get_if<ZCschAtom>(&atom.shape)) {
            saw_zcsch = true;
            CHECK(z->mod == Approx(0.7));
            CHECK(std::abs(atom.weight - cxd{2.0, 0.0}) < 1e-14);
        }
    }
    CHECK(saw_delta);
    CHECK(saw_zcsch);

    CHECK_THROWS_AS(dist_convolve(p1, [&] {
                        DistExpr q;
                        q.append(PvCschAtom{0.0, 2.0 * alpha, 0.7}, cxd{1.0, 0.0});
                        return q;
                    }()),
                    unsupported_error);
}

TEST_CASE("opposite-modulation pv convolution reproduces the residual integral") {
    const double alpha = 1.0, mu = 1.3;
    DistExpr p1;
    p1.append(PvCschAtom{0.0, alpha, mu}, cxd{1.0, 0.0});
    DistExpr p2;
    p2.append(PvCschAtom{0.0, alpha, -mu}, cxd{1.0, 0.0});
    DistExpr conv = dist_convolve(p1, p2);

    // locate the sampled residual atom and compare with adaptive quadrature + the closed
    // form of the sin.sin/sinh.sinh integral at sample points
    const SmoothAtom* res = nullptr;
    cxd w_res{};
    for (const auto& atom : conv.atoms)
        if (const auto* s = std::get_if<SmoothAtom>(&atom.shape)) {
            res = s;
            w_res = atom.weight;
        }
    REQUIRE(res != nullptr);
    CHECK(std::abs(w_res - cxd{2.0, 0.0}) < 1e-14);
    for (double z : {0.3, 1.1, -2.0, 4.0, 0.0}) {
        const std::size_t i = res->field.grid.nearest(z);
        const double zz = res->field.grid.node(i);
        const double direct = pv_csch_cross_residual(zz, mu, alpha);
        CHECK(res->field.values[i].real() == Approx(direct).margin(1e-10));
        CHECK(direct == Approx(oracles::residual_closed_form(zz, mu, alpha)).margin(1e-6));
    }
}

TEST_CASE("dist_wigner: plane wave puts the ridge at p = -hbar k") {
    PhysParams p;
    p.k = 2.0;
    DistExpr plane;
    plane.append(CexpAtom{p.k}, cxd{1.0, 0.0});
    auto rows = dist_wigner(plane, p, {0.0, 0.7});
    for (const auto& W : rows) {
        REQUIRE(W.atoms.size() == 1);
        const auto* d = std::get_if<DeltaAtom>(&W.atoms[0].shape);
        REQUIRE(d != nullptr);
        CHECK(d->at == Approx(-p.hbar * p.k).margin(1e-14));
        CHECK(std::abs(W.atoms[0].weight - cxd{1.0, 0.0}) < 1e-12);
    }
}

TEST_CASE("dist_wigner: smooth Gaussian atom agrees with the grid transform") {
    PhysParams unit;
    Grid1D g(-16.0, 16.0, 1024);
    ComplexField1D psi =
        ComplexField1D::sample(g, [](double x) { return std::pow(1.0 / std::numbers::pi, 0.25) *
                                                         std::exp(-0.5 * x * x); });
    DistExpr e;
    e.append(SmoothAtom{psi}, cxd{1.0, 0.0});
    const std::vector<double> xs{0.0, 0.6};
    auto rows = dist_wigner(e, unit, xs);
    for (std::size_t r = 0; r < xs.size(); ++r) {
        REQUIRE(rows[r].atoms.size() == 1);
        const auto* s = std::get_if<SmoothAtom>(&rows[r].atoms[0].shape);
        REQUIRE(s != nullptr);
        // compare at grid nodes of the produced momentum row
        for (double pv : {-1.0, 0.0, 0.8}) {
            const std::size_t j = s->field.grid.nearest(pv);
            const double node = s->field.grid.node(j);
            const cxd val = rows[r].atoms[0].weight * s->field.values[j];
            const double want = ho_exact_wigner_value(0, unit, xs[r], node);
            CHECK(std::abs(val - cxd{want, 0.0}) < 1e-6);
        }
    }
}

TEST_CASE("dist_wigner on the scattering state reproduces the four-term closed form") {
    PhysParams p = pt_params();
    DistExpr pos = pt_position_atoms(p);
    const std::vector<double> xs{0.45, 1.3};
    auto rows = dist_wigner(pos, p, xs);

    for (std::size_t r = 0; r < xs.size(); ++r) {
        for (auto [c, w] : {std::pair{-6.0, 0.8}, std::pair{-4.5, 1.1}}) {
            auto phi = gaussian_test(c, w);
            const double via_atoms = pair_with(rows[r], phi, c - 45.0, c + 45.0).real();
            const double closed = pt_wigner_pair(p, xs[r], phi, c - 45.0, c + 45.0);
            // the sampled residual atom limits the agreement to its trapezoid accuracy
            CHECK(via_atoms == Approx(closed).epsilon(1e-4).margin(1e-7));
        }
    }
    // reality: pairing with real Gaussians has negligible imaginary part
    auto phi = gaussian_test(-6.0, 1.0);
    const cxd val = pair_with(rows[0], phi, -50.0, 40.0);
    CHECK(std::abs(val.imag()) <= 1e-10 * std::abs(val.real()));
}

TEST_CASE("exact scattering Wigner field: delta coefficient and smooth limits") {
    PhysParams p = pt_params(6.0, 1.0);
    Grid1D xg(-1.0, 1.0, 5), pg(-7.0, -5.0, 41);
    PtWignerField W = pt_exact_wigner(p, xg, pg);
    CHECK(W.delta_coefficient == Approx(35.0 / 37.0).epsilon(1e-14));
    CHECK(W.delta_location == Approx(-6.0));

    // |k| = a removes the delta component exactly
    PtWignerField W2 = pt_exact_wigner(pt_params(1.0, 1.0), xg, pg);
    CHECK(W2.delta_coefficient == 0.0);

    // the smooth (k hbar + p)/sinh factor has the removable-limit value a hbar / pi at the ridge
    const double at_ridge = z_over_sinh(0.0, 0.5 * p.a * p.hbar);
    CHECK(at_ridge == Approx(p.a * p.hbar / std::numbers::pi).epsilon(1e-12));
    const std::size_t jr = pg.nearest(-6.0);
    const double smooth_val = W.smooth_term.at(xg.nearest(0.0), jr);
    const double want = 2.0 * std::norm(p.amplitude) / (p.hbar * p.hbar * (p.a * p.a + p.k * p.k)) *
                        at_ridge;
    CHECK(smooth_val == Approx(want).epsilon(1e-10));
}

TEST_CASE("full closed-form pairing against the defining-integral oracle") {
    PhysParams p = pt_params();
    // oracle: (1/2 pi hbar) \int dxi conj(psi)(x+xi/2) psi(x-xi/2) Phihat(xi) with the
    // Gaussian pairing supplying the xi decay
    auto oracle = [&](double x, double c, double w) {
        auto f = [&](double xiv) {
            const cxd g = std::conj(pt_exact_wave_value(p, x + 0.5 * xiv)) *
                          pt_exact_wave_value(p, x - 0.5 * xiv);
            const double gauss = w * std::sqrt(2.0 * std::numbers::pi) *
                                 std::exp(-0.5 * w * w * xiv * xiv / (p.hbar * p.hbar));
            return (g * gauss * std::polar(1.0, -xiv * c / p.hbar)).real();
        };
        const double L = 10.0 * p.hbar / w;
        return integrate<double>(f, -L, L, 1e-11, 1e-11) / (2.0 * std::numbers::pi * p.hbar);
    };
    for (double x : {0.0, 0.7, 1.5, -0.9, 2.5}) {
        for (auto [c, w] : {std::pair{-6.0, 1.0}, std::pair{-4.0, 1.2}}) {
            const double lhs = pt_wigner_pair(p, x, gaussian_test(c, w), c - 45.0, c + 45.0);
            const double rhs = oracle(x, c, w);
            CHECK(lhs == Approx(rhs).epsilon(1e-4).margin(1e-9));
        }
    }
}

TEST_CASE("scattering WKB phase: closed forms, base point and solver cross-check") {
    PhysParams p = pt_params();
    Grid1D g(-5.0, 5.0, 201);
    PhaseSeries s = pt_wkb_phase(p, g);
    CHECK(std::abs(s.terms[0][g.nearest(0.0)]) < 1e-14); // sigma_0(0) = 0
    CHECK(s.terms[1][g.nearest(0.0)].real() ==
          Approx(-0.5 * std::log(p.hbar * std::sqrt(p.k * p.k + 2.0 * p.a * p.a))).epsilon(1e-14));

    // the closed forms agree with the generic phase solver
    PotentialModel pt = PotentialModel::poeschl_teller(p);
    PhaseSeries num = solve_phase_terms(pt, p.scattering_energy(), Branch::I, 1, -5.0, 5.0, 201, 0.0);
    for (std::size_t i = 0; i < g.size(); i += 10) {
        CHECK(std::abs(s.terms[0][i] - num.terms[0][i]) < 1e-9);
        CHECK(std::abs(s.terms[1][i] - num.terms[1][i]) < 1e-11);
    }

    // first-order wave against the exact one after a single fitted complex scale
    ComplexField1D exact = pt_exact_wave(p, g);
    cxd numcoef{0.0, 0.0};
    double den = 0.0;
    std::vector<cxd> wkb(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        wkb[i] = std::exp(cxd{0.0, 1.0} / p.hbar * s.total_at(i));
        numcoef += std::conj(wkb[i]) * exact.values[i];
        den += std::norm(wkb[i]);
    }
    const cxd scale = numcoef / den;
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst,
                         std::abs(scale * wkb[i] - exact.values[i]) / std::abs(exact.values[i]));
    CHECK(worst <= 0.02);
    CHECK(std::abs(scale) == Approx(2.449).epsilon(0.01)); // the reported rescaling factor
}

TEST_CASE("unsupported distribution operations raise typed errors") {
    DistExpr e;
    e.append(PvGenericAtom{ComplexField1D(Grid1D(-1.0, 1.0, 33)), 0.0}, cxd{1.0, 0.0});
    CHECK_THROWS_AS(dist_fourier(e, FourierDirection::forward), unsupported_error);

    DistExpr tanh_expr;
    tanh_expr.append(TanhAtom{1.0, 0.0, 0.0}, cxd{1.0, 0.0});
    DistExpr pv_expr;
    pv_expr.append(PvCschAtom{0.0, 1.0, 0.0}, cxd{1.0, 0.0});
    CHECK_THROWS_AS(dist_convolve(tanh_expr, pv_expr), unsupported_error);
}
