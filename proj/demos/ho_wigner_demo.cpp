// Builds the n = 8 oscillator eigenstate in the first WKB approximation, compares its
// phase-space picture against the closed-form Wigner eigenfunction and prints a summary.

#include <cstdio>

#include "pswkb/pswkb.hpp"

int main() {
    using namespace pswkb;
    PhysParams params;
    PotentialModel model = PotentialModel::harmonic(params);
    const unsigned n = 8;

    const double E = quantize_energy(model, n);
    std::printf("E_%u = %.12f (closed form %.12f)\n", n, E, params.hbar * params.omega * (n + 0.5));

    MatchedAssembly assembly = match_coefficients(model, E, n);
    Grid1D grid(-12.0, 12.0, 2048);
    ComplexField1D psi = assemble_wavefunction(assembly, grid);
    ComplexField1D exact = ho_exact_wave(n, params, grid);

    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        diff2 += std::norm(psi.values[i] - exact.values[i]);
        norm2 += std::norm(exact.values[i]);
    }
    std::printf("relative L2 error of the WKB wave: %.4f\n", std::sqrt(diff2 / norm2));

    Grid1D xg(-8.0, 8.0, 128), pg(-8.0, 8.0, 129);
    RealField2D W = wigner_transform(psi, params, xg, pg);
    RealField2D Wex = ho_exact_wigner(n, params, xg, pg);
    double dmax = 0.0;
    for (std::size_t i = 0; i < W.values.size(); ++i)
        dmax = std::max(dmax, std::abs(W.values[i] - Wex.values[i]));
    std::printf("max |W_wkb - W_exact| = %.3e (field peak %.3e)\n", dmax, Wex.max_abs());

    PolySymbol H = ho_hamiltonian_symbol(params);
    auto rep = star_eigen_residual(H, Wex, E, params, 3.0, 3.0, params.omega);
    std::printf("exact-field star residuals: r_eigen = %.3e, r_bracket = %.3e\n", rep.r_eigen,
                rep.r_bracket);
    return 0;
}
