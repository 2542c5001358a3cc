#pragma once

#include <cmath>
#include <complex>

#include "pswkb/errors.hpp"

namespace pswkb {

// Physical constants read by every formula. omega applies to the harmonic oscillator,
// a/k/amplitude to the Poeschl-Teller scattering state; unused members stay at their
// defaults. The wave number relates to the energy as E = hbar^2 k^2 / (2 M).
struct PhysParams {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;
    double a = 1.0;
    double k = 1.0;
    std::complex<double> amplitude{1.0, 0.0};

    void validate() const {
        if (!(hbar > 0.0)) throw domain_error("PhysParams: hbar must be > 0");
        if (!(mass > 0.0)) throw domain_error("PhysParams: mass must be > 0");
        if (!(omega > 0.0)) throw domain_error("PhysParams: omega must be > 0");
        if (!(a > 0.0)) throw domain_error("PhysParams: a must be > 0");
        if (!(k > 0.0)) throw domain_error("PhysParams: k must be > 0");
    }

    double scattering_energy() const { return hbar * hbar * k * k / (2.0 * mass); }
};

} // namespace pswkb
