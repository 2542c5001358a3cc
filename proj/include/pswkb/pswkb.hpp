#pragma once

// Phase-space WKB toolkit: Wigner transforms, Moyal star calculus, region-matched WKB
// assembly, and a distributional route for unbound states.

#include "pswkb/distributions.hpp"
#include "pswkb/errors.hpp"
#include "pswkb/fourier.hpp"
#include "pswkb/grid.hpp"
#include "pswkb/io.hpp"
#include "pswkb/moyal.hpp"
#include "pswkb/params.hpp"
#include "pswkb/potentials.hpp"
#include "pswkb/quadrature.hpp"
#include "pswkb/special.hpp"
#include "pswkb/wigner.hpp"
#include "pswkb/wkb.hpp"
