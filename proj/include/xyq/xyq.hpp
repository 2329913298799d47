#pragma once
// Umbrella header: closed-form observables of the suddenly quenched
// transverse-field XY chain in the thermodynamic limit, plus the two-site
// entanglement toolkit and scan/serialization plumbing.

#include "xyq/version.hpp"        // IWYU pragma: export
#include "xyq/model.hpp"          // IWYU pragma: export
#include "xyq/quadrature.hpp"     // IWYU pragma: export
#include "xyq/equilibrium.hpp"    // IWYU pragma: export
#include "xyq/quench.hpp"         // IWYU pragma: export
#include "xyq/thermo.hpp"         // IWYU pragma: export
#include "xyq/entanglement.hpp"   // IWYU pragma: export
#include "xyq/parallel.hpp"       // IWYU pragma: export
#include "xyq/scan.hpp"           // IWYU pragma: export
#include "xyq/io.hpp"             // IWYU pragma: export
