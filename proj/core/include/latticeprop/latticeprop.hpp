#pragma once

#include "latticeprop/contmult.hpp"
#include "latticeprop/errors.hpp"
#include "latticeprop/histogram.hpp"
#include "latticeprop/interactions.hpp"
#include "latticeprop/lattice.hpp"
#include "latticeprop/metrics.hpp"
#include "latticeprop/paths.hpp"
#include "latticeprop/propagators.hpp"
#include "latticeprop/quadrature.hpp"

namespace latticeprop {
inline constexpr const char* version = "0.1.0";
}
