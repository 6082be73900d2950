#pragma once

// umbrella header; fine for tools and quick experiments, the individual
// headers stay usable on their own

#include "fpgame/barrier.hpp"
#include "fpgame/cone.hpp"
#include "fpgame/core.hpp"
#include "fpgame/dpp.hpp"
#include "fpgame/expansion.hpp"
#include "fpgame/field.hpp"
#include "fpgame/game.hpp"
#include "fpgame/gauss.hpp"
#include "fpgame/lattice.hpp"
#include "fpgame/measure.hpp"
#include "fpgame/operators.hpp"
#include "fpgame/optimize.hpp"
#include "fpgame/parallel.hpp"
#include "fpgame/report.hpp"
#include "fpgame/rng.hpp"
#include "fpgame/sphere.hpp"

namespace fpgame {
inline constexpr const char* version = "0.1.0";
}
