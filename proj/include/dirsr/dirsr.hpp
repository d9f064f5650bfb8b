#pragma once

#include "degrade.hpp"
#include "demo_corpus.hpp"
#include "directionlet.hpp"
#include "error.hpp"
#include "filterbank.hpp"
#include "grid.hpp"
#include "image.hpp"
#include "lattice.hpp"
#include "patches.hpp"
#include "pgm.hpp"
#include "spline.hpp"
#include "superres.hpp"
#include "trainset.hpp"

namespace dirsr {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace dirsr
