#pragma once

#include <cstdint>
#include <random>

#include "dirsr/grid.hpp"
#include "dirsr/image.hpp"

namespace dirsr::testutil {

inline Plane random_plane(std::mt19937_64& rng, int w, int h, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Plane p(w, h);
    for (double& v : p) v = u(rng);
    return p;
}

inline Image random_image(std::mt19937_64& rng, int w, int h) { return Image(random_plane(rng, w, h)); }

}  // namespace dirsr::testutil
