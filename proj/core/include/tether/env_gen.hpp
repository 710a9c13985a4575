#pragma once

#include "tether/environment.hpp"

namespace tether {

// Deterministic 10x10 benchmark environment with m homotopy-relevant
// obstacles placed on a jittered 3x3 slot grid (m <= 9). Obstacles are
// star-shaped polygons with 5-8 vertices; the anchor sits near the
// lower-left corner.
Environment generate_environment(int m, unsigned seed, double tether_length);

}  // namespace tether
