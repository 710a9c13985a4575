#include "tether/env_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tether {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = (rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

}  // namespace

Environment generate_environment(int m, unsigned seed, double tether_length) {
  if (m < 0 || m > 9) throw Error(ErrorCode::kDegenerateInput, "m must be between 0 and 9");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ seed);

  Environment env;
  env.workspace = Polygon{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}};
  env.anchor = {0.8, 0.8};
  env.tether_length = tether_length;

  std::vector<Point> slots;
  for (double sy : {2.0, 5.0, 8.0}) {
    for (double sx : {2.0, 5.0, 8.0}) {
      slots.push_back({sx, sy});
    }
  }
  // Keep the anchor's corner slot for last so small m stays clear of it.
  std::swap(slots[0], slots.back());
  for (std::size_t i = slots.size() - 2; i > 0; --i) {
    std::swap(slots[i], slots[rng() % (i + 1)]);
  }

  for (int k = 0; k < m; ++k) {
    const Point c{slots[k].x + uniform(rng, -0.15, 0.15),
                  slots[k].y + uniform(rng, -0.15, 0.15)};
    const int sides = 5 + int(rng() % 4);
    Polygon obs;
    for (int i = 0; i < sides; ++i) {
      const double angle = (i + uniform(rng, 0.15, 0.85)) * 2.0 * 3.14159265358979323846 / sides;
      const double r = uniform(rng, 0.85, 1.2);
      obs.vertices.push_back({c.x + r * std::cos(angle), c.y + r * std::sin(angle)});
    }
    env.obstacles.push_back(std::move(obs));
  }
  return env;
}

}  // namespace tether
