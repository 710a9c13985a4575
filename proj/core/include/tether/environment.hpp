#pragma once

#include <string>
#include <vector>

#include "tether/geometry.hpp"

namespace tether {

// Infinite ray anchored inside a homotopy-relevant obstacle. For crossing
// tests the ray is clipped at the workspace bounding box inflated by one
// unit; clip_end stores that endpoint.
struct Generator {
  int obstacle_id = -1;
  Point origin;
  Point direction;  // unit vector
  Point clip_end;

  Segment clipped() const { return {origin, clip_end}; }
};

struct Environment {
  Polygon workspace;
  std::vector<Polygon> obstacles;
  Point anchor;
  double tether_length = 0.0;
  // Optional explicit generators (override automatic construction, still validated).
  std::vector<Generator> explicit_generators;
};

class ValidatedEnvironment {
 public:
  ValidatedEnvironment(Environment env, std::vector<int> relevant, std::vector<Generator> gens)
      : env_(std::move(env)), relevant_(std::move(relevant)), generators_(std::move(gens)) {}

  const Environment& env() const { return env_; }
  const Polygon& workspace() const { return env_.workspace; }
  const std::vector<Polygon>& obstacles() const { return env_.obstacles; }
  const Point& anchor() const { return env_.anchor; }
  double tether_length() const { return env_.tether_length; }
  // Indices of the m <= n homotopy-relevant obstacles, ascending.
  const std::vector<int>& relevant_obstacles() const { return relevant_; }
  const std::vector<Generator>& generators() const { return generators_; }
  int num_generators() const { return static_cast<int>(generators_.size()); }

 private:
  Environment env_;
  std::vector<int> relevant_;
  std::vector<Generator> generators_;
};

// Verifies all Environment invariants (obstacles pairwise disjoint and inside
// the workspace closure, anchor in free space, positive tether length),
// classifies homotopy-relevant obstacles and resolves generators.
ValidatedEnvironment validate(Environment env);

// An obstacle is homotopy-relevant iff its closure does not touch the
// workspace boundary: only those can be encircled by a path inside W.
std::vector<int> classify_homotopy_relevant(const Environment& env);

// One ray per relevant obstacle, default direction (0,1) from an interior
// representative point, rotated in 5-degree increments until the rays are
// pairwise disjoint and avoid every polygon vertex and the anchor.
std::vector<Generator> compute_generators(const Environment& env, const std::vector<int>& relevant);

// JSON document parsing/serialization. The canonical schema:
//   {"workspace": [[x,y],...], "obstacles": [[[x,y],...],...],
//    "anchor": [x,y], "tether_length": L,
//    "generators": [{"obstacle": i, "origin": [x,y], "direction": [dx,dy]}]}
Environment load_environment(const std::string& text);
std::string serialize(const Environment& env);

// FNV-1a hash of the canonical serialization; used for cache identity.
std::string environment_hash(const Environment& env);

}  // namespace tether
