#pragma once

#include <utility>
#include <vector>

#include "tether/cover.hpp"

namespace tether {

struct PlanQuery {
  Polyline tether;  // current configuration, from the anchor to the robot
  Point goal;
};

struct PlanResult {
  Polyline path;  // from the robot to the goal
  double path_length = 0.0;
  Signature goal_signature;   // layer of the goal copy reached
  Polyline resulting_tether;  // taut tether after the motion
  double resulting_tether_length = 0.0;
};

// One result per tether-feasible homotopy class of the goal, sorted by path
// length (ties broken by canonical signature order).
// kTetherInfeasible when the tether cannot be lifted, kGoalUnreachable when
// the goal is blocked or no class reaches it within the tether length.
std::vector<PlanResult> plan(const CoverComplex& c, const PlanQuery& q);

// (class, taut tether length) for every feasible class of p, ascending.
std::vector<std::pair<Signature, double>> rank_homotopy_classes(const CoverComplex& c,
                                                                const Point& p);

// Taut representative of the dragged tether gamma.path: the cover geodesic in
// the class of the concatenation.
Polyline resulting_tether(const CoverComplex& c, const Polyline& tether, const Polyline& path);

enum class SearchMode { kPrimal, kDual };

struct SearchResult {
  Polyline path;
  double length = 0.0;
};

// kDual: unique tree route plus funnel (exact shortest in class, the default).
// kPrimal: Dijkstra over the lifted primal graph, endpoints connected to
// their copy's corners; paths are restricted to triangulation vertices.
SearchResult search_on_graph(const CoverComplex& c, SearchMode mode, const LiftedPoint& from,
                             const LiftedPoint& to);

}  // namespace tether
