#pragma once

#include <string>

#include "tether/cover.hpp"
#include "tether/planner.hpp"
#include "tether/triangulation.hpp"

namespace tether {

// Workspace, obstacles, dashed generators, anchor (and optional robot).
std::string render_environment(const ValidatedEnvironment& env, const Point* robot = nullptr);

// Triangulation overlay: constrained edges bold, primal graph light, dual
// graph representatives and adjacency on top.
std::string render_triangulation(const ValidatedEnvironment& env, const Triangulation& T,
                                 const DualGraph& dual);

// One panel per signature layer in canonical order, highlighting the layer's
// triangles over a faded base.
std::string render_layers(const ValidatedEnvironment& env, const CoverComplex& complex);

// Single plan result: path in blue, post-motion tether in black, lengths in
// the caption.
std::string render_plan(const ValidatedEnvironment& env, const PlanQuery& query,
                        const PlanResult& result, int rank);

}  // namespace tether
