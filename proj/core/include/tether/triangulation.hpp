#pragma once

#include <array>
#include <vector>

#include "tether/environment.hpp"
#include "tether/geometry.hpp"

namespace tether {

struct TriEdge {
  int a = -1;  // a < b
  int b = -1;
  bool constrained = false;
};

struct Triangle {
  std::array<int, 3> v{-1, -1, -1};    // CCW
  std::array<int, 3> nbr{-1, -1, -1};  // across edge (v[i], v[(i+1)%3]); -1 at constrained/boundary
};

// Constrained Delaunay triangulation of the free workspace. Vertices are the
// workspace and obstacle corners (no Steiner points); every boundary edge is
// constrained; triangles covering obstacle interiors are removed.
struct Triangulation {
  std::vector<Point> vertices;
  std::vector<TriEdge> edges;
  std::vector<Triangle> triangles;

  // Lowest-id triangle whose closed region contains p; throws kPointNotInFreeSpace.
  int locate(const Point& p) const;
  bool triangle_contains(int t, const Point& p) const;
  Point centroid(int t) const;
  bool has_vertex(int t, int v) const;
};

Triangulation triangulate(const ValidatedEnvironment& env);

// Representative points of the triangles plus adjacency across shared
// unconstrained edges. The representative of the anchor's triangle is the
// anchor itself; all other representatives are centroids, displaced off
// generator rays when necessary.
struct DualGraph {
  std::vector<Point> rep;
  std::vector<std::vector<int>> adj;  // sorted ascending
  int anchor_triangle = -1;
  bool anchor_snapped = false;  // anchor sat on a triangulation edge and was nudged inward
};

DualGraph dual_graph(const Triangulation& T, const Point& anchor,
                     const std::vector<Generator>& generators);

// Sequence of edge-adjacent triangles; may revisit base triangles when it
// unrolls a path that winds around obstacles.
struct Sleeve {
  std::vector<int> triangles;
};

// Validates consecutive adjacency and collapses immediate backtracks (t,u,t).
Sleeve sleeve_between(const Triangulation& T, const DualGraph& dual,
                      const std::vector<int>& dual_path);

// Shortest path from a to b inside the sleeve (funnel algorithm). Requires a
// in the first and b in the last triangle of the sleeve.
Polyline funnel_shortest(const Triangulation& T, const Sleeve& sleeve, const Point& a,
                         const Point& b);

// Plain-text dump of the triangulation and dual graph for golden-file tests.
std::string dump_triangulation(const Triangulation& T, const DualGraph& dual);

}  // namespace tether
