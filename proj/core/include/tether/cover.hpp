#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tether/homotopy.hpp"
#include "tether/triangulation.hpp"

namespace tether {

struct LiftedVertex {
  int base_vertex = -1;
  Signature sig;  // class of a path from the anchor to this vertex
};

struct LiftedEdge {
  int a = -1;  // lifted vertex ids, a < b
  int b = -1;
};

struct LiftedTriangle {
  int base_triangle = -1;
  Signature sig;  // class of the dual-tree path from the anchor copy
  int parent = -1;
  int depth = 0;
  std::array<int, 3> corners{-1, -1, -1};  // lifted vertex ids, aligned with the base triangle
};

struct LiftedPoint {
  int copy = -1;  // lifted triangle id
  Point coords;   // base-space coordinates
};

// Serializable identity of one lifted triangle, enough to replay a build.
struct CopyRecord {
  int base_triangle = -1;
  Signature sig;
  int parent = -1;
};

// Simplicial model of the tether-length-truncated universal cover of the free
// workspace. Immutable once built; all queries are safe to run concurrently.
class CoverComplex {
 public:
  const Triangulation& base() const { return T_; }
  const DualGraph& dual() const { return dual_; }
  const std::vector<Generator>& generators() const { return generators_; }
  double tether_length() const { return tether_length_; }

  const std::vector<LiftedVertex>& lifted_vertices() const { return vertices_; }
  const std::vector<LiftedEdge>& lifted_edges() const { return edges_; }
  const std::vector<LiftedTriangle>& lifted_triangles() const { return triangles_; }

  // The lifted anchor triangle (identity class); -1 when even that triangle
  // failed the vertex length checks and the complex is empty.
  int anchor_copy() const { return anchor_copy_; }
  LiftedPoint anchor_point() const;

  int find_copy(int base_triangle, const Signature& sig) const;
  const std::vector<int>& copies_of(int base_triangle) const;

  // Covering projection: drops the signature component.
  int project(const LiftedTriangle& t) const { return t.base_triangle; }
  int project_vertex(int lifted_vertex) const;
  Point project(const LiftedPoint& p) const;

  // Unique lift of a path that starts at the anchor; the result lives in the
  // copy whose layer matches the path's class. kLiftExceedsTether when that
  // copy was truncated away.
  LiftedPoint lift_path(const Polyline& path) const;

  // One lifted point per copy of the triangle containing p, in canonical
  // signature order.
  std::vector<LiftedPoint> preimage(const Point& p) const;

  // Class of anchor-to-point paths ending at the lifted point: the copy's
  // layer signature corrected by the in-triangle segment from the
  // representative. This is what external path signatures compare against.
  Signature point_class(const LiftedPoint& p) const;

  // Geodesic between two lifted points: funnel through the unique dual-tree
  // sleeve. Returns the projected polyline and its length.
  std::pair<Polyline, double> shortest_in_cover(const LiftedPoint& a, const LiftedPoint& b) const;

  // Base triangle ids along the tree path between two copies.
  Sleeve tree_sleeve(int copy_a, int copy_b) const;

  // Layers in canonical signature order with sorted base triangle lists.
  std::vector<std::pair<Signature, std::vector<int>>> layers() const;

  // Structural checks: simplicial closure, Euler characteristic 1, lifted
  // dual adjacency forming the parent-child tree. Throws on violation.
  void validate_complex() const;

  bool anchor_snapped() const { return dual_.anchor_snapped; }

 private:
  friend CoverComplex build_complex(Triangulation T, DualGraph dual, const Point& anchor, double l,
                                    std::vector<Generator> generators);
  friend CoverComplex rebuild_complex(Triangulation T, DualGraph dual, double l,
                                      std::vector<Generator> generators,
                                      const std::vector<CopyRecord>& copies);

  CoverComplex() = default;

  struct CopyKeyHash {
    std::size_t operator()(const std::pair<int, Signature>& k) const {
      return std::hash<int>()(k.first) * 1000003u ^ SignatureHash()(k.second);
    }
  };

  int intern_vertex(int base_vertex, const Signature& sig);
  void intern_edge(int a, int b);
  int add_copy(int base_triangle, const Signature& sig, int parent,
               const std::array<Signature, 3>& corner_sigs);

  Triangulation T_;
  DualGraph dual_;
  std::vector<Generator> generators_;
  double tether_length_ = 0.0;

  std::vector<LiftedVertex> vertices_;
  std::vector<LiftedEdge> edges_;
  std::vector<LiftedTriangle> triangles_;
  int anchor_copy_ = -1;

  std::unordered_map<std::pair<int, Signature>, int, CopyKeyHash> vertex_index_;
  std::unordered_map<std::pair<int, Signature>, int, CopyKeyHash> copy_index_;
  std::unordered_map<long long, int> edge_index_;
  std::vector<std::vector<int>> copies_by_base_;
};

// Algorithm: breadth-first growth of the lifted dual tree from the anchor
// copy. A candidate triangle copy is admitted only if all three of its
// vertices are reachable from the lifted anchor within tether length l in the
// copy's homotopy class; distances come from the funnel through the candidate's
// dual-tree sleeve and are memoized per (vertex, class).
CoverComplex build_complex(Triangulation T, DualGraph dual, const Point& anchor, double l,
                           std::vector<Generator> generators);

// Re-registers a previously built complex from its copy list in build order,
// skipping the length checks. Used by the on-disk cache.
CoverComplex rebuild_complex(Triangulation T, DualGraph dual, double l,
                             std::vector<Generator> generators,
                             const std::vector<CopyRecord>& copies);

}  // namespace tether
