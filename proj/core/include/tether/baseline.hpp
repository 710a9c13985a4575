#pragma once

#include <cstddef>
#include <vector>

#include "tether/cover.hpp"

namespace tether {

// Homotopy-augmented grid graph: nodes are (cell center, signature) pairs
// discovered by a Dijkstra expansion from the anchor cell, truncated at
// tether length l. The comparison baseline and a reachability oracle.
struct GridGraph {
  double resolution = 0.0;
  Rect box;
  int nx = 0;
  int ny = 0;
  std::vector<char> cell_free;  // nx * ny occupancy, x-major rows of y

  struct Node {
    int cell = -1;
    Signature sig;
    double dist = 0.0;
  };
  std::vector<Node> nodes;  // settle order
  std::size_t edge_count = 0;
  int anchor_node = -1;

  int cell_index(int ix, int iy) const { return iy * nx + ix; }
  Point cell_center(int cell) const {
    return {box.min_x + (cell % nx + 0.5) * resolution,
            box.min_y + (cell / nx + 0.5) * resolution};
  }
  // Cell containing p, or -1 outside the grid box.
  int cell_of(const Point& p) const;
};

// length_override > 0 replaces the environment tether length.
GridGraph build_grid_graph(const ValidatedEnvironment& env, double resolution,
                           double length_override = 0.0);

// Signatures of all graph nodes lying in p's cell, canonically ordered.
std::vector<Signature> grid_reachable_signatures(const GridGraph& g, const Point& p);

struct GridColumn {
  double resolution = 0.0;
  bool skipped = false;  // deterministic size-estimate cap
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double build_time_s = 0.0;
};

struct CompareRow {
  int m = 0;
  double l = 0.0;
  std::size_t complex_triangles = 0;
  std::size_t complex_layers = 0;
  double complex_time_s = 0.0;
  std::vector<GridColumn> grids;
  double agreement_pct = -1.0;  // signature-set agreement at the finest built grid
  std::size_t agreement_samples = 0;
};

// Builds the simplicial model and each grid, timing both, and measures
// signature-set agreement on sampled free points away from the length
// frontier. Grids whose estimated node count (free cells x layer count)
// exceeds grid_node_cap are skipped deterministically.
CompareRow compare(const ValidatedEnvironment& env, double l,
                   const std::vector<double>& resolutions, std::size_t grid_node_cap,
                   unsigned sample_seed = 1234, int sample_count = 30);

// (matched, used) over sampled free points whose class lengths are at least
// two grid diagonals away from l, with points inside the documented
// triangle-conservativeness band skipped. Signature sets are compared as
// anchor-to-point path classes.
std::pair<int, int> signature_agreement(const CoverComplex& complex, const GridGraph& grid,
                                        unsigned sample_seed, int sample_count);

}  // namespace tether
