#include "tether/cover.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

namespace tether {

namespace {

long long edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return static_cast<long long>(a) * 1000000007LL + b;
}

// Incrementally maintained funnel from the anchor representative through the
// candidate's dual-tree sleeve. Extending by one portal and querying a corner
// distance are amortized O(chain) instead of re-walking the whole sleeve;
// the computed values equal funnel_shortest over the assembled sleeve.
struct FunnelState {
  Point apex;
  double apex_dist = 0.0;
  std::vector<Point> left;   // apex -> outward, convex
  std::vector<Point> right;  // apex -> outward, convex
  bool has_portal = false;   // false only for the root (anchor) copy
  Point portal_left;         // entry portal of the owning triangle copy
  Point portal_right;
};

void funnel_add_left(FunnelState& f, const Point& x) {
  while (!f.left.empty()) {
    const Point& b = f.left.back();
    const Point& a = f.left.size() >= 2 ? f.left[f.left.size() - 2] : f.apex;
    if (orient_sign(a, b, x) > 0) break;
    f.left.pop_back();
  }
  if (f.left.empty()) {
    while (!f.right.empty() && orient_sign(f.apex, f.right.front(), x) <= 0) {
      f.apex_dist += distance(f.apex, f.right.front());
      f.apex = f.right.front();
      f.right.erase(f.right.begin());
    }
  }
  f.left.push_back(x);
}

void funnel_add_right(FunnelState& f, const Point& x) {
  while (!f.right.empty()) {
    const Point& b = f.right.back();
    const Point& a = f.right.size() >= 2 ? f.right[f.right.size() - 2] : f.apex;
    if (orient_sign(a, b, x) < 0) break;
    f.right.pop_back();
  }
  if (f.right.empty()) {
    while (!f.left.empty() && orient_sign(f.apex, f.left.front(), x) >= 0) {
      f.apex_dist += distance(f.apex, f.left.front());
      f.apex = f.left.front();
      f.left.erase(f.left.begin());
    }
  }
  f.right.push_back(x);
}

double funnel_query(const FunnelState& f, const Point& v) {
  FunnelState probe = f;
  funnel_add_left(probe, v);
  double d = probe.apex_dist;
  Point prev = probe.apex;
  for (const Point& p : probe.left) {
    d += distance(prev, p);
    prev = p;
  }
  return d;
}

// Per-triangulation signature bookkeeping shared by the builder and the
// replay loader: h over the straight segment representative->corner and over
// the funnel path between adjacent representatives.
class SignatureTables {
 public:
  SignatureTables(const Triangulation& T, const DualGraph& dual,
                  const std::vector<Generator>& gens)
      : T_(T), dual_(dual), gens_(gens) {}

  const Signature& corner(int tri, int k) {
    auto it = corner_.find(tri * 3 + k);
    if (it != corner_.end()) return it->second;
    const Point rep = dual_.rep[tri];
    const Point v = T_.vertices[T_.triangles[tri].v[k]];
    return corner_.emplace(tri * 3 + k, signature_of_path({rep, v}, gens_)).first->second;
  }

  const Signature& dual_edge(int from, int to) {
    const long long key = static_cast<long long>(from) * 1000000007LL + to;
    auto it = edge_.find(key);
    if (it != edge_.end()) return it->second;
    Sleeve s;
    s.triangles = {from, to};
    const Polyline path = funnel_shortest(T_, s, dual_.rep[from], dual_.rep[to]);
    Signature sig = signature_of_path(path, gens_);
    const long long rkey = static_cast<long long>(to) * 1000000007LL + from;
    edge_.emplace(rkey, invert(sig));
    return edge_.emplace(key, std::move(sig)).first->second;
  }

 private:
  const Triangulation& T_;
  const DualGraph& dual_;
  const std::vector<Generator>& gens_;
  std::unordered_map<long long, Signature> corner_;
  std::unordered_map<long long, Signature> edge_;
};

}  // namespace

int CoverComplex::intern_vertex(int base_vertex, const Signature& sig) {
  const auto key = std::make_pair(base_vertex, sig);
  auto it = vertex_index_.find(key);
  if (it != vertex_index_.end()) return it->second;
  const int id = static_cast<int>(vertices_.size());
  vertices_.push_back({base_vertex, sig});
  vertex_index_.emplace(key, id);
  return id;
}

void CoverComplex::intern_edge(int a, int b) {
  if (a > b) std::swap(a, b);
  const long long key = edge_key(a, b);
  if (edge_index_.count(key)) return;
  edge_index_.emplace(key, static_cast<int>(edges_.size()));
  edges_.push_back({a, b});
}

int CoverComplex::add_copy(int base_triangle, const Signature& sig, int parent,
                           const std::array<Signature, 3>& corner_sigs) {
  const int id = static_cast<int>(triangles_.size());
  LiftedTriangle copy;
  copy.base_triangle = base_triangle;
  copy.sig = sig;
  copy.parent = parent;
  copy.depth = parent < 0 ? 0 : triangles_[parent].depth + 1;
  for (int k = 0; k < 3; ++k) {
    copy.corners[k] = intern_vertex(T_.triangles[base_triangle].v[k], corner_sigs[k]);
  }
  for (int k = 0; k < 3; ++k) intern_edge(copy.corners[k], copy.corners[(k + 1) % 3]);
  triangles_.push_back(std::move(copy));
  copy_index_.emplace(std::make_pair(base_triangle, sig), id);
  copies_by_base_[base_triangle].push_back(id);
  return id;
}

CoverComplex build_complex(Triangulation T, DualGraph dual, const Point& anchor, double l,
                           std::vector<Generator> generators) {
  if (l <= 0.0) throw Error(ErrorCode::kNonpositiveTether, "tether length must be positive");
  int anchor_tri;
  try {
    anchor_tri = T.locate(anchor);
  } catch (const Error&) {
    throw Error(ErrorCode::kAnchorNotInFreeSpace, "anchor not in free space");
  }
  if (anchor_tri != dual.anchor_triangle) {
    throw Error(ErrorCode::kDegenerateInput, "dual graph was built for a different anchor");
  }

  CoverComplex c;
  c.T_ = std::move(T);
  c.dual_ = std::move(dual);
  c.generators_ = std::move(generators);
  c.tether_length_ = l;
  c.copies_by_base_.resize(c.T_.triangles.size());

  SignatureTables tables(c.T_, c.dual_, c.generators_);
  const Point anchor_rep = c.dual_.rep[c.dual_.anchor_triangle];

  struct Pending {
    int tri;
    Signature sig;
    int parent;
  };
  std::queue<Pending> open;
  open.push({c.dual_.anchor_triangle, {}, -1});

  using Key = std::pair<int, Signature>;
  std::unordered_set<Key, CoverComplex::CopyKeyHash> rejected;
  std::unordered_map<Key, double, CoverComplex::CopyKeyHash> vertex_dist;
  std::vector<FunnelState> funnels;  // one per accepted copy

  // Entry portal of `tri` when crossed from `from`, as (left, right).
  auto entry_portal = [&c](int from, int tri) {
    int slot = -1;
    for (int e = 0; e < 3; ++e) {
      if (c.T_.triangles[from].nbr[e] == tri) slot = e;
    }
    const int vr = c.T_.triangles[from].v[slot];
    const int vl = c.T_.triangles[from].v[(slot + 1) % 3];
    return std::pair<Point, Point>(c.T_.vertices[vl], c.T_.vertices[vr]);
  };

  while (!open.empty()) {
    Pending cand = std::move(open.front());
    open.pop();
    const Key key{cand.tri, cand.sig};
    if (c.copy_index_.count(key) || rejected.count(key)) continue;

    // Funnel along the tentative tree path, extended through the entry portal.
    FunnelState state;
    if (cand.parent < 0) {
      state.apex = anchor_rep;
    } else {
      state = funnels[cand.parent];
      const auto [pl, pr] = entry_portal(c.triangles_[cand.parent].base_triangle, cand.tri);
      if (!state.has_portal) {
        funnel_add_left(state, pl);
        funnel_add_right(state, pr);
      } else if (state.portal_left == pl) {
        funnel_add_right(state, pr);  // consecutive portals share the left endpoint
      } else {
        funnel_add_left(state, pl);
      }
      state.has_portal = true;
      state.portal_left = pl;
      state.portal_right = pr;
    }

    std::array<Signature, 3> corner_sigs;
    bool reachable = true;
    for (int k = 0; k < 3 && reachable; ++k) {
      const int v = c.T_.triangles[cand.tri].v[k];
      corner_sigs[k] = concat(cand.sig, tables.corner(cand.tri, k));
      const Key vkey{v, corner_sigs[k]};
      auto it = vertex_dist.find(vkey);
      double d;
      if (it != vertex_dist.end()) {
        d = it->second;
      } else {
        d = funnel_query(state, c.T_.vertices[v]);
        vertex_dist.emplace(vkey, d);
      }
      if (d > l) reachable = false;
    }
    if (!reachable) {
      rejected.insert(key);
      continue;
    }

    const int copy_id = c.add_copy(cand.tri, cand.sig, cand.parent, corner_sigs);
    funnels.push_back(std::move(state));
    if (cand.parent < 0) c.anchor_copy_ = copy_id;

    for (int next : c.dual_.adj[cand.tri]) {
      Signature next_sig = concat(cand.sig, tables.dual_edge(cand.tri, next));
      const Key nkey{next, next_sig};
      if (!c.copy_index_.count(nkey) && !rejected.count(nkey)) {
        open.push({next, std::move(next_sig), copy_id});
      }
    }
  }
  return c;
}

CoverComplex rebuild_complex(Triangulation T, DualGraph dual, double l,
                             std::vector<Generator> generators,
                             const std::vector<CopyRecord>& copies) {
  CoverComplex c;
  c.T_ = std::move(T);
  c.dual_ = std::move(dual);
  c.generators_ = std::move(generators);
  c.tether_length_ = l;
  c.copies_by_base_.resize(c.T_.triangles.size());

  SignatureTables tables(c.T_, c.dual_, c.generators_);
  for (const CopyRecord& rec : copies) {
    if (rec.base_triangle < 0 || rec.base_triangle >= static_cast<int>(c.T_.triangles.size()) ||
        rec.parent >= static_cast<int>(c.triangles_.size())) {
      throw Error(ErrorCode::kParseError, "copy record out of range");
    }
    std::array<Signature, 3> corner_sigs;
    for (int k = 0; k < 3; ++k) {
      corner_sigs[k] = concat(rec.sig, tables.corner(rec.base_triangle, k));
    }
    const int id = c.add_copy(rec.base_triangle, rec.sig, rec.parent, corner_sigs);
    if (rec.parent < 0) c.anchor_copy_ = id;
  }
  return c;
}

LiftedPoint CoverComplex::anchor_point() const {
  if (anchor_copy_ < 0) {
    throw Error(ErrorCode::kElementNotInComplex, "complex has no anchor copy");
  }
  return {anchor_copy_, dual_.rep[dual_.anchor_triangle]};
}

int CoverComplex::find_copy(int base_triangle, const Signature& sig) const {
  auto it = copy_index_.find(std::make_pair(base_triangle, sig));
  return it == copy_index_.end() ? -1 : it->second;
}

const std::vector<int>& CoverComplex::copies_of(int base_triangle) const {
  if (base_triangle < 0 || base_triangle >= static_cast<int>(copies_by_base_.size())) {
    throw Error(ErrorCode::kElementNotInComplex, "base triangle id out of range");
  }
  return copies_by_base_[base_triangle];
}

int CoverComplex::project_vertex(int lifted_vertex) const {
  if (lifted_vertex < 0 || lifted_vertex >= static_cast<int>(vertices_.size())) {
    throw Error(ErrorCode::kElementNotInComplex, "lifted vertex id out of range");
  }
  return vertices_[lifted_vertex].base_vertex;
}

Point CoverComplex::project(const LiftedPoint& p) const {
  if (p.copy < 0 || p.copy >= static_cast<int>(triangles_.size())) {
    throw Error(ErrorCode::kElementNotInComplex, "lifted point outside the complex");
  }
  return p.coords;
}

LiftedPoint CoverComplex::lift_path(const Polyline& path) const {
  if (path.empty()) throw Error(ErrorCode::kDegenerateInput, "empty path");
  const Point anchor = dual_.rep[dual_.anchor_triangle];
  if (distance(path.front(), anchor) > kSnapEps) {
    throw Error(ErrorCode::kDegenerateInput, "path does not start at the anchor");
  }
  const Point end = path.back();
  const int tri = T_.locate(end);
  const Signature path_sig = signature_of_path(path, generators_);
  const Signature corr = signature_of_path({end, dual_.rep[tri]}, generators_);
  const Signature layer = concat(path_sig, corr);
  const int copy = find_copy(tri, layer);
  if (copy < 0) {
    throw Error(ErrorCode::kLiftExceedsTether,
                "endpoint class " + (layer.empty() ? std::string("<id>") : to_string(layer)) +
                    " is not within the truncated cover");
  }
  return {copy, end};
}

Signature CoverComplex::point_class(const LiftedPoint& p) const {
  if (p.copy < 0 || p.copy >= static_cast<int>(triangles_.size())) {
    throw Error(ErrorCode::kElementNotInComplex, "lifted point outside the complex");
  }
  const LiftedTriangle& t = triangles_[p.copy];
  const Signature corr =
      signature_of_path({dual_.rep[t.base_triangle], p.coords}, generators_);
  return concat(t.sig, corr);
}

std::vector<LiftedPoint> CoverComplex::preimage(const Point& p) const {
  const int tri = T_.locate(p);  // kPointNotInFreeSpace propagates
  std::vector<int> ids = copies_by_base_[tri];
  std::sort(ids.begin(), ids.end(), [this](int a, int b) {
    return signature_less(triangles_[a].sig, triangles_[b].sig);
  });
  std::vector<LiftedPoint> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back({id, p});
  return out;
}

Sleeve CoverComplex::tree_sleeve(int copy_a, int copy_b) const {
  if (copy_a < 0 || copy_a >= static_cast<int>(triangles_.size()) || copy_b < 0 ||
      copy_b >= static_cast<int>(triangles_.size())) {
    throw Error(ErrorCode::kElementNotInComplex, "copy id out of range");
  }
  std::vector<int> up_a, up_b;
  int x = copy_a, y = copy_b;
  while (triangles_[x].depth > triangles_[y].depth) {
    up_a.push_back(x);
    x = triangles_[x].parent;
  }
  while (triangles_[y].depth > triangles_[x].depth) {
    up_b.push_back(y);
    y = triangles_[y].parent;
  }
  while (x != y) {
    up_a.push_back(x);
    up_b.push_back(y);
    x = triangles_[x].parent;
    y = triangles_[y].parent;
  }
  Sleeve s;
  for (int id : up_a) s.triangles.push_back(triangles_[id].base_triangle);
  s.triangles.push_back(triangles_[x].base_triangle);
  for (auto it = up_b.rbegin(); it != up_b.rend(); ++it) {
    s.triangles.push_back(triangles_[*it].base_triangle);
  }
  return s;
}

std::pair<Polyline, double> CoverComplex::shortest_in_cover(const LiftedPoint& a,
                                                            const LiftedPoint& b) const {
  const Sleeve s = tree_sleeve(a.copy, b.copy);
  Polyline path = funnel_shortest(T_, s, a.coords, b.coords);
  const double len = polyline_length(path);
  return {std::move(path), len};
}

std::vector<std::pair<Signature, std::vector<int>>> CoverComplex::layers() const {
  std::vector<std::pair<Signature, std::vector<int>>> out;
  std::unordered_map<Signature, std::size_t, SignatureHash> index;
  for (const LiftedTriangle& t : triangles_) {
    auto it = index.find(t.sig);
    if (it == index.end()) {
      index.emplace(t.sig, out.size());
      out.push_back({t.sig, {t.base_triangle}});
    } else {
      out[it->second].second.push_back(t.base_triangle);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return signature_less(x.first, y.first); });
  for (auto& [sig, tris] : out) std::sort(tris.begin(), tris.end());
  return out;
}

void CoverComplex::validate_complex() const {
  if (triangles_.empty()) {
    throw Error(ErrorCode::kDegenerateInput, "complex is empty");
  }
  const long long chi = static_cast<long long>(vertices_.size()) -
                        static_cast<long long>(edges_.size()) +
                        static_cast<long long>(triangles_.size());
  if (chi != 1) {
    throw Error(ErrorCode::kDegenerateInput,
                "Euler characteristic " + std::to_string(chi) + ", expected 1");
  }
  // Lifted dual adjacency (copies sharing a lifted edge) must be exactly the
  // parent-child pairs: the tree structure of the lifted dual graph.
  std::map<long long, std::vector<int>> edge_copies;
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    const LiftedTriangle& t = triangles_[i];
    for (int k = 0; k < 3; ++k) {
      edge_copies[edge_key(t.corners[k], t.corners[(k + 1) % 3])].push_back(static_cast<int>(i));
    }
  }
  std::set<std::pair<int, int>> adjacency;
  for (const auto& [key, users] : edge_copies) {
    if (users.size() > 2) {
      throw Error(ErrorCode::kDegenerateInput, "lifted edge shared by more than two triangles");
    }
    if (users.size() == 2) {
      adjacency.insert({std::min(users[0], users[1]), std::max(users[0], users[1])});
    }
  }
  std::size_t tree_edges = 0;
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    const int parent = triangles_[i].parent;
    if (parent >= 0) {
      ++tree_edges;
      const auto key = std::make_pair(std::min<int>(parent, i), std::max<int>(parent, i));
      if (!adjacency.count(key)) {
        throw Error(ErrorCode::kDegenerateInput, "parent and child do not share a lifted edge");
      }
    }
  }
  if (adjacency.size() != tree_edges || tree_edges + 1 != triangles_.size()) {
    throw Error(ErrorCode::kDegenerateInput, "lifted dual graph is not the spanning tree");
  }
  for (const LiftedTriangle& t : triangles_) {
    for (int k = 0; k < 3; ++k) {
      if (vertices_[t.corners[k]].base_vertex != T_.triangles[t.base_triangle].v[k]) {
        throw Error(ErrorCode::kDegenerateInput, "corner projection mismatch");
      }
    }
  }
}

}  // namespace tether
