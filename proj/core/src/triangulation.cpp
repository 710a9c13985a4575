#include "tether/triangulation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace tether {

namespace {

// Editable mesh used during construction. nbr[i] is the neighbor across the
// directed edge (v[i], v[(i+1)%3]).
struct MeshTri {
  std::array<int, 3> v{-1, -1, -1};
  std::array<int, 3> nbr{-1, -1, -1};
  bool alive = true;
};

class Mesh {
 public:
  std::vector<Point> pts;
  std::vector<MeshTri> tris;
  std::set<std::pair<int, int>> constrained;  // canonical (min, max) vertex pairs

  int num_real = 0;  // points below this index are input vertices; the rest is scaffolding

  static std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

  bool is_constrained(int a, int b) const { return constrained.count(key(a, b)) > 0; }

  int edge_slot(int t, int a, int b) const {
    for (int i = 0; i < 3; ++i) {
      if (tris[t].v[i] == a && tris[t].v[(i + 1) % 3] == b) return i;
    }
    return -1;
  }

  void rebuild_adjacency() {
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> incident;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!tris[t].alive) continue;
      tris[t].nbr = {-1, -1, -1};
      for (int i = 0; i < 3; ++i) {
        incident[key(tris[t].v[i], tris[t].v[(i + 1) % 3])].push_back({static_cast<int>(t), i});
      }
    }
    for (const auto& [edge, users] : incident) {
      if (users.size() == 2) {
        tris[users[0].first].nbr[users[0].second] = users[1].first;
        tris[users[1].first].nbr[users[1].second] = users[0].first;
      }
    }
  }

  bool contains(int t, const Point& p) const {
    const MeshTri& tri = tris[t];
    for (int i = 0; i < 3; ++i) {
      if (orient_sign(pts[tri.v[i]], pts[tri.v[(i + 1) % 3]], p) < 0) return false;
    }
    return true;
  }

  // Walk toward p from a hint triangle; falls back to a linear scan if the
  // walk fails to make progress.
  int locate(const Point& p, int hint) const {
    int t = hint;
    if (t < 0 || t >= static_cast<int>(tris.size()) || !tris[t].alive) t = first_alive();
    std::size_t steps = 0;
    const std::size_t limit = 4 * tris.size() + 16;
    while (steps++ < limit) {
      const MeshTri& tri = tris[t];
      int next = -1;
      for (int i = 0; i < 3; ++i) {
        if (orient_sign(pts[tri.v[i]], pts[tri.v[(i + 1) % 3]], p) < 0) {
          next = tri.nbr[i];
          break;
        }
      }
      if (next == -1) {
        if (contains(t, p)) return t;
        break;
      }
      t = next;
    }
    for (std::size_t i = 0; i < tris.size(); ++i) {
      if (tris[i].alive && contains(static_cast<int>(i), p)) return static_cast<int>(i);
    }
    throw Error(ErrorCode::kDegenerateInput, "point location failed during triangulation");
  }

  int first_alive() const {
    for (std::size_t i = 0; i < tris.size(); ++i) {
      if (tris[i].alive) return static_cast<int>(i);
    }
    throw Error(ErrorCode::kDegenerateInput, "empty mesh");
  }

  bool in_circumdisk(int t, const Point& p) const {
    const MeshTri& tri = tris[t];
    return incircle_sign(pts[tri.v[0]], pts[tri.v[1]], pts[tri.v[2]], p) > 0;
  }

  int add_tri(int a, int b, int c) {
    MeshTri tri;
    tri.v = {a, b, c};
    tris.push_back(tri);
    return static_cast<int>(tris.size()) - 1;
  }
};

// Bowyer-Watson insertion of point index pi (already appended to mesh.pts).
void insert_point(Mesh& mesh, int pi, int& hint) {
  const Point& p = mesh.pts[pi];
  const int t0 = mesh.locate(p, hint);

  // Cavity: connected set of triangles whose open circumdisk contains p.
  std::vector<int> cavity;
  std::set<int> in_cavity;
  std::vector<int> stack{t0};
  in_cavity.insert(t0);
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    cavity.push_back(t);
    for (int i = 0; i < 3; ++i) {
      const int n = mesh.tris[t].nbr[i];
      if (n == -1 || in_cavity.count(n)) continue;
      if (mesh.in_circumdisk(n, p)) {
        in_cavity.insert(n);
        stack.push_back(n);
      }
    }
  }

  // Directed boundary edges of the cavity, keyed by their start vertex: the
  // cavity is star-shaped around p, so they form a single cycle.
  std::map<int, std::pair<int, int>> loop;  // u -> (v, outside triangle)
  for (int t : cavity) {
    for (int i = 0; i < 3; ++i) {
      const int n = mesh.tris[t].nbr[i];
      if (n != -1 && in_cavity.count(n)) continue;
      loop[mesh.tris[t].v[i]] = {mesh.tris[t].v[(i + 1) % 3], n};
    }
  }
  for (int t : cavity) mesh.tris[t].alive = false;

  std::map<std::pair<int, int>, std::pair<int, int>> pending;  // edge -> (tri, slot)
  int last = -1;
  for (const auto& [u, vd] : loop) {
    const auto [v, outside] = vd;
    const int nt = mesh.add_tri(u, v, pi);
    last = nt;
    mesh.tris[nt].nbr[0] = outside;
    if (outside != -1) {
      const int slot = mesh.edge_slot(outside, v, u);
      mesh.tris[outside].nbr[slot] = nt;
    }
    // Stitch fan neighbors via the spoke edges (v, pi) and (pi, u).
    for (const auto& [ea, eb, slot] : {std::tuple{v, pi, 1}, std::tuple{pi, u, 2}}) {
      const auto k = Mesh::key(ea, eb);
      auto it = pending.find(k);
      if (it == pending.end()) {
        pending[k] = {nt, slot};
      } else {
        mesh.tris[nt].nbr[slot] = it->second.first;
        mesh.tris[it->second.first].nbr[it->second.second] = nt;
        pending.erase(it);
      }
    }
  }
  hint = last;
}

// Recursive retriangulation of the pseudo-polygon left behind by a constraint
// insertion. chain[0]..chain.back() is the base edge; interior vertices lie
// strictly on one side of it.
void triangulate_pseudo(Mesh& mesh, const std::vector<int>& chain, std::vector<int>& out) {
  if (chain.size() < 3) return;
  const int a = chain.front();
  const int b = chain.back();
  std::size_t c = 1;
  if (chain.size() > 3) {
    for (std::size_t j = 2; j + 1 < chain.size(); ++j) {
      Point pa = mesh.pts[a], pb = mesh.pts[b], pc = mesh.pts[chain[c]];
      if (orient_sign(pa, pb, pc) < 0) std::swap(pa, pb);
      if (incircle_sign(pa, pb, pc, mesh.pts[chain[j]]) > 0) c = j;
    }
  }
  int t;
  if (orient_sign(mesh.pts[a], mesh.pts[chain[c]], mesh.pts[b]) > 0) {
    t = mesh.add_tri(a, chain[c], b);
  } else {
    t = mesh.add_tri(a, b, chain[c]);
  }
  out.push_back(t);
  triangulate_pseudo(mesh, std::vector<int>(chain.begin(), chain.begin() + c + 1), out);
  triangulate_pseudo(mesh, std::vector<int>(chain.begin() + c, chain.end()), out);
}

bool edge_exists(const Mesh& mesh, int a, int b) {
  for (const MeshTri& t : mesh.tris) {
    if (!t.alive) continue;
    for (int i = 0; i < 3; ++i) {
      if ((t.v[i] == a && t.v[(i + 1) % 3] == b) || (t.v[i] == b && t.v[(i + 1) % 3] == a)) {
        return true;
      }
    }
  }
  return false;
}

bool strictly_between(const Mesh& mesh, int a, int b, int w) {
  const Point& pa = mesh.pts[a];
  const Point& pb = mesh.pts[b];
  const Point& pw = mesh.pts[w];
  if (orient_sign(pa, pb, pw) != 0) return false;
  return dot(pw - pa, pb - pa) > 0 && dot(pw - pb, pa - pb) > 0;
}

void insert_constraint(Mesh& mesh, int a, int b) {
  if (a == b) return;
  if (edge_exists(mesh, a, b)) {
    mesh.constrained.insert(Mesh::key(a, b));
    return;
  }

  // A vertex lying exactly on the segment splits the constraint.
  for (int w = 0; w < static_cast<int>(mesh.pts.size()); ++w) {
    if (w != a && w != b && strictly_between(mesh, a, b, w)) {
      insert_constraint(mesh, a, w);
      insert_constraint(mesh, w, b);
      return;
    }
  }

  const Point& pa = mesh.pts[a];
  const Point& pb = mesh.pts[b];

  // Entry triangle of the walk: the fan triangle at a whose opposite edge is
  // properly crossed by segment (a, b).
  int current = -1;
  int er = -1, el = -1;  // crossed edge, er right of a->b, el left
  for (std::size_t t = 0; t < mesh.tris.size() && current == -1; ++t) {
    if (!mesh.tris[t].alive) continue;
    for (int i = 0; i < 3; ++i) {
      if (mesh.tris[t].v[i] != a) continue;
      const int u = mesh.tris[t].v[(i + 1) % 3];
      const int v = mesh.tris[t].v[(i + 2) % 3];
      const int ou = orient_sign(pa, pb, mesh.pts[u]);
      const int ov = orient_sign(pa, pb, mesh.pts[v]);
      if (ou < 0 && ov > 0) {
        // Segment leaves through edge (u, v) if the crossing is ahead of a.
        if (orient_sign(mesh.pts[u], mesh.pts[v], pa) *
                orient_sign(mesh.pts[u], mesh.pts[v], pb) < 0) {
          current = static_cast<int>(t);
          er = u;
          el = v;
        }
      }
      break;
    }
  }
  if (current == -1) {
    throw Error(ErrorCode::kDegenerateInput, "constraint walk failed to start");
  }

  std::vector<int> crossed{current};
  std::vector<int> left_chain{el};
  std::vector<int> right_chain{er};

  while (true) {
    if (mesh.is_constrained(er, el)) {
      throw Error(ErrorCode::kDegenerateInput, "constraint crosses another constrained edge");
    }
    const int slot = mesh.edge_slot(current, er, el);
    const int next = mesh.tris[current].nbr[slot >= 0 ? slot : mesh.edge_slot(current, el, er)];
    if (next == -1) throw Error(ErrorCode::kDegenerateInput, "constraint walk left the mesh");
    int w = -1;
    for (int i = 0; i < 3; ++i) {
      const int cand = mesh.tris[next].v[i];
      if (cand != er && cand != el) w = cand;
    }
    crossed.push_back(next);
    if (w == b) break;
    if (strictly_between(mesh, a, b, w)) {
      // Should have been caught by the pre-pass; keep the mesh intact.
      throw Error(ErrorCode::kDegenerateInput, "constraint passes through a vertex");
    }
    const int ow = orient_sign(pa, pb, mesh.pts[w]);
    if (ow < 0) {
      right_chain.push_back(w);
      er = w;
    } else {
      left_chain.push_back(w);
      el = w;
    }
    current = next;
  }

  for (int t : crossed) mesh.tris[t].alive = false;

  std::vector<int> made;
  std::vector<int> upper{a};
  upper.insert(upper.end(), left_chain.begin(), left_chain.end());
  upper.push_back(b);
  std::vector<int> lower{a};
  lower.insert(lower.end(), right_chain.begin(), right_chain.end());
  lower.push_back(b);
  triangulate_pseudo(mesh, upper, made);
  triangulate_pseudo(mesh, lower, made);

  mesh.constrained.insert(Mesh::key(a, b));
  mesh.rebuild_adjacency();
}

}  // namespace

bool Triangulation::triangle_contains(int t, const Point& p) const {
  const Triangle& tri = triangles[t];
  for (int i = 0; i < 3; ++i) {
    if (orient_sign(vertices[tri.v[i]], vertices[tri.v[(i + 1) % 3]], p) < 0) return false;
  }
  return true;
}

int Triangulation::locate(const Point& p) const {
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    if (triangle_contains(static_cast<int>(t), p)) return static_cast<int>(t);
  }
  throw Error(ErrorCode::kPointNotInFreeSpace, "point not in any free triangle");
}

Point Triangulation::centroid(int t) const {
  const Triangle& tri = triangles[t];
  return {(vertices[tri.v[0]].x + vertices[tri.v[1]].x + vertices[tri.v[2]].x) / 3.0,
          (vertices[tri.v[0]].y + vertices[tri.v[1]].y + vertices[tri.v[2]].y) / 3.0};
}

bool Triangulation::has_vertex(int t, int v) const {
  const Triangle& tri = triangles[t];
  return tri.v[0] == v || tri.v[1] == v || tri.v[2] == v;
}

Triangulation triangulate(const ValidatedEnvironment& env) {
  // Canonical vertex order: lexicographic over deduplicated input corners.
  std::vector<Point> input;
  for (const Point& p : env.workspace().vertices) input.push_back(p);
  for (const Polygon& obs : env.obstacles()) {
    for (const Point& p : obs.vertices) input.push_back(p);
  }
  std::vector<Point> sorted = input;
  std::sort(sorted.begin(), sorted.end(),
            [](const Point& a, const Point& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 3) throw Error(ErrorCode::kDegenerateInput, "fewer than 3 distinct vertices");

  auto vertex_id = [&sorted](const Point& p) {
    const auto it = std::lower_bound(
        sorted.begin(), sorted.end(), p,
        [](const Point& a, const Point& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
    return static_cast<int>(it - sorted.begin());
  };

  Mesh mesh;
  mesh.pts = sorted;
  mesh.num_real = static_cast<int>(sorted.size());

  const Rect bb = bounding_box(env.workspace());
  const double ext = std::max(bb.width(), bb.height());
  const double cx = (bb.min_x + bb.max_x) / 2.0;
  const double cy = (bb.min_y + bb.max_y) / 2.0;
  const double r = 20.0 * ext + 1.0;
  const int s0 = static_cast<int>(mesh.pts.size());
  mesh.pts.push_back({cx - 2.0 * r, cy - r});
  mesh.pts.push_back({cx + 2.0 * r, cy - r});
  mesh.pts.push_back({cx, cy + 2.0 * r});
  mesh.add_tri(s0, s0 + 1, s0 + 2);

  int hint = 0;
  for (int i = 0; i < mesh.num_real; ++i) insert_point(mesh, i, hint);
  mesh.rebuild_adjacency();

  auto constrain_polygon = [&](const Polygon& poly) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Segment e = poly.edge(i);
      insert_constraint(mesh, vertex_id(e.p), vertex_id(e.q));
    }
  };
  constrain_polygon(env.workspace());
  for (const Polygon& obs : env.obstacles()) constrain_polygon(obs);

  // Keep triangles whose interior lies in the free workspace. Constrained
  // edges separate regions, so the centroid decides for the whole triangle.
  std::vector<std::array<int, 3>> kept;
  for (const MeshTri& t : mesh.tris) {
    if (!t.alive) continue;
    if (t.v[0] >= mesh.num_real || t.v[1] >= mesh.num_real || t.v[2] >= mesh.num_real) continue;
    const Point c{(mesh.pts[t.v[0]].x + mesh.pts[t.v[1]].x + mesh.pts[t.v[2]].x) / 3.0,
                  (mesh.pts[t.v[0]].y + mesh.pts[t.v[1]].y + mesh.pts[t.v[2]].y) / 3.0};
    if (point_in_polygon(c, env.workspace()) != Containment::kInside) continue;
    bool in_obstacle = false;
    for (const Polygon& obs : env.obstacles()) {
      if (point_in_polygon(c, obs) == Containment::kInside) {
        in_obstacle = true;
        break;
      }
    }
    if (!in_obstacle) kept.push_back(t.v);
  }
  if (kept.empty()) throw Error(ErrorCode::kDegenerateInput, "triangulation produced no free triangles");

  auto canonical = [](std::array<int, 3> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::sort(kept.begin(), kept.end(), [&](const std::array<int, 3>& x, const std::array<int, 3>& y) {
    return canonical(x) < canonical(y);
  });

  Triangulation out;
  out.vertices = sorted;
  out.triangles.reserve(kept.size());
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_users;
  for (const auto& v : kept) {
    Triangle tri;
    tri.v = v;
    if (orient_sign(out.vertices[v[0]], out.vertices[v[1]], out.vertices[v[2]]) < 0) {
      std::swap(tri.v[1], tri.v[2]);
    }
    const int id = static_cast<int>(out.triangles.size());
    out.triangles.push_back(tri);
    for (int i = 0; i < 3; ++i) {
      edge_users[Mesh::key(tri.v[i], tri.v[(i + 1) % 3])].push_back({id, i});
    }
  }
  for (const auto& [edge, users] : edge_users) {
    const bool constrained = mesh.constrained.count(edge) > 0;
    out.edges.push_back({edge.first, edge.second, constrained});
    if (!constrained && users.size() == 2) {
      out.triangles[users[0].first].nbr[users[0].second] = users[1].first;
      out.triangles[users[1].first].nbr[users[1].second] = users[0].first;
    }
  }

  // The free workspace must come out as a single adjacency component.
  std::vector<char> seen(out.triangles.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t reached = 0;
  while (!q.empty()) {
    const int t = q.front();
    q.pop();
    ++reached;
    for (int n : out.triangles[t].nbr) {
      if (n != -1 && !seen[n]) {
        seen[n] = 1;
        q.push(n);
      }
    }
  }
  if (reached != out.triangles.size()) {
    throw Error(ErrorCode::kConnectivityError, "free workspace is disconnected");
  }
  return out;
}

DualGraph dual_graph(const Triangulation& T, const Point& anchor,
                     const std::vector<Generator>& generators) {
  DualGraph dual;
  dual.rep.resize(T.triangles.size());
  dual.adj.resize(T.triangles.size());

  int anchor_tri;
  try {
    anchor_tri = T.locate(anchor);
  } catch (const Error&) {
    throw Error(ErrorCode::kAnchorNotInFreeSpace, "anchor is not inside the free workspace");
  }
  dual.anchor_triangle = anchor_tri;

  auto on_any_ray = [&generators](const Point& p) {
    for (const Generator& g : generators) {
      if (on_segment(p, g.clipped())) return true;
    }
    return false;
  };
  auto strictly_inside = [&T](int t, const Point& p) {
    const Triangle& tri = T.triangles[t];
    for (int i = 0; i < 3; ++i) {
      if (orient_sign(T.vertices[tri.v[i]], T.vertices[tri.v[(i + 1) % 3]], p) <= 0) return false;
    }
    return true;
  };

  for (std::size_t t = 0; t < T.triangles.size(); ++t) {
    Point rep = T.centroid(static_cast<int>(t));
    if (static_cast<int>(t) == anchor_tri) {
      rep = anchor;
      if (!strictly_inside(anchor_tri, rep)) {
        // Anchor sits on a triangulation edge: nudge it into the located triangle.
        const Point c = T.centroid(anchor_tri);
        const Point d = c - rep;
        const double n = norm(d);
        rep = rep + d * (kSnapEps / n);
        dual.anchor_snapped = true;
      }
    } else {
      double step = 10.0 * kSnapEps;
      for (int attempt = 0; attempt < 4 && on_any_ray(rep); ++attempt, step *= 2.0) {
        for (const Generator& g : generators) {
          if (!on_segment(rep, g.clipped())) continue;
          const Point dir = g.clip_end - g.origin;
          const Point perp = Point{-dir.y, dir.x} * (1.0 / norm(dir));
          const Point cand1 = rep + perp * step;
          const Point cand2 = rep - perp * step;
          if (strictly_inside(static_cast<int>(t), cand1)) {
            rep = cand1;
          } else if (strictly_inside(static_cast<int>(t), cand2)) {
            rep = cand2;
          } else {
            throw Error(ErrorCode::kDegenerateInput,
                        "triangle too thin to move representative off generator ray");
          }
          break;
        }
      }
      if (on_any_ray(rep)) {
        throw Error(ErrorCode::kDegenerateInput, "cannot move representative off generator ray");
      }
    }
    dual.rep[t] = rep;
    for (int n : T.triangles[t].nbr) {
      if (n != -1) dual.adj[t].push_back(n);
    }
    std::sort(dual.adj[t].begin(), dual.adj[t].end());
  }
  return dual;
}

Sleeve sleeve_between(const Triangulation& T, const DualGraph& dual,
                      const std::vector<int>& dual_path) {
  if (dual_path.empty()) throw Error(ErrorCode::kNotASleeve, "empty dual path");
  Sleeve s;
  for (int id : dual_path) {
    if (id < 0 || id >= static_cast<int>(T.triangles.size())) {
      throw Error(ErrorCode::kNotASleeve, "triangle id out of range");
    }
    if (!s.triangles.empty() && s.triangles.back() == id) continue;
    if (s.triangles.size() >= 2 && s.triangles[s.triangles.size() - 2] == id) {
      s.triangles.pop_back();  // collapse immediate backtrack (t, u, t)
      continue;
    }
    s.triangles.push_back(id);
  }
  for (std::size_t i = 1; i < s.triangles.size(); ++i) {
    const auto& adj = dual.adj[s.triangles[i - 1]];
    if (!std::binary_search(adj.begin(), adj.end(), s.triangles[i])) {
      throw Error(ErrorCode::kNotASleeve, "consecutive sleeve triangles not adjacent");
    }
  }
  return s;
}

namespace {

struct Portal {
  Point left;
  Point right;
};

}  // namespace

Polyline funnel_shortest(const Triangulation& T, const Sleeve& sleeve, const Point& a,
                         const Point& b) {
  if (sleeve.triangles.empty()) throw Error(ErrorCode::kSleeveInvalid, "empty sleeve");
  if (!T.triangle_contains(sleeve.triangles.front(), a)) {
    throw Error(ErrorCode::kSleeveInvalid, "start point not in first sleeve triangle");
  }
  if (!T.triangle_contains(sleeve.triangles.back(), b)) {
    throw Error(ErrorCode::kSleeveInvalid, "end point not in last sleeve triangle");
  }

  // Portal i is the shared edge crossed from triangle i to i+1, oriented so
  // that left/right match the direction of travel; a terminal (b, b) portal
  // closes the funnel.
  std::vector<Portal> portals;
  portals.push_back({a, a});
  for (std::size_t i = 0; i + 1 < sleeve.triangles.size(); ++i) {
    const int t = sleeve.triangles[i];
    const int u = sleeve.triangles[i + 1];
    int slot = -1;
    for (int e = 0; e < 3; ++e) {
      if (T.triangles[t].nbr[e] == u) slot = e;
    }
    if (slot == -1) throw Error(ErrorCode::kSleeveInvalid, "sleeve triangles not adjacent");
    const int vr = T.triangles[t].v[slot];
    const int vl = T.triangles[t].v[(slot + 1) % 3];
    portals.push_back({T.vertices[vl], T.vertices[vr]});
  }
  portals.push_back({b, b});

  Polyline path{a};
  Point apex = a, left = a, right = a;
  std::size_t apex_idx = 0, left_idx = 0, right_idx = 0;

  std::size_t i = 1;
  while (i < portals.size()) {
    const Point& pl = portals[i].left;
    const Point& pr = portals[i].right;

    if (orient_sign(apex, right, pr) >= 0) {
      if (apex == right || orient_sign(apex, left, pr) < 0) {
        right = pr;
        right_idx = i;
      } else {
        path.push_back(left);
        apex = left;
        apex_idx = left_idx;
        left = right = apex;
        left_idx = right_idx = apex_idx;
        i = apex_idx + 1;
        continue;
      }
    }

    if (orient_sign(apex, left, pl) <= 0) {
      if (apex == left || orient_sign(apex, right, pl) > 0) {
        left = pl;
        left_idx = i;
      } else {
        path.push_back(right);
        apex = right;
        apex_idx = right_idx;
        left = right = apex;
        left_idx = right_idx = apex_idx;
        i = apex_idx + 1;
        continue;
      }
    }
    ++i;
  }
  path.push_back(b);

  // Canonical form: no consecutive duplicates, no collinear pass-through vertices.
  Polyline out;
  for (const Point& p : path) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  Polyline cleaned;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k > 0 && k + 1 < out.size() && orient_sign(out[k - 1], out[k], out[k + 1]) == 0 &&
        dot(out[k] - out[k - 1], out[k + 1] - out[k]) > 0) {
      continue;
    }
    cleaned.push_back(out[k]);
  }
  return cleaned;
}

std::string dump_triangulation(const Triangulation& T, const DualGraph& dual) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "vertices %zu\n", T.vertices.size());
  out += buf;
  for (std::size_t i = 0; i < T.vertices.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "v %zu %.17g %.17g\n", i, T.vertices[i].x, T.vertices[i].y);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "edges %zu\n", T.edges.size());
  out += buf;
  for (const TriEdge& e : T.edges) {
    std::snprintf(buf, sizeof(buf), "e %d %d %d\n", e.a, e.b, e.constrained ? 1 : 0);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "triangles %zu\n", T.triangles.size());
  out += buf;
  for (std::size_t t = 0; t < T.triangles.size(); ++t) {
    const Triangle& tri = T.triangles[t];
    std::snprintf(buf, sizeof(buf), "t %zu %d %d %d rep %.17g %.17g\n", t, tri.v[0], tri.v[1],
                  tri.v[2], dual.rep[t].x, dual.rep[t].y);
    out += buf;
  }
  return out;
}

}  // namespace tether
