#include "tether/planner.hpp"

#include <algorithm>
#include <queue>

namespace tether {

std::vector<PlanResult> plan(const CoverComplex& c, const PlanQuery& q) {
  try {
    c.base().locate(q.goal);
  } catch (const Error&) {
    throw Error(ErrorCode::kGoalUnreachable, "goal is not in free space");
  }
  if (polyline_length(q.tether) > c.tether_length() + 1e-9) {
    throw Error(ErrorCode::kTetherInfeasible, "tether configuration longer than the tether");
  }

  LiftedPoint robot;
  try {
    robot = c.lift_path(q.tether);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kLiftExceedsTether || e.code() == ErrorCode::kDegenerateInput ||
        e.code() == ErrorCode::kPointNotInFreeSpace) {
      throw Error(ErrorCode::kTetherInfeasible, e.what());
    }
    throw;
  }

  const std::vector<LiftedPoint> goals = c.preimage(q.goal);
  if (goals.empty()) {
    throw Error(ErrorCode::kGoalUnreachable, "no tether-feasible class reaches the goal");
  }

  std::vector<PlanResult> results;
  results.reserve(goals.size());
  for (const LiftedPoint& g : goals) {
    PlanResult r;
    const SearchResult s = search_on_graph(c, SearchMode::kDual, robot, g);
    r.path = s.path;
    r.path_length = s.length;
    r.goal_signature = c.lifted_triangles()[g.copy].sig;
    auto taut = c.shortest_in_cover(c.anchor_point(), g);
    r.resulting_tether = std::move(taut.first);
    r.resulting_tether_length = taut.second;
    results.push_back(std::move(r));
  }
  std::sort(results.begin(), results.end(), [](const PlanResult& a, const PlanResult& b) {
    if (a.path_length != b.path_length) return a.path_length < b.path_length;
    return signature_less(a.goal_signature, b.goal_signature);
  });
  return results;
}

std::vector<std::pair<Signature, double>> rank_homotopy_classes(const CoverComplex& c,
                                                                const Point& p) {
  std::vector<std::pair<Signature, double>> out;
  for (const LiftedPoint& lp : c.preimage(p)) {
    const auto [path, len] = c.shortest_in_cover(c.anchor_point(), lp);
    out.push_back({c.point_class(lp), len});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return signature_less(a.first, b.first);
  });
  return out;
}

Polyline resulting_tether(const CoverComplex& c, const Polyline& tether, const Polyline& path) {
  if (tether.empty() || path.empty()) {
    throw Error(ErrorCode::kDegenerateInput, "empty tether or path");
  }
  if (distance(tether.back(), path.front()) > kSnapEps) {
    throw Error(ErrorCode::kDegenerateInput, "tether does not end where the path starts");
  }
  Polyline dragged = tether;
  dragged.insert(dragged.end(), path.begin() + 1, path.end());
  const LiftedPoint end = c.lift_path(dragged);
  return c.shortest_in_cover(c.anchor_point(), end).first;
}

namespace {

SearchResult primal_search(const CoverComplex& c, const LiftedPoint& from, const LiftedPoint& to) {
  const auto& vertices = c.lifted_vertices();
  const auto& edges = c.lifted_edges();
  const Triangulation& T = c.base();

  const int n = static_cast<int>(vertices.size());
  const int source = n;
  const int target = n + 1;
  std::vector<std::vector<std::pair<int, double>>> adj(n + 2);
  auto coords = [&](int v) { return T.vertices[vertices[v].base_vertex]; };
  for (const LiftedEdge& e : edges) {
    const double w = distance(coords(e.a), coords(e.b));
    adj[e.a].push_back({e.b, w});
    adj[e.b].push_back({e.a, w});
  }
  for (int corner : c.lifted_triangles()[from.copy].corners) {
    adj[source].push_back({corner, distance(from.coords, coords(corner))});
  }
  for (int corner : c.lifted_triangles()[to.copy].corners) {
    adj[corner].push_back({target, distance(to.coords, coords(corner))});
  }
  if (from.copy == to.copy) {
    adj[source].push_back({target, distance(from.coords, to.coords)});
  }

  std::vector<double> dist(n + 2, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n + 2, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == target) break;
    for (const auto& [v, w] : adj[u]) {
      const double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        pq.push({nd, v});
      }
    }
  }

  SearchResult r;
  r.length = dist[target];
  std::vector<int> chain;
  for (int v = target; v != -1; v = prev[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  for (int v : chain) {
    Point p;
    if (v == source) {
      p = from.coords;
    } else if (v == target) {
      p = to.coords;
    } else {
      p = coords(v);
    }
    if (r.path.empty() || !(r.path.back() == p)) r.path.push_back(p);
  }
  return r;
}

}  // namespace

SearchResult search_on_graph(const CoverComplex& c, SearchMode mode, const LiftedPoint& from,
                             const LiftedPoint& to) {
  if (from.copy < 0 || from.copy >= static_cast<int>(c.lifted_triangles().size()) ||
      to.copy < 0 || to.copy >= static_cast<int>(c.lifted_triangles().size())) {
    throw Error(ErrorCode::kElementNotInComplex, "search endpoint outside the complex");
  }
  if (mode == SearchMode::kDual) {
    auto [path, len] = c.shortest_in_cover(from, to);
    return {std::move(path), len};
  }
  return primal_search(c, from, to);
}

}  // namespace tether
