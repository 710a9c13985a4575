#include "tether/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>

#include <nlohmann/json.hpp>

namespace tether {

namespace {

bool polygons_touch(const Polygon& a, const Polygon& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segment_intersection(a.edge(i), b.edge(j)).kind != IntersectKind::kNone) return true;
    }
  }
  return false;
}

bool polygon_inside(const Polygon& inner, const Polygon& outer) {
  // No proper boundary crossing plus one vertex inside is enough for simple polygons.
  for (std::size_t i = 0; i < inner.size(); ++i) {
    for (std::size_t j = 0; j < outer.size(); ++j) {
      const Intersection x = segment_intersection(inner.edge(i), outer.edge(j));
      if (x.kind == IntersectKind::kProper) return false;
    }
  }
  for (const Point& v : inner.vertices) {
    if (point_in_polygon(v, outer) == Containment::kOutside) return false;
  }
  for (const Point& v : outer.vertices) {
    if (point_in_polygon(v, inner) == Containment::kInside) return false;
  }
  return true;
}

// Representative point strictly inside the polygon: the centroid when it
// lands inside, otherwise the midpoint of a vertical chord.
Point interior_point(const Polygon& poly) {
  Point c{0, 0};
  double area6 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    const double w = cross(e.p, e.q);
    c.x += (e.p.x + e.q.x) * w;
    c.y += (e.p.y + e.q.y) * w;
    area6 += w;
  }
  c.x /= 3.0 * area6;
  c.y /= 3.0 * area6;
  if (point_in_polygon(c, poly) == Containment::kInside) return c;

  const Rect bb = bounding_box(poly);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double x = bb.min_x + bb.width() * (0.5 + (attempt % 2 ? 1 : -1) * attempt * 7e-3);
    bool clean = true;
    for (const Point& v : poly.vertices) {
      if (v.x == x) { clean = false; break; }
    }
    if (!clean) continue;
    std::vector<double> ys;
    const Segment chord{{x, bb.min_y - 1.0}, {x, bb.max_y + 1.0}};
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Intersection ix = segment_intersection(poly.edge(i), chord);
      if (ix.kind == IntersectKind::kProper) ys.push_back(ix.point.y);
    }
    if (ys.size() < 2) continue;
    std::sort(ys.begin(), ys.end());
    const Point mid{x, (ys[0] + ys[1]) / 2.0};
    if (point_in_polygon(mid, poly) == Containment::kInside) return mid;
  }
  throw Error(ErrorCode::kDegenerateInput, "cannot find interior point of polygon");
}

Point clip_ray_to_rect(const Point& origin, const Point& dir, const Rect& r) {
  double t = std::numeric_limits<double>::infinity();
  if (dir.x > 0) t = std::min(t, (r.max_x - origin.x) / dir.x);
  if (dir.x < 0) t = std::min(t, (r.min_x - origin.x) / dir.x);
  if (dir.y > 0) t = std::min(t, (r.max_y - origin.y) / dir.y);
  if (dir.y < 0) t = std::min(t, (r.min_y - origin.y) / dir.y);
  return origin + dir * t;
}

Rect inflated_workspace_box(const Environment& env) {
  Rect bb = bounding_box(env.workspace);
  bb.min_x -= 1.0;
  bb.min_y -= 1.0;
  bb.max_x += 1.0;
  bb.max_y += 1.0;
  return bb;
}

// A generator ray must not meet previously placed rays, pass through any
// polygon vertex, or hit the anchor; vertex incidences would make signature
// bookkeeping ambiguous at triangulation vertices.
bool ray_placement_ok(const Generator& g, const std::vector<Generator>& placed,
                      const Environment& env) {
  const Segment seg = g.clipped();
  for (const Generator& other : placed) {
    if (segment_intersection(seg, other.clipped()).kind != IntersectKind::kNone) return false;
  }
  auto vertex_on = [&seg](const Polygon& poly) {
    for (const Point& v : poly.vertices) {
      if (on_segment(v, seg)) return true;
    }
    return false;
  };
  if (vertex_on(env.workspace)) return false;
  for (const Polygon& obs : env.obstacles) {
    if (vertex_on(obs)) return false;
  }
  if (on_segment(env.anchor, seg)) return false;
  return true;
}

}  // namespace

std::vector<int> classify_homotopy_relevant(const Environment& env) {
  std::vector<int> relevant;
  for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
    if (!polygons_touch(env.obstacles[i], env.workspace)) relevant.push_back(static_cast<int>(i));
  }
  return relevant;
}

std::vector<Generator> compute_generators(const Environment& env, const std::vector<int>& relevant) {
  const Rect bb = inflated_workspace_box(env);
  std::vector<Generator> gens;
  gens.reserve(relevant.size());
  for (int obstacle_id : relevant) {
    const Polygon& obs = env.obstacles[obstacle_id];
    const Point base = interior_point(obs);
    const Rect obb = bounding_box(obs);

    // Rotation alone cannot help when the origin itself sits on an earlier
    // ray (stacked symmetric obstacles), so the origin gets bounded jitter too.
    std::vector<Point> origins{base};
    for (int k = 1; k <= 4; ++k) {
      const double dx = obb.width() * 0.03 * k;
      const double dy = obb.height() * 0.017 * k;
      for (const Point& cand : {base + Point{dx, dy}, base + Point{-dx, dy},
                                base + Point{dx, -dy}, base + Point{-dx, -dy}}) {
        if (point_in_polygon(cand, obs) == Containment::kInside) origins.push_back(cand);
      }
    }

    bool placed = false;
    for (const Point& origin : origins) {
      for (int attempt = 0; attempt < 72 && !placed; ++attempt) {
        const double angle = attempt * 5.0 * std::numbers::pi / 180.0;
        const Point dir{-std::sin(angle), std::cos(angle)};  // (0,1) rotated CCW
        Generator g{obstacle_id, origin, dir, clip_ray_to_rect(origin, dir, bb)};
        if (ray_placement_ok(g, gens, env)) {
          gens.push_back(g);
          placed = true;
        }
      }
      if (placed) break;
    }
    if (!placed) {
      throw Error(ErrorCode::kGeneratorConstructionFailed,
                  "no disjoint ray direction found for obstacle " + std::to_string(obstacle_id));
    }
  }
  return gens;
}

ValidatedEnvironment validate(Environment env) {
  env.workspace = normalized_ccw(env.workspace);
  validate_simple_polygon(env.workspace, "workspace");
  for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
    env.obstacles[i] = normalized_ccw(env.obstacles[i]);
    validate_simple_polygon(env.obstacles[i], "obstacle");
  }
  if (!(env.tether_length > 0.0)) {
    throw Error(ErrorCode::kNonpositiveTether, "tether_length must be positive");
  }

  for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
    for (std::size_t j = i + 1; j < env.obstacles.size(); ++j) {
      if (polygons_touch(env.obstacles[i], env.obstacles[j]) ||
          point_in_polygon(env.obstacles[i].vertices[0], env.obstacles[j]) == Containment::kInside ||
          point_in_polygon(env.obstacles[j].vertices[0], env.obstacles[i]) == Containment::kInside) {
        throw Error(ErrorCode::kOverlappingObstacles,
                    "obstacles " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
    if (!polygon_inside(env.obstacles[i], env.workspace)) {
      throw Error(ErrorCode::kObstacleOutsideWorkspace,
                  "obstacle " + std::to_string(i) + " leaves the workspace");
    }
  }
  if (point_in_polygon(env.anchor, env.workspace) == Containment::kOutside) {
    throw Error(ErrorCode::kAnchorOutsideWorkspace, "anchor outside workspace");
  }
  for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
    if (point_in_polygon(env.anchor, env.obstacles[i]) != Containment::kOutside) {
      throw Error(ErrorCode::kAnchorInObstacle, "anchor inside obstacle " + std::to_string(i));
    }
  }

  std::vector<int> relevant = classify_homotopy_relevant(env);

  std::vector<Generator> gens;
  if (!env.explicit_generators.empty()) {
    if (env.explicit_generators.size() != relevant.size()) {
      throw Error(ErrorCode::kGeneratorConstructionFailed,
                  "expected one generator per homotopy-relevant obstacle");
    }
    const Rect bb = inflated_workspace_box(env);
    std::vector<bool> seen(env.obstacles.size(), false);
    for (Generator g : env.explicit_generators) {
      if (g.obstacle_id < 0 || g.obstacle_id >= static_cast<int>(env.obstacles.size()) ||
          std::find(relevant.begin(), relevant.end(), g.obstacle_id) == relevant.end()) {
        throw Error(ErrorCode::kGeneratorConstructionFailed, "generator on irrelevant obstacle");
      }
      if (seen[g.obstacle_id]) {
        throw Error(ErrorCode::kGeneratorConstructionFailed, "duplicate generator obstacle");
      }
      seen[g.obstacle_id] = true;
      const double n = norm(g.direction);
      if (n == 0.0) throw Error(ErrorCode::kGeneratorConstructionFailed, "zero generator direction");
      g.direction = g.direction * (1.0 / n);
      if (point_in_polygon(g.origin, env.obstacles[g.obstacle_id]) != Containment::kInside) {
        throw Error(ErrorCode::kGeneratorConstructionFailed, "generator origin not inside obstacle");
      }
      g.clip_end = clip_ray_to_rect(g.origin, g.direction, bb);
      if (!ray_placement_ok(g, gens, env)) {
        throw Error(ErrorCode::kGeneratorConstructionFailed, "explicit generator rays intersect");
      }
      gens.push_back(g);
    }
    std::sort(gens.begin(), gens.end(),
              [](const Generator& a, const Generator& b) { return a.obstacle_id < b.obstacle_id; });
  } else {
    gens = compute_generators(env, relevant);
  }

  return ValidatedEnvironment(std::move(env), std::move(relevant), std::move(gens));
}

namespace {

using json = nlohmann::ordered_json;

Point parse_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::kParseError, std::string(what) + " must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Polygon parse_polygon(const json& j, const char* what) {
  if (!j.is_array() || j.size() < 3) {
    throw Error(ErrorCode::kParseError, std::string(what) + " needs at least 3 vertices");
  }
  Polygon poly;
  for (const json& v : j) poly.vertices.push_back(parse_point(v, what));
  return poly;
}

}  // namespace

Environment load_environment(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "document must be an object");
  if (!doc.contains("workspace")) throw Error(ErrorCode::kParseError, "missing workspace");
  if (!doc.contains("anchor")) throw Error(ErrorCode::kParseError, "missing anchor");
  if (!doc.contains("tether_length")) throw Error(ErrorCode::kParseError, "missing tether_length");

  Environment env;
  env.workspace = parse_polygon(doc["workspace"], "workspace");
  if (doc.contains("obstacles")) {
    if (!doc["obstacles"].is_array()) throw Error(ErrorCode::kParseError, "obstacles must be an array");
    for (const json& o : doc["obstacles"]) env.obstacles.push_back(parse_polygon(o, "obstacle"));
  }
  env.anchor = parse_point(doc["anchor"], "anchor");
  if (!doc["tether_length"].is_number()) throw Error(ErrorCode::kParseError, "tether_length must be a number");
  env.tether_length = doc["tether_length"].get<double>();
  if (doc.contains("generators")) {
    for (const json& g : doc["generators"]) {
      if (!g.is_object() || !g.contains("obstacle") || !g.contains("origin") || !g.contains("direction")) {
        throw Error(ErrorCode::kParseError, "generator needs obstacle, origin, direction");
      }
      Generator gen;
      gen.obstacle_id = g["obstacle"].get<int>();
      gen.origin = parse_point(g["origin"], "generator origin");
      gen.direction = parse_point(g["direction"], "generator direction");
      env.explicit_generators.push_back(gen);
    }
  }
  return env;
}

std::string serialize(const Environment& env) {
  json doc;
  auto point_json = [](const Point& p) { return json::array({p.x, p.y}); };
  auto polygon_json = [&](const Polygon& poly) {
    json arr = json::array();
    for (const Point& p : poly.vertices) arr.push_back(point_json(p));
    return arr;
  };
  doc["workspace"] = polygon_json(env.workspace);
  doc["obstacles"] = json::array();
  for (const Polygon& o : env.obstacles) doc["obstacles"].push_back(polygon_json(o));
  doc["anchor"] = point_json(env.anchor);
  doc["tether_length"] = env.tether_length;
  if (!env.explicit_generators.empty()) {
    doc["generators"] = json::array();
    for (const Generator& g : env.explicit_generators) {
      json gj;
      gj["obstacle"] = g.obstacle_id;
      gj["origin"] = point_json(g.origin);
      gj["direction"] = point_json(g.direction);
      doc["generators"].push_back(gj);
    }
  }
  return doc.dump();
}

std::string environment_hash(const Environment& env) {
  const std::string text = serialize(env);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tether
