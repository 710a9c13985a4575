#include "tether/geometry.hpp"

#include <algorithm>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace tether {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kOverlappingObstacles: return "OVERLAPPING_OBSTACLES";
    case ErrorCode::kAnchorInObstacle: return "ANCHOR_IN_OBSTACLE";
    case ErrorCode::kAnchorOutsideWorkspace: return "ANCHOR_OUTSIDE_WORKSPACE";
    case ErrorCode::kObstacleOutsideWorkspace: return "OBSTACLE_OUTSIDE_WORKSPACE";
    case ErrorCode::kNonpositiveTether: return "NONPOSITIVE_TETHER";
    case ErrorCode::kGeneratorConstructionFailed: return "GENERATOR_CONSTRUCTION_FAILED";
    case ErrorCode::kIndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::kVertexOnGenerator: return "VERTEX_ON_GENERATOR";
    case ErrorCode::kConnectivityError: return "CONNECTIVITY_ERROR";
    case ErrorCode::kDegenerateInput: return "DEGENERATE_INPUT";
    case ErrorCode::kPointNotInFreeSpace: return "POINT_NOT_IN_FREE_SPACE";
    case ErrorCode::kSleeveInvalid: return "SLEEVE_INVALID";
    case ErrorCode::kNotASleeve: return "NOT_A_SLEEVE";
    case ErrorCode::kAnchorNotInFreeSpace: return "ANCHOR_NOT_IN_FREE_SPACE";
    case ErrorCode::kElementNotInComplex: return "ELEMENT_NOT_IN_COMPLEX";
    case ErrorCode::kLiftExceedsTether: return "LIFT_EXCEEDS_TETHER";
    case ErrorCode::kTetherInfeasible: return "TETHER_INFEASIBLE";
    case ErrorCode::kGoalUnreachable: return "GOAL_UNREACHABLE";
    case ErrorCode::kAnchorCellBlocked: return "ANCHOR_CELL_BLOCKED";
    case ErrorCode::kIoError: return "IO_ERROR";
  }
  return "UNKNOWN_ERROR";
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Shewchuk-style static filter constants. kMacheps is the rounding unit 2^-53.
constexpr double kMacheps = std::numeric_limits<double>::epsilon() / 2.0;
const double kOrientErrBound = (3.0 + 16.0 * kMacheps) * kMacheps;
const double kIncircleErrBound = (10.0 + 96.0 * kMacheps) * kMacheps;

int orient_sign_exact(const Point& p, const Point& q, const Point& r) {
  const Rational px(p.x), py(p.y), qx(q.x), qy(q.y), rx(r.x), ry(r.y);
  const Rational det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
  return det.sign();
}

int incircle_sign_exact(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Rational adx = Rational(a.x) - Rational(d.x);
  const Rational ady = Rational(a.y) - Rational(d.y);
  const Rational bdx = Rational(b.x) - Rational(d.x);
  const Rational bdy = Rational(b.y) - Rational(d.y);
  const Rational cdx = Rational(c.x) - Rational(d.x);
  const Rational cdy = Rational(c.y) - Rational(d.y);
  const Rational alift = adx * adx + ady * ady;
  const Rational blift = bdx * bdx + bdy * bdy;
  const Rational clift = cdx * cdx + cdy * cdy;
  const Rational det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                       clift * (adx * bdy - bdx * ady);
  return det.sign();
}

}  // namespace

int orient_sign(const Point& p, const Point& q, const Point& r) {
  const double detleft = (q.x - p.x) * (r.y - p.y);
  const double detright = (q.y - p.y) * (r.x - p.x);
  const double det = detleft - detright;

  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = -detleft - detright;
  } else {
    return detright > 0.0 ? -1 : (detright < 0.0 ? 1 : 0);
  }

  const double errbound = kOrientErrBound * detsum;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return orient_sign_exact(p, q, r);
}

Orientation orient(const Point& p, const Point& q, const Point& r) {
  const int s = orient_sign(p, q, r);
  if (s > 0) return Orientation::kCCW;
  if (s < 0) return Orientation::kCW;
  return Orientation::kCollinear;
}

int incircle_sign(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;

  const double det =
      alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double errbound = kIncircleErrBound * permanent;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return incircle_sign_exact(a, b, c, d);
}

bool on_segment(const Point& p, const Segment& s) {
  if (orient_sign(s.p, s.q, p) != 0) return false;
  return std::min(s.p.x, s.q.x) <= p.x && p.x <= std::max(s.p.x, s.q.x) &&
         std::min(s.p.y, s.q.y) <= p.y && p.y <= std::max(s.p.y, s.q.y);
}

namespace {

// Intersection point of the supporting lines, assuming a proper crossing.
Point line_crossing_point(const Segment& s1, const Segment& s2) {
  const Point d1 = s1.q - s1.p;
  const Point d2 = s2.q - s2.p;
  const double denom = cross(d1, d2);
  const double t = cross(s2.p - s1.p, d2) / denom;
  return s1.p + d1 * t;
}

}  // namespace

Intersection segment_intersection(const Segment& s1, const Segment& s2) {
  const int o1 = orient_sign(s1.p, s1.q, s2.p);
  const int o2 = orient_sign(s1.p, s1.q, s2.q);
  const int o3 = orient_sign(s2.p, s2.q, s1.p);
  const int o4 = orient_sign(s2.p, s2.q, s1.q);

  if (o1 == 0 && o2 == 0) {
    // Collinear segments: compare extents along the dominant axis.
    const bool horiz = std::abs(s1.q.x - s1.p.x) >= std::abs(s1.q.y - s1.p.y);
    auto key = [horiz](const Point& p) { return horiz ? p.x : p.y; };
    double a0 = key(s1.p), a1 = key(s1.q);
    double b0 = key(s2.p), b1 = key(s2.q);
    Point alo = s1.p, ahi = s1.q, blo = s2.p, bhi = s2.q;
    if (a0 > a1) { std::swap(a0, a1); std::swap(alo, ahi); }
    if (b0 > b1) { std::swap(b0, b1); std::swap(blo, bhi); }
    const double lo = std::max(a0, b0);
    const double hi = std::min(a1, b1);
    if (lo > hi) return {IntersectKind::kNone, {}};
    if (lo == hi) {
      const Point touch = (a0 >= b0) ? alo : blo;
      return {IntersectKind::kTouching, touch};
    }
    return {IntersectKind::kOverlap, {}};
  }

  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    return {IntersectKind::kProper, line_crossing_point(s1, s2)};
  }

  if (o1 == 0 && on_segment(s2.p, s1)) return {IntersectKind::kTouching, s2.p};
  if (o2 == 0 && on_segment(s2.q, s1)) return {IntersectKind::kTouching, s2.q};
  if (o3 == 0 && on_segment(s1.p, s2)) return {IntersectKind::kTouching, s1.p};
  if (o4 == 0 && on_segment(s1.q, s2)) return {IntersectKind::kTouching, s1.q};
  return {IntersectKind::kNone, {}};
}

double polyline_length(const Polyline& p) {
  double total = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) total += distance(p[i - 1], p[i]);
  return total;
}

Containment point_in_polygon(const Point& p, const Polygon& poly) {
  bool inside = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    if (on_segment(p, e)) return Containment::kBoundary;
    if ((e.p.y > p.y) != (e.q.y > p.y)) {
      const int o = orient_sign(e.p, e.q, p);
      if (e.q.y > e.p.y ? o > 0 : o < 0) inside = !inside;
    }
  }
  return inside ? Containment::kInside : Containment::kOutside;
}

double polygon_area(const Polygon& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    a += cross(e.p, e.q);
  }
  return a / 2.0;
}

void validate_simple_polygon(const Polygon& poly, const char* what) {
  const std::size_t n = poly.size();
  if (n < 3) throw Error(ErrorCode::kDegenerateInput, std::string(what) + " has fewer than 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (poly.vertices[i] == poly.vertices[(i + 1) % n]) {
      throw Error(ErrorCode::kDegenerateInput, std::string(what) + " repeats consecutive vertices");
    }
  }
  if (polygon_area(poly) == 0.0) {
    throw Error(ErrorCode::kDegenerateInput, std::string(what) + " has zero area");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Intersection x = segment_intersection(poly.edge(i), poly.edge(j));
      if (adjacent) {
        if (x.kind == IntersectKind::kProper || x.kind == IntersectKind::kOverlap) {
          throw Error(ErrorCode::kDegenerateInput, std::string(what) + " self-intersects");
        }
      } else if (x.kind != IntersectKind::kNone) {
        throw Error(ErrorCode::kDegenerateInput, std::string(what) + " self-intersects");
      }
    }
  }
}

Polygon normalized_ccw(Polygon poly) {
  if (polygon_area(poly) < 0.0) std::reverse(poly.vertices.begin(), poly.vertices.end());
  return poly;
}

Rect bounding_box(const Polygon& poly) {
  Rect r{poly.vertices[0].x, poly.vertices[0].y, poly.vertices[0].x, poly.vertices[0].y};
  for (const Point& p : poly.vertices) {
    r.min_x = std::min(r.min_x, p.x);
    r.min_y = std::min(r.min_y, p.y);
    r.max_x = std::max(r.max_x, p.x);
    r.max_y = std::max(r.max_y, p.y);
  }
  return r;
}

}  // namespace tether
