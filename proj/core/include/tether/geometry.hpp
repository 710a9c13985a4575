#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tether/error.hpp"

namespace tether {

// Tolerance for snapping / point equality in I/O paths. Predicates never use it.
inline constexpr double kSnapEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(const Point& a, double s) { return {a.x * s, a.y * s}; }
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(const Point& a, const Point& b) { return norm(b - a); }

struct Segment {
  Point p;
  Point q;
};

using Polyline = std::vector<Point>;

// Simple polygon, vertices in counterclockwise order, implicitly closed.
struct Polygon {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  Segment edge(std::size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }
};

enum class Orientation { kCCW, kCW, kCollinear };

// Exact sign of the signed area of triangle pqr: +1 CCW, -1 CW, 0 collinear.
// Filtered double evaluation with an exact rational fallback.
int orient_sign(const Point& p, const Point& q, const Point& r);
Orientation orient(const Point& p, const Point& q, const Point& r);

// Exact sign of the incircle determinant: +1 when d is strictly inside the
// circumcircle of CCW triangle abc, -1 outside, 0 cocircular.
int incircle_sign(const Point& a, const Point& b, const Point& c, const Point& d);

// True when p lies on the closed segment s (exact).
bool on_segment(const Point& p, const Segment& s);

enum class IntersectKind { kNone, kProper, kTouching, kOverlap };

struct Intersection {
  IntersectKind kind = IntersectKind::kNone;
  Point point;  // valid for kProper and kTouching
};

// Classifies the intersection of two segments. kProper means the interiors
// cross; kTouching is any other 0-dimensional contact; kOverlap a shared
// collinear piece of positive length. Classification is exact; the reported
// point of a proper crossing is computed in double precision.
Intersection segment_intersection(const Segment& s1, const Segment& s2);

double polyline_length(const Polyline& p);

enum class Containment { kInside, kOutside, kBoundary };

Containment point_in_polygon(const Point& p, const Polygon& poly);

// Signed area (positive for CCW order).
double polygon_area(const Polygon& poly);

// Structural checks: >= 3 vertices, consecutive vertices distinct, no
// self-intersection, nonzero area. Throws kDegenerateInput.
void validate_simple_polygon(const Polygon& poly, const char* what);

// Returns the polygon with vertices in CCW order (reverses CW input).
Polygon normalized_ccw(Polygon poly);

struct Rect {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

Rect bounding_box(const Polygon& poly);

}  // namespace tether
