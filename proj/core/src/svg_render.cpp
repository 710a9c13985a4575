#include "tether/svg_render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tether {

namespace {

constexpr double kScale = 56.0;
constexpr double kPad = 16.0;

struct Frame {
  Rect world;
  double ox = 0.0;  // panel offset in svg units
  double oy = 0.0;

  double x(double wx) const { return ox + kPad + (wx - world.min_x) * kScale; }
  double y(double wy) const { return oy + kPad + (world.max_y - wy) * kScale; }
  double width() const { return 2 * kPad + world.width() * kScale; }
  double height() const { return 2 * kPad + world.height() * kScale; }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void polygon_element(std::ostringstream& out, const Frame& f, const Polygon& poly,
                     const char* style) {
  out << "<polygon style=\"" << style << "\" points=\"";
  for (const Point& p : poly.vertices) out << num(f.x(p.x)) << ',' << num(f.y(p.y)) << ' ';
  out << "\"/>\n";
}

void polyline_element(std::ostringstream& out, const Frame& f, const Polyline& line,
                      const char* style) {
  out << "<polyline style=\"" << style << "\" points=\"";
  for (const Point& p : line) out << num(f.x(p.x)) << ',' << num(f.y(p.y)) << ' ';
  out << "\"/>\n";
}

void circle_element(std::ostringstream& out, const Frame& f, const Point& p, double r,
                    const char* fill) {
  out << "<circle cx=\"" << num(f.x(p.x)) << "\" cy=\"" << num(f.y(p.y)) << "\" r=\"" << num(r)
      << "\" fill=\"" << fill << "\"/>\n";
}

void text_element(std::ostringstream& out, double x, double y, const std::string& msg) {
  out << "<text x=\"" << num(x) << "\" y=\"" << num(y)
      << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#333\">" << msg << "</text>\n";
}

void environment_body(std::ostringstream& out, const Frame& f, const ValidatedEnvironment& env,
                      bool faded) {
  polygon_element(out, f, env.workspace(),
                  faded ? "fill:#ffffff;stroke:#bbbbbb;stroke-width:1"
                        : "fill:#ffffff;stroke:#333333;stroke-width:1.5");
  for (const Polygon& obs : env.obstacles()) {
    polygon_element(out, f, obs,
                    faded ? "fill:#e8e8e8;stroke:#cccccc;stroke-width:0.8"
                          : "fill:#c9c9c9;stroke:#555555;stroke-width:1");
  }
  for (const Generator& g : env.generators()) {
    out << "<line x1=\"" << num(f.x(g.origin.x)) << "\" y1=\"" << num(f.y(g.origin.y))
        << "\" x2=\"" << num(f.x(g.clip_end.x)) << "\" y2=\"" << num(f.y(g.clip_end.y))
        << "\" style=\"stroke:#cc3333;stroke-width:1;stroke-dasharray:5,4\"/>\n";
  }
  circle_element(out, f, env.anchor(), 4.0, "#0066cc");
}

std::string document(const std::ostringstream& body, double w, double h) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
      << "width=\"" << num(w) << "\" height=\"" << num(h) << "\">\n"
      << body.str() << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_environment(const ValidatedEnvironment& env, const Point* robot) {
  Frame f{bounding_box(env.workspace())};
  std::ostringstream body;
  environment_body(body, f, env, false);
  if (robot != nullptr) circle_element(body, f, *robot, 4.0, "#119944");
  return document(body, f.width(), f.height());
}

std::string render_triangulation(const ValidatedEnvironment& env, const Triangulation& T,
                                 const DualGraph& dual) {
  Frame f{bounding_box(env.workspace())};
  std::ostringstream body;
  environment_body(body, f, env, false);
  for (const TriEdge& e : T.edges) {
    const Point& a = T.vertices[e.a];
    const Point& b = T.vertices[e.b];
    body << "<line x1=\"" << num(f.x(a.x)) << "\" y1=\"" << num(f.y(a.y)) << "\" x2=\""
         << num(f.x(b.x)) << "\" y2=\"" << num(f.y(b.y)) << "\" style=\""
         << (e.constrained ? "stroke:#333333;stroke-width:2" : "stroke:#88aadd;stroke-width:1")
         << "\"/>\n";
  }
  for (std::size_t t = 0; t < dual.adj.size(); ++t) {
    for (int n : dual.adj[t]) {
      if (n < static_cast<int>(t)) continue;
      body << "<line x1=\"" << num(f.x(dual.rep[t].x)) << "\" y1=\"" << num(f.y(dual.rep[t].y))
           << "\" x2=\"" << num(f.x(dual.rep[n].x)) << "\" y2=\"" << num(f.y(dual.rep[n].y))
           << "\" style=\"stroke:#cc3333;stroke-width:1\"/>\n";
    }
  }
  for (const Point& rep : dual.rep) circle_element(body, f, rep, 2.5, "#cc3333");
  return document(body, f.width(), f.height());
}

std::string render_layers(const ValidatedEnvironment& env, const CoverComplex& complex) {
  const auto layer_list = complex.layers();
  const Frame proto{bounding_box(env.workspace())};
  const int columns = std::max(1, static_cast<int>(std::ceil(std::sqrt(double(layer_list.size())))));
  const double cell_w = proto.width();
  const double cell_h = proto.height() + 18.0;

  std::ostringstream body;
  int idx = 0;
  for (const auto& [sig, tris] : layer_list) {
    Frame f{proto.world};
    f.ox = (idx % columns) * cell_w;
    f.oy = (idx / columns) * cell_h;
    environment_body(body, f, env, true);
    for (int t : tris) {
      const Triangle& tri = complex.base().triangles[t];
      Polygon ptri{{complex.base().vertices[tri.v[0]], complex.base().vertices[tri.v[1]],
                    complex.base().vertices[tri.v[2]]}};
      polygon_element(body, f, ptri, "fill:#7fb2e5;stroke:#3366aa;stroke-width:0.8");
    }
    const std::string label = sig.empty() ? "identity" : to_string(sig);
    text_element(body, f.ox + kPad, f.oy + cell_h - 4.0, label);
    ++idx;
  }
  const int rows = (idx + columns - 1) / columns;
  return document(body, columns * cell_w, std::max(1, rows) * cell_h);
}

std::string render_plan(const ValidatedEnvironment& env, const PlanQuery& query,
                        const PlanResult& result, int rank) {
  Frame f{bounding_box(env.workspace())};
  std::ostringstream body;
  environment_body(body, f, env, false);
  polyline_element(body, f, query.tether, "fill:none;stroke:#999999;stroke-width:1;stroke-dasharray:3,3");
  polyline_element(body, f, result.resulting_tether, "fill:none;stroke:#111111;stroke-width:2");
  polyline_element(body, f, result.path, "fill:none;stroke:#0066cc;stroke-width:2");
  if (!query.tether.empty()) circle_element(body, f, query.tether.back(), 4.0, "#119944");
  circle_element(body, f, query.goal, 4.0, "#cc8800");
  char caption[160];
  std::snprintf(caption, sizeof(caption), "#%d class=%s len=%.4f tether=%.4f", rank,
                result.goal_signature.empty() ? "identity" : to_string(result.goal_signature).c_str(),
                result.path_length, result.resulting_tether_length);
  text_element(body, kPad, f.height() + 12.0, caption);
  return document(body, f.width(), f.height() + 18.0);
}

}  // namespace tether
