#include "tether/complex_io.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tether/triangulation.hpp"

namespace tether {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sig_token(const Signature& s) { return s.empty() ? "-" : to_string(s); }

}  // namespace

std::string dump_complex(const CoverComplex& complex, const std::string& env_hash) {
  std::ostringstream out;
  out << "tetherplan-complex 1\n";
  out << "env " << env_hash << "\n";
  out << "length " << fmt_double(complex.tether_length()) << "\n";
  out << "simplices " << complex.lifted_vertices().size() << ' ' << complex.lifted_edges().size()
      << ' ' << complex.lifted_triangles().size() << "\n";

  const auto layers = complex.layers();
  out << "layers " << layers.size() << "\n";
  for (const auto& [sig, tris] : layers) {
    out << "layer " << sig_token(sig) << " :";
    for (int t : tris) out << ' ' << t;
    out << "\n";
  }

  out << "copies " << complex.lifted_triangles().size() << "\n";
  for (const LiftedTriangle& t : complex.lifted_triangles()) {
    out << "copy " << t.base_triangle << ' ' << t.parent << ' ' << sig_token(t.sig) << "\n";
  }
  out << "end\n";
  return out.str();
}

CoverComplex load_complex(const std::string& text, const ValidatedEnvironment& env,
                          double effective_length) {
  std::istringstream in(text);
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "tetherplan-complex" || version != 1) {
    throw Error(ErrorCode::kParseError, "not a complex dump");
  }
  std::string hash;
  if (!(in >> word >> hash) || word != "env") throw Error(ErrorCode::kParseError, "missing env hash");
  double length = 0.0;
  if (!(in >> word >> length) || word != "length") {
    throw Error(ErrorCode::kParseError, "missing length");
  }
  if (length != effective_length) {
    throw Error(ErrorCode::kParseError, "dump built for a different tether length");
  }
  std::size_t nv = 0, ne = 0, nf = 0;
  if (!(in >> word >> nv >> ne >> nf) || word != "simplices") {
    throw Error(ErrorCode::kParseError, "missing simplex counts");
  }
  std::size_t layer_count = 0;
  if (!(in >> word >> layer_count) || word != "layers") {
    throw Error(ErrorCode::kParseError, "missing layers");
  }
  in.ignore();
  for (std::size_t i = 0; i < layer_count; ++i) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("layer ", 0) != 0) {
      throw Error(ErrorCode::kParseError, "bad layer line");
    }
  }
  std::size_t copy_count = 0;
  if (!(in >> word >> copy_count) || word != "copies") {
    throw Error(ErrorCode::kParseError, "missing copies");
  }
  in.ignore();
  std::vector<CopyRecord> records;
  records.reserve(copy_count);
  const int m = env.num_generators();
  for (std::size_t i = 0; i < copy_count; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "truncated copy list");
    std::istringstream ls(line);
    CopyRecord rec;
    std::string tag;
    if (!(ls >> tag >> rec.base_triangle >> rec.parent) || tag != "copy") {
      throw Error(ErrorCode::kParseError, "bad copy line");
    }
    std::string rest;
    std::getline(ls, rest);
    rec.sig = signature_from_string(rest, m);
    records.push_back(std::move(rec));
  }

  Triangulation T = triangulate(env);
  DualGraph dual = dual_graph(T, env.anchor(), env.generators());
  CoverComplex complex = rebuild_complex(std::move(T), std::move(dual), effective_length,
                                         env.generators(), records);
  if (complex.lifted_vertices().size() != nv || complex.lifted_edges().size() != ne ||
      complex.lifted_triangles().size() != nf) {
    throw Error(ErrorCode::kParseError, "dump does not match the environment");
  }
  return complex;
}

std::string format_build_stats(const BuildStats& stats) {
  std::ostringstream out;
  out << "lifted_vertices " << stats.vertices << "\n";
  out << "lifted_edges " << stats.edges << "\n";
  out << "lifted_triangles " << stats.triangles << "\n";
  out << "layer_count " << stats.layer_count << "\n";
  out << "build_time_s " << fmt_double(stats.build_time_s) << "\n";
  out << "anchor_snapped " << (stats.anchor_snapped ? 1 : 0) << "\n";
  return out.str();
}

namespace {

using json = nlohmann::ordered_json;

json polyline_json(const Polyline& line) {
  json arr = json::array();
  for (const Point& p : line) arr.push_back(json::array({p.x, p.y}));
  return arr;
}

Polyline parse_polyline(const json& arr) {
  Polyline out;
  for (const auto& p : arr) out.push_back({p[0].get<double>(), p[1].get<double>()});
  return out;
}

}  // namespace

std::string plan_report_json(const PlanQuery& query, const std::vector<PlanResult>& results) {
  json doc;
  doc["tether"] = polyline_json(query.tether);
  doc["goal"] = json::array({query.goal.x, query.goal.y});
  doc["results"] = json::array();
  int rank = 1;
  for (const PlanResult& r : results) {
    json e;
    e["rank"] = rank++;
    e["signature"] = to_string(r.goal_signature);
    e["path_length"] = r.path_length;
    e["resulting_tether_length"] = r.resulting_tether_length;
    e["path"] = polyline_json(r.path);
    e["resulting_tether"] = polyline_json(r.resulting_tether);
    doc["results"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

PlanReport parse_plan_report(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  PlanReport report;
  try {
    report.query.tether = parse_polyline(doc.at("tether"));
    report.query.goal = {doc.at("goal")[0].get<double>(), doc.at("goal")[1].get<double>()};
    for (const auto& e : doc.at("results")) {
      PlanResult r;
      r.goal_signature = signature_from_string(e.at("signature").get<std::string>());
      r.path_length = e.at("path_length").get<double>();
      r.resulting_tether_length = e.at("resulting_tether_length").get<double>();
      r.path = parse_polyline(e.at("path"));
      r.resulting_tether = parse_polyline(e.at("resulting_tether"));
      report.results.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return report;
}

}  // namespace tether
