// Command-line front end: build the simplicial model of a tethered robot's
// configuration space, plan and rank tether-feasible paths on it, benchmark
// against the homotopy-augmented grid graph, and render SVG views.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tether/baseline.hpp"
#include "tether/complex_io.hpp"
#include "tether/env_gen.hpp"
#include "tether/planner.hpp"
#include "tether/svg_render.hpp"

namespace {

using namespace tether;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << content;
}

Point parse_xy(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::kParseError, std::string(what) + " must be X,Y");
  }
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, std::string(what) + " must be X,Y");
  }
}

Polyline parse_waypoints(const std::string& text) {
  Polyline line;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) {
    if (part.empty()) continue;
    const Point p = parse_xy(part, "waypoint");
    if (line.empty() || distance(line.back(), p) > kSnapEps) line.push_back(p);
  }
  if (line.empty()) throw Error(ErrorCode::kParseError, "empty waypoint list");
  return line;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) out.push_back(std::stod(part));
  }
  return out;
}

struct Workspace {
  ValidatedEnvironment env;
  std::string hash;
  CoverComplex complex;
  double build_time_s = 0.0;
  bool from_cache = false;
};

Environment load_env_file(const std::string& path, double length_override) {
  Environment env = load_environment(read_file(path));
  if (length_override > 0.0) env.tether_length = length_override;
  return env;
}

// Builds the complex, or reloads it from <out>/complex_<hash>.txt when the
// environment hash matches a previous build.
Workspace prepare(const std::string& env_path, double length_override, const std::string& out_dir,
                  bool use_cache) {
  Environment raw = load_env_file(env_path, length_override);
  const std::string hash = environment_hash(raw);
  ValidatedEnvironment env = validate(std::move(raw));
  const double l = env.tether_length();

  const std::string cache_path = out_dir + "/complex_" + hash + ".txt";
  if (use_cache) {
    std::ifstream probe(cache_path);
    if (probe) {
      try {
        CoverComplex complex = load_complex(read_file(cache_path), env, l);
        return {std::move(env), hash, std::move(complex), 0.0, true};
      } catch (const Error&) {
        // Stale or foreign cache entry: rebuild below.
      }
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  Triangulation T = triangulate(env);
  DualGraph dual = dual_graph(T, env.anchor(), env.generators());
  CoverComplex complex =
      build_complex(std::move(T), std::move(dual), env.anchor(), l, env.generators());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (use_cache) write_file(cache_path, dump_complex(complex, hash));
  return {std::move(env), hash, std::move(complex), secs, false};
}

int cmd_build(const std::string& env_path, double length_override, const std::string& out_dir) {
  Workspace ws = prepare(env_path, length_override, out_dir, true);
  BuildStats stats;
  stats.vertices = ws.complex.lifted_vertices().size();
  stats.edges = ws.complex.lifted_edges().size();
  stats.triangles = ws.complex.lifted_triangles().size();
  stats.layer_count = ws.complex.layers().size();
  stats.build_time_s = ws.build_time_s;
  stats.anchor_snapped = ws.complex.anchor_snapped();
  write_file(out_dir + "/build_stats.txt", format_build_stats(stats));
  write_file(out_dir + "/layers.svg", render_layers(ws.env, ws.complex));
  std::cout << (ws.from_cache ? "reused cached complex " : "built complex ") << ws.hash << "\n"
            << format_build_stats(stats);
  return 0;
}

int cmd_plan(const std::string& env_path, double length_override, const std::string& out_dir,
             const std::string& goal_text, const std::string& tether_text,
             const std::string& mode_text) {
  Workspace ws = prepare(env_path, length_override, out_dir, true);
  PlanQuery query;
  query.goal = parse_xy(goal_text, "--goal");
  query.tether = parse_waypoints(tether_text);

  std::vector<PlanResult> results = plan(ws.complex, query);
  if (mode_text == "primal") {
    // Recompute the paths over the lifted primal graph; ranking and tether
    // results keep the exact dual-funnel values.
    const LiftedPoint robot = ws.complex.lift_path(query.tether);
    for (PlanResult& r : results) {
      const int copy = ws.complex.lift_path(r.resulting_tether).copy;
      const SearchResult s = search_on_graph(ws.complex, SearchMode::kPrimal, robot,
                                             {copy, query.goal});
      r.path = s.path;
      r.path_length = s.length;
    }
  }

  write_file(out_dir + "/plan_report.json", plan_report_json(query, results));
  for (std::size_t i = 0; i < results.size(); ++i) {
    write_file(out_dir + "/plan_" + std::to_string(i + 1) + ".svg",
               render_plan(ws.env, query, results[i], static_cast<int>(i) + 1));
  }
  std::printf("rank  class            path_len   tether_len\n");
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::printf("%-5zu %-16s %-10.4f %-10.4f\n", i + 1,
                results[i].goal_signature.empty() ? "identity"
                                                  : to_string(results[i].goal_signature).c_str(),
                results[i].path_length, results[i].resulting_tether_length);
  }
  return 0;
}

int cmd_rank(const std::string& env_path, double length_override, const std::string& out_dir,
             const std::string& goal_text) {
  Workspace ws = prepare(env_path, length_override, out_dir, true);
  const Point p = parse_xy(goal_text, "--goal");
  const auto ranked = rank_homotopy_classes(ws.complex, p);
  std::ostringstream report;
  report << "point " << p.x << ' ' << p.y << "\n";
  std::printf("rank  class            tether_len\n");
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const std::string name = ranked[i].first.empty() ? "identity" : to_string(ranked[i].first);
    report << i + 1 << ' ' << (ranked[i].first.empty() ? "-" : to_string(ranked[i].first)) << ' '
           << ranked[i].second << "\n";
    std::printf("%-5zu %-16s %-10.4f\n", i + 1, name.c_str(), ranked[i].second);
  }
  write_file(out_dir + "/rank_report.txt", report.str());
  return 0;
}

int cmd_bench(const std::vector<std::string>& env_paths, const std::string& gen_m_text,
              unsigned seed, const std::string& lengths_text, const std::string& resolutions_text,
              std::size_t grid_node_cap, const std::string& out_dir) {
  const std::vector<double> lengths = parse_doubles(lengths_text);
  const std::vector<double> resolutions = parse_doubles(resolutions_text);
  if (lengths.empty() || resolutions.empty()) {
    throw Error(ErrorCode::kParseError, "bench needs --lengths and --resolutions");
  }

  struct Job {
    std::string name;
    Environment env;
  };
  std::vector<Job> jobs;
  for (const std::string& path : env_paths) {
    jobs.push_back({path, load_env_file(path, 0.0)});
  }
  for (double m : parse_doubles(gen_m_text)) {
    jobs.push_back({"gen_m" + std::to_string(static_cast<int>(m)),
                    generate_environment(static_cast<int>(m), seed, lengths.front())});
  }
  if (jobs.empty()) throw Error(ErrorCode::kParseError, "bench needs --env or --gen-m");

  std::ostringstream csv;
  csv << "env,m,l,bar_T2_count,bar_T_time_s";
  for (double r : resolutions) {
    csv << ",grid_nodes_r" << r << ",grid_time_r" << r << "_s";
  }
  csv << ",agreement_pct\n";

  double ratio_sum = 0.0;
  int ratio_count = 0;
  for (const Job& job : jobs) {
    for (double l : lengths) {
      try {
        Environment env = job.env;
        env.tether_length = l;
        const ValidatedEnvironment v = validate(std::move(env));
        const CompareRow row = compare(v, l, resolutions, grid_node_cap);
        csv << job.name << ',' << row.m << ',' << l << ',' << row.complex_triangles << ','
            << row.complex_time_s;
        for (const GridColumn& col : row.grids) {
          if (col.skipped) {
            csv << ",NA,NA";
          } else {
            csv << ',' << col.nodes << ',' << col.build_time_s;
          }
        }
        if (row.agreement_pct >= 0) {
          csv << ',' << row.agreement_pct << "\n";
        } else {
          csv << ",NA\n";
        }
        if (!row.grids.empty() && !row.grids.front().skipped && row.complex_triangles > 0) {
          ratio_sum += double(row.grids.front().nodes) / double(row.complex_triangles);
          ++ratio_count;
        }
        std::printf("%s l=%g: |T2|=%zu t=%.3fs", job.name.c_str(), l, row.complex_triangles,
                    row.complex_time_s);
        for (const GridColumn& col : row.grids) {
          if (col.skipped) {
            std::printf("  grid(%.3g)=skipped", col.resolution);
          } else {
            std::printf("  grid(%.3g)=%zu t=%.3fs", col.resolution, col.nodes, col.build_time_s);
          }
        }
        std::printf("\n");
      } catch (const Error& e) {
        csv << job.name << ",ERROR," << l << ",\"" << e.what() << "\"\n";
        std::fprintf(stderr, "row failed (%s, l=%g): %s\n", job.name.c_str(), l, e.what());
      }
    }
  }
  write_file(out_dir + "/bench.csv", csv.str());
  if (ratio_count > 0) {
    std::printf("grid-to-complex size ratio (coarsest grid): %.1fx average over %d rows\n",
                ratio_sum / ratio_count, ratio_count);
  }
  return 0;
}

int cmd_render(const std::string& env_path, double length_override, const std::string& out_dir) {
  Environment raw = load_env_file(env_path, length_override);
  const std::string hash = environment_hash(raw);
  const ValidatedEnvironment env = validate(std::move(raw));

  write_file(out_dir + "/environment.svg", render_environment(env));
  const Triangulation T = triangulate(env);
  const DualGraph dual = dual_graph(T, env.anchor(), env.generators());
  write_file(out_dir + "/triangulation.svg", render_triangulation(env, T, dual));

  const std::string cache_path = out_dir + "/complex_" + hash + ".txt";
  if (std::ifstream(cache_path).good()) {
    const CoverComplex complex = load_complex(read_file(cache_path), env, env.tether_length());
    write_file(out_dir + "/layers.svg", render_layers(env, complex));
  }
  const std::string report_path = out_dir + "/plan_report.json";
  if (std::ifstream(report_path).good()) {
    const PlanReport report = parse_plan_report(read_file(report_path));
    for (std::size_t i = 0; i < report.results.size(); ++i) {
      write_file(out_dir + "/plan_" + std::to_string(i + 1) + ".svg",
                 render_plan(env, report.query, report.results[i], static_cast<int>(i) + 1));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tethered-robot configuration space modeling and planning"};
  app.require_subcommand(1);

  std::string env_path, out_dir = ".", goal_text, tether_text, mode_text = "dual";
  std::string lengths_text, resolutions_text = "0.5,0.25", gen_m_text;
  std::vector<std::string> env_paths;
  double length_override = 0.0;
  unsigned seed = 7;
  std::size_t grid_node_cap = 3000000;

  CLI::App* build = app.add_subcommand("build", "build the simplicial complex model");
  build->add_option("--env", env_path, "environment JSON document")->required();
  build->add_option("--out", out_dir, "output directory");
  build->add_option("--length", length_override, "tether length override");

  CLI::App* plan_cmd = app.add_subcommand("plan", "enumerate and rank paths to a goal");
  plan_cmd->add_option("--env", env_path)->required();
  plan_cmd->add_option("--out", out_dir);
  plan_cmd->add_option("--length", length_override);
  plan_cmd->add_option("--goal", goal_text, "goal point X,Y")->required();
  plan_cmd->add_option("--tether", tether_text, "tether waypoints x0,y0;x1,y1;...")->required();
  plan_cmd->add_option("--mode", mode_text, "search mode: dual|primal")
      ->check(CLI::IsMember({"dual", "primal"}));

  CLI::App* rank_cmd = app.add_subcommand("rank", "rank feasible homotopy classes of a point");
  rank_cmd->add_option("--env", env_path)->required();
  rank_cmd->add_option("--out", out_dir);
  rank_cmd->add_option("--length", length_override);
  rank_cmd->add_option("--goal", goal_text, "query point X,Y")->required();

  CLI::App* bench = app.add_subcommand("bench", "compare against homotopy-augmented grids");
  bench->add_option("--env", env_paths, "environment files (repeatable)");
  bench->add_option("--gen-m", gen_m_text, "generate environments with these obstacle counts");
  bench->add_option("--seed", seed, "seed for generated environments");
  bench->add_option("--lengths", lengths_text, "tether lengths, comma separated")->required();
  bench->add_option("--resolutions", resolutions_text, "grid resolutions, comma separated");
  bench->add_option("--grid-node-cap", grid_node_cap, "skip grids above this node estimate");
  bench->add_option("--out", out_dir);

  CLI::App* render = app.add_subcommand("render", "render SVG views of artifacts in --out");
  render->add_option("--env", env_path)->required();
  render->add_option("--out", out_dir);
  render->add_option("--length", length_override);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(env_path, length_override, out_dir);
    if (plan_cmd->parsed()) {
      return cmd_plan(env_path, length_override, out_dir, goal_text, tether_text, mode_text);
    }
    if (rank_cmd->parsed()) return cmd_rank(env_path, length_override, out_dir, goal_text);
    if (bench->parsed()) {
      return cmd_bench(env_paths, gen_m_text, seed, lengths_text, resolutions_text, grid_node_cap,
                       out_dir);
    }
    if (render->parsed()) return cmd_render(env_path, length_override, out_dir);
  } catch (const tether::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    switch (e.code()) {
      case tether::ErrorCode::kTetherInfeasible:
      case tether::ErrorCode::kGoalUnreachable:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
