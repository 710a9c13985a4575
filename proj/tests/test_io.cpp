#include "doctest.h"
#include "tether/complex_io.hpp"

using namespace tether;

namespace {

ValidatedEnvironment io_env(double l = 12.0) {
  Environment env;
  env.workspace = Polygon{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}};
  env.obstacles = {Polygon{{{4, 4}, {6, 4}, {6, 6}, {4, 6}}}};
  env.anchor = {2, 5};
  env.tether_length = l;
  return validate(std::move(env));
}

CoverComplex build(const ValidatedEnvironment& env) {
  Triangulation T = triangulate(env);
  DualGraph dual = dual_graph(T, env.anchor(), env.generators());
  return build_complex(std::move(T), std::move(dual), env.anchor(), env.tether_length(),
                       env.generators());
}

}  // namespace

TEST_CASE("complex dump round-trips through load_complex") {
  const ValidatedEnvironment env = io_env(15.0);
  const CoverComplex c = build(env);
  const std::string hash = environment_hash(env.env());
  const std::string dump = dump_complex(c, hash);

  const CoverComplex back = load_complex(dump, env, 15.0);
  CHECK(back.lifted_vertices().size() == c.lifted_vertices().size());
  CHECK(back.lifted_edges().size() == c.lifted_edges().size());
  CHECK(back.lifted_triangles().size() == c.lifted_triangles().size());
  CHECK(back.anchor_copy() == c.anchor_copy());
  CHECK(dump_complex(back, hash) == dump);
  back.validate_complex();
}

TEST_CASE("load_complex rejects mismatched tether lengths") {
  const ValidatedEnvironment env = io_env(15.0);
  const std::string dump = dump_complex(build(env), environment_hash(env.env()));
  try {
    load_complex(dump, env, 12.0);
    FAIL("expected PARSE_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
  }
  CHECK_THROWS_AS(load_complex("garbage", env, 15.0), Error);
}

TEST_CASE("dump layers section lists signatures canonically") {
  const ValidatedEnvironment env = io_env(15.0);
  const CoverComplex c = build(env);
  const std::string dump = dump_complex(c, "x");
  const auto id_pos = dump.find("layer - :");
  const auto s1_pos = dump.find("layer s1 :");
  CHECK(id_pos != std::string::npos);
  CHECK(s1_pos != std::string::npos);
  CHECK(id_pos < s1_pos);
}

TEST_CASE("plan report JSON round-trips") {
  const ValidatedEnvironment env = io_env(12.0);
  const CoverComplex c = build(env);
  PlanQuery q;
  q.tether = {{2, 5}};
  q.goal = {8, 5};
  const auto results = plan(c, q);
  const std::string text = plan_report_json(q, results);
  const PlanReport back = parse_plan_report(text);
  REQUIRE(back.results.size() == results.size());
  CHECK(back.query.goal == q.goal);
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(back.results[i].goal_signature == results[i].goal_signature);
    CHECK(back.results[i].path_length == results[i].path_length);
    CHECK(back.results[i].path.size() == results[i].path.size());
  }
  CHECK_THROWS_AS(parse_plan_report("{"), Error);
}

TEST_CASE("build stats format is stable") {
  BuildStats s;
  s.vertices = 12;
  s.edges = 21;
  s.triangles = 10;
  s.layer_count = 2;
  s.build_time_s = 0.5;
  s.anchor_snapped = false;
  const std::string text = format_build_stats(s);
  CHECK(text.find("lifted_triangles 10") != std::string::npos);
  CHECK(text.find("layer_count 2") != std::string::npos);
  CHECK(text.find("anchor_snapped 0") != std::string::npos);
}
