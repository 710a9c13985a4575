#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

const char* kEnvJson =
    R"({"workspace": [[0,0],[10,0],[10,10],[0,10]],
        "obstacles": [[[4,4],[6,4],[6,6],[4,6]]],
        "anchor": [2,5],
        "tether_length": 12})";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("tetherplan_test_" + std::to_string(getpid()) + "_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

int run(const std::string& args) {
  const std::string cmd = std::string(TETHERPLAN_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

// Strips the wall-clock columns from a bench CSV.
std::string strip_time_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  std::getline(in, line);
  std::vector<std::size_t> keep;
  {
    std::istringstream hs(line);
    std::string col;
    std::size_t idx = 0;
    while (std::getline(hs, col, ',')) {
      if (col.find("time") == std::string::npos) keep.push_back(idx);
      ++idx;
    }
  }
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string col;
    std::size_t idx = 0, written = 0;
    while (std::getline(ls, col, ',')) {
      if (std::find(keep.begin(), keep.end(), idx) != keep.end()) {
        out << (written++ ? "," : "") << col;
      }
      ++idx;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("cmd_build writes a deterministic complex dump") {
  TempDir dir;
  spit(dir.path / "env.json", kEnvJson);
  const std::string env = (dir.path / "env.json").string();

  fs::create_directories(dir.path / "a");
  fs::create_directories(dir.path / "b");
  CHECK(run("build --env " + env + " --out " + (dir.path / "a").string()) == 0);
  CHECK(run("build --env " + env + " --out " + (dir.path / "b").string()) == 0);

  std::string dump_a, dump_b;
  for (const auto& e : fs::directory_iterator(dir.path / "a")) {
    if (e.path().filename().string().rfind("complex_", 0) == 0) dump_a = slurp(e.path());
  }
  for (const auto& e : fs::directory_iterator(dir.path / "b")) {
    if (e.path().filename().string().rfind("complex_", 0) == 0) dump_b = slurp(e.path());
  }
  REQUIRE(!dump_a.empty());
  CHECK(dump_a == dump_b);
  CHECK(fs::exists(dir.path / "a" / "build_stats.txt"));
  CHECK(fs::exists(dir.path / "a" / "layers.svg"));
}

TEST_CASE("cmd_build on an obstacle-free environment reports one layer") {
  TempDir dir;
  spit(dir.path / "env.json",
       R"({"workspace": [[0,0],[8,0],[8,8],[0,8]], "anchor": [3,4], "tether_length": 20})");
  CHECK(run("build --env " + (dir.path / "env.json").string() + " --out " + dir.path.string()) ==
        0);
  const std::string stats = slurp(dir.path / "build_stats.txt");
  CHECK(stats.find("layer_count 1") != std::string::npos);
  CHECK(stats.find("anchor_snapped 0") != std::string::npos);
}

TEST_CASE("cmd_plan writes report and panels, reusing the cache") {
  TempDir dir;
  spit(dir.path / "env.json", kEnvJson);
  const std::string env = (dir.path / "env.json").string();
  const std::string out = dir.path.string();

  CHECK(run("build --env " + env + " --out " + out) == 0);
  CHECK(run("plan --env " + env + " --out " + out + " --goal 8,5 --tether \"2,5\"") == 0);
  CHECK(fs::exists(dir.path / "plan_report.json"));
  CHECK(fs::exists(dir.path / "plan_1.svg"));
  CHECK(fs::exists(dir.path / "plan_2.svg"));
  CHECK(run("plan --env " + env + " --out " + out +
            " --goal 8,5 --tether \"2,5\" --mode primal") == 0);
}

TEST_CASE("cmd_plan surfaces infeasibility with exit code 2") {
  TempDir dir;
  spit(dir.path / "env.json", kEnvJson);
  const std::string env = (dir.path / "env.json").string();
  const std::string out = dir.path.string();
  CHECK(run("plan --env " + env + " --out " + out + " --goal 5,5 --tether \"2,5\"") == 2);
  // Unreachable at l = 6 even though the goal cell is free.
  CHECK(run("plan --env " + env + " --length 6 --out " + out + " --goal 8,5 --tether \"2,5\"") ==
        2);
}

TEST_CASE("malformed environments exit with code 1") {
  TempDir dir;
  spit(dir.path / "bad.json", R"({"workspace": [[0,0],[1,0],[1,1],[0,1]], "anchor": [0.5,0.5]})");
  CHECK(run("build --env " + (dir.path / "bad.json").string() + " --out " + dir.path.string()) ==
        1);
  CHECK(run("build --env " + (dir.path / "missing.json").string() + " --out " +
            dir.path.string()) == 1);
}

TEST_CASE("cmd_rank reports ranked classes") {
  TempDir dir;
  spit(dir.path / "env.json", kEnvJson);
  CHECK(run("rank --env " + (dir.path / "env.json").string() + " --out " + dir.path.string() +
            " --goal 8,5") == 0);
  const std::string report = slurp(dir.path / "rank_report.txt");
  CHECK(report.find("point 8 5") != std::string::npos);
  CHECK(report.find("s1") != std::string::npos);
}

TEST_CASE("cmd_bench CSV is deterministic modulo time columns") {
  TempDir dir;
  fs::create_directories(dir.path / "a");
  fs::create_directories(dir.path / "b");
  const std::string args = "bench --gen-m 1,2 --lengths 10,12 --seed 9 --resolutions 0.5,0.25";
  CHECK(run(args + " --out " + (dir.path / "a").string()) == 0);
  CHECK(run(args + " --out " + (dir.path / "b").string()) == 0);
  const std::string a = strip_time_columns(slurp(dir.path / "a" / "bench.csv"));
  const std::string b = strip_time_columns(slurp(dir.path / "b" / "bench.csv"));
  CHECK(!a.empty());
  CHECK(a == b);
}

TEST_CASE("rendered SVGs and plan reports are byte-stable across runs") {
  TempDir dir;
  spit(dir.path / "env.json", kEnvJson);
  const std::string env = (dir.path / "env.json").string();
  fs::create_directories(dir.path / "a");
  fs::create_directories(dir.path / "b");
  for (const char* sub : {"a", "b"}) {
    const std::string out = (dir.path / sub).string();
    REQUIRE(run("plan --env " + env + " --out " + out + " --goal 8,5 --tether \"2,5\"") == 0);
    REQUIRE(run("render --env " + env + " --out " + out) == 0);
  }
  for (const char* file : {"plan_report.json", "plan_1.svg", "environment.svg",
                           "triangulation.svg", "layers.svg"}) {
    const std::string a = slurp(dir.path / "a" / file);
    const std::string b = slurp(dir.path / "b" / file);
    CHECK(!a.empty());
    CHECK(a == b);
  }
}

TEST_CASE("cmd_render produces the SVG panels") {
  TempDir dir;
  spit(dir.path / "env.json", kEnvJson);
  const std::string env = (dir.path / "env.json").string();
  const std::string out = dir.path.string();
  CHECK(run("render --env " + env + " --out " + out) == 0);
  CHECK(fs::exists(dir.path / "environment.svg"));
  CHECK(fs::exists(dir.path / "triangulation.svg"));
  CHECK(slurp(dir.path / "environment.svg").find("<svg") != std::string::npos);
  // With a cached complex and plan report present, render adds the rest.
  CHECK(run("build --env " + env + " --out " + out) == 0);
  CHECK(run("plan --env " + env + " --out " + out + " --goal 8,5 --tether \"2,5\"") == 0);
  fs::remove(dir.path / "layers.svg");
  fs::remove(dir.path / "plan_1.svg");
  CHECK(run("render --env " + env + " --out " + out) == 0);
  CHECK(fs::exists(dir.path / "layers.svg"));
  CHECK(fs::exists(dir.path / "plan_1.svg"));
}
