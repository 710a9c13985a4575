// Microbenchmarks for the model-construction pipeline and its baseline.

#include <benchmark/benchmark.h>

#include "tether/baseline.hpp"
#include "tether/env_gen.hpp"
#include "tether/planner.hpp"

namespace {

using namespace tether;

ValidatedEnvironment bench_env(int m, double l) {
  return validate(generate_environment(m, 7, l));
}

void BM_Triangulate(benchmark::State& state) {
  const ValidatedEnvironment env = bench_env(int(state.range(0)), 15.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(triangulate(env));
  }
}
BENCHMARK(BM_Triangulate)->Arg(1)->Arg(4)->Arg(8);

void BM_BuildComplex(benchmark::State& state) {
  const int m = int(state.range(0));
  const double l = double(state.range(1));
  const ValidatedEnvironment env = bench_env(m, l);
  for (auto _ : state) {
    Triangulation T = triangulate(env);
    DualGraph dual = dual_graph(T, env.anchor(), env.generators());
    CoverComplex c =
        build_complex(std::move(T), std::move(dual), env.anchor(), l, env.generators());
    benchmark::DoNotOptimize(c.lifted_triangles().size());
  }
}
BENCHMARK(BM_BuildComplex)
    ->Args({1, 10})
    ->Args({2, 15})
    ->Args({6, 15})
    ->Args({8, 15})
    ->Args({8, 20});

void BM_GridGraph(benchmark::State& state) {
  const int m = int(state.range(0));
  const double res_milli = double(state.range(1));
  const ValidatedEnvironment env = bench_env(m, 15.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_grid_graph(env, res_milli / 1000.0).nodes.size());
  }
}
BENCHMARK(BM_GridGraph)->Args({2, 500})->Args({2, 250})->Args({8, 500})->Args({8, 250});

void BM_Plan(benchmark::State& state) {
  const ValidatedEnvironment env = bench_env(int(state.range(0)), 15.0);
  Triangulation T = triangulate(env);
  DualGraph dual = dual_graph(T, env.anchor(), env.generators());
  const CoverComplex c =
      build_complex(std::move(T), std::move(dual), env.anchor(), 15.0, env.generators());
  const PlanQuery query{{{0.8, 0.8}}, {9.2, 9.2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan(c, query).size());
  }
}
BENCHMARK(BM_Plan)->Arg(2)->Arg(6)->Arg(8);

void BM_FunnelShortest(benchmark::State& state) {
  const ValidatedEnvironment env = bench_env(0, 40.0);
  const Triangulation T = triangulate(env);
  const DualGraph dual = dual_graph(T, env.anchor(), env.generators());
  // Longest tree path available in the obstacle-free dual.
  std::vector<int> path{0};
  std::vector<int> prev(T.triangles.size(), -2);
  prev[0] = -1;
  std::vector<int> queue{0};
  int far = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    far = queue[head];
    for (int n : dual.adj[queue[head]]) {
      if (prev[n] == -2) {
        prev[n] = queue[head];
        queue.push_back(n);
      }
    }
  }
  path.clear();
  for (int t = far; t != -1; t = prev[t]) path.push_back(t);
  std::reverse(path.begin(), path.end());
  const Sleeve sleeve = sleeve_between(T, dual, path);
  const Point a = dual.rep[sleeve.triangles.front()];
  const Point b = dual.rep[sleeve.triangles.back()];
  for (auto _ : state) {
    benchmark::DoNotOptimize(funnel_shortest(T, sleeve, a, b).size());
  }
}
BENCHMARK(BM_FunnelShortest);

}  // namespace

BENCHMARK_MAIN();
