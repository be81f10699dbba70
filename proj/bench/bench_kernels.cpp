// Serial reference vs OpenMP versions of the parallel kernels. The second
// benchmark argument selects the parallel path.
#include <benchmark/benchmark.h>

#include <random>

#include "wc/counting.hpp"
#include "wc/expander.hpp"
#include "wc/oracle.hpp"
#include "wc/sweep.hpp"

using namespace wc;

namespace {

SimpleGraph random_graph(Vertex n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  SimpleGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

void BM_LowLeafTrees(benchmark::State& st) {
  const auto k = static_cast<Vertex>(st.range(0));
  const bool par = st.range(1);
  for (auto _ : st) benchmark::DoNotOptimize(count_low_leaf_trees(k, k / 2, par));
}
BENCHMARK(BM_LowLeafTrees)->Args({8, 0})->Args({8, 1})->Args({9, 0})->Args({9, 1})
    ->Unit(benchmark::kMillisecond);

void BM_MinimalNonExpanding(benchmark::State& st) {
  const auto n = static_cast<Vertex>(st.range(0));
  const bool par = st.range(1);
  const auto g = random_graph(n, 3.0 / n, 1);
  std::vector<Vertex> side(n);
  for (Vertex v = 0; v < n; ++v) side[v] = v;
  for (auto _ : st) benchmark::DoNotOptimize(minimal_non_expanding(g, side, 2, 4, par));
}
BENCHMARK(BM_MinimalNonExpanding)->Args({400, 0})->Args({400, 1})->Unit(benchmark::kMillisecond);

void BM_ExpanderCheck(benchmark::State& st) {
  const auto n = static_cast<Vertex>(st.range(0));
  ExpanderOptions opt;
  opt.parallel = st.range(1);
  opt.subset_budget = 3;
  opt.samples = 2000;
  const auto g = random_graph(n, 12.0 / n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(check_expander(g, 2, 0.05, opt));
}
BENCHMARK(BM_ExpanderCheck)->Args({2000, 0})->Args({2000, 1})->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& st) {
  SolveOptions opt;
  opt.parallel = st.range(0);
  for (auto _ : st)
    benchmark::DoNotOptimize(
        solve_game_exact(Board::complete(5), 2, objective_largest_component(), opt).value);
}
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& st) {
  ExperimentSpec spec;
  spec.ns = {40, 60};
  spec.qs = q_range(5, 25, 5);
  spec.trials = 4;
  spec.parallel = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(run_sweep(spec).rows.size());
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
