// OpenMP kernels against their serial references. Both versions produce
// identical results; only the wall time differs.
#include <benchmark/benchmark.h>

#include "planarcut/generators.hpp"
#include "planarcut/ldd.hpp"
#include "planarcut/oracle.hpp"
#include "planarcut/profiles.hpp"
#include "planarcut/rounding.hpp"

using namespace planarcut;

namespace {

EmbeddedPlanarGraph weighted_grid(int r, int c, std::uint64_t seed) {
  GraphSpec s = make_grid(r, c);
  randomize_weights(s, 4, 5, 6, seed);
  return EmbeddedPlanarGraph::build(s);
}

void BM_Oracle(benchmark::State& st) {
  const auto g = weighted_grid(4, 4, 3);
  for (auto _ : st) benchmark::DoNotOptimize(st.range(0) ? brute_force_sparsest(g) : brute_force_sparsest_serial(g));
}

void BM_LddMonteCarlo(benchmark::State& st) {
  const WeightedGraph h = WeightedGraph::of_primal(weighted_grid(5, 5, 4));
  for (auto _ : st) {
    benchmark::DoNotOptimize(st.range(0) ? ldd_monte_carlo(h, 8, 2000, 1) : ldd_monte_carlo_serial(h, 8, 2000, 1));
  }
}

void BM_Decoupling(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(st.range(0) ? decoupling_min_slack(200000, 1) : decoupling_min_slack_serial(200000, 1));
  }
}

struct Solved {
  EmbeddedPlanarGraph g;
  DualGraph d;
  NdhcTree t;
  ProfileTable prof;
  LpModel m;
  LpSolution sol;
};

const Solved& solved() {
  static const Solved* s = [] {
    auto* out = new Solved{weighted_grid(3, 3, 5), {}, {}, {}, {}, {}};
    out->d = DualGraph::build(out->g);
    out->t = NdhcTree::build(out->d, {.n = out->g.num_vertices(), .max_kappa = 6, .max_nodes = 2000, .seed = 2});
    out->prof = enumerate_all_profiles(out->t);
    out->m = LpModel::build(out->t, out->prof, 0.5 * static_cast<double>(out->g.total_demand()));
    out->sol = solve_lp(out->m);
    return out;
  }();
  return *s;
}

void BM_Amplify(benchmark::State& st) {
  const Solved& s = solved();
  const Rounder r(s.m, s.sol.x);
  const CutSampler sampler = [&](std::uint64_t key) {
    const VertexSet u = r.sample_set(key);
    if (u.empty() || u == VertexSet::range(s.g.num_vertices())) return CutResult{};
    return sparsity(s.g, u);
  };
  for (auto _ : st) {
    benchmark::DoNotOptimize(st.range(0) ? amplify(sampler, 5000, 1) : amplify_serial(sampler, 5000, 1));
  }
}

}  // namespace

BENCHMARK(BM_Oracle)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LddMonteCarlo)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decoupling)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Amplify)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
