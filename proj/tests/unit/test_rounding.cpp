#include <cmath>
#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "planarcut/dual.hpp"
#include "planarcut/generators.hpp"
#include "planarcut/oracle.hpp"
#include "planarcut/profiles.hpp"
#include "planarcut/rounding.hpp"

using namespace planarcut;

namespace {

struct Setup {
  EmbeddedPlanarGraph g;
  DualGraph d;
  NdhcTree t;
  ProfileTable prof;
};

std::unique_ptr<Setup> setup(GraphSpec s, std::uint64_t seed, std::size_t max_kappa = 5) {
  auto g = EmbeddedPlanarGraph::build(s);
  auto d = DualGraph::build(g);
  auto out = std::make_unique<Setup>(Setup{g, d, {}, {}});
  out->t = NdhcTree::build(out->d, {.n = g.num_vertices(), .max_kappa = max_kappa, .max_nodes = 2000, .seed = seed});
  out->prof = enumerate_all_profiles(out->t);
  return out;
}

// Integral encodings of every amenable simple cycle.
std::vector<std::pair<DualCycle, std::vector<double>>> encodings(const Setup& s, const LpModel& m) {
  std::vector<std::pair<DualCycle, std::vector<double>>> out;
  for (const DualCycle& c : all_simple_cycles(s.d)) {
    try {
      out.emplace_back(c, encode_integral(m, c, find_amenable_forcing(s.t, c.walk())));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("decoupling values") {
  CHECK(decoupling_lhs(0, 0.5, 0.5, 0) == doctest::Approx(0.5));
  CHECK(decoupling_lhs(1, 0, 0, 0) == 0);
  CHECK(decoupling_lhs(0.25, 0.25, 0.25, 0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(decoupling_lhs(0.5, 0.5, 0.5, 0), Error);
  CHECK_THROWS_AS(decoupling_lhs(-0.1, 0.5, 0.5, 0.1), Error);
  const double a = decoupling_min_slack(20000, 3);
  CHECK(a >= -1e-12);
  CHECK(a == decoupling_min_slack_serial(20000, 3));
}

TEST_CASE("amplify picks the sparsest draw") {
  // Sparsities 3, 2, 5 repeating by index.
  const CutSampler s = [](std::uint64_t key) {
    static const std::int64_t cost[] = {3, 2, 5};
    CutResult r;
    const int i = static_cast<int>(key % 3);
    r.cost = cost[i];
    r.demand = 1;
    r.sparsity = Ratio(cost[i], 1);
    r.side = VertexSet::single(i + 1);
    return r;
  };
  const AmplifyResult a = amplify(s, 50, 1);
  const AmplifyResult b = amplify_serial(s, 50, 1);
  CHECK(a.best.sparsity == Ratio(2, 1));
  CHECK(a.best_index == b.best_index);
  CHECK(a.mean == b.mean);
  CHECK(a.best.sparsity.to_double() <= static_cast<double>(a.total_cost) / a.total_demand);

  const CutSampler same = [](std::uint64_t) { return CutResult{VertexSet::single(1), 4, 2, Ratio(4, 2)}; };
  CHECK(amplify(same, 10, 9).best.side == VertexSet::single(1));

  const CutSampler never = [](std::uint64_t) { return CutResult{}; };
  CHECK_THROWS_AS(amplify(never, 5, 1, 3), Error);

  // Infinite draws are replaced.
  const CutSampler flaky = [](std::uint64_t key) {
    if (key % 2) return CutResult{};
    return CutResult{VertexSet::single(2), 1, 1, Ratio(1, 1)};
  };
  const AmplifyResult f = amplify(flaky, 40, 5);
  CHECK(f.finite == 40);
  CHECK(f.resampled > 0);
}

TEST_CASE("integral solutions round deterministically to the encoded cycle") {
  GraphSpec spec = make_grid(3, 3);
  randomize_weights(spec, 3, 5, 4, 2);
  const auto s = setup(spec, 2);
  const auto m = LpModel::build(s->t, s->prof, 0.0);
  const auto enc = encodings(*s, m);
  REQUIRE(enc.size() >= 3);
  for (const auto& [c, x] : enc) {
    const Rounder r(m, x);
    for (std::uint64_t k = 0; k < 5; ++k) {
      const RoundingTrace tr = r.sample(k);
      CHECK(tr.u == c.enclosed());
      CHECK(trace_consistent(m, tr));
    }
  }
}

TEST_CASE("rounding marginals of a mixture of encodings") {
  GraphSpec spec = make_wheel(5);
  randomize_weights(spec, 3, 5, 4, 1);
  const auto s = setup(spec, 1);
  const auto m = LpModel::build(s->t, s->prof, 0.0);
  const auto enc = encodings(*s, m);
  REQUIRE(enc.size() >= 4);
  // Weights 1..k, normalized.
  std::vector<double> x(m.num_vars(), 0.0), w;
  double total = 0;
  for (std::size_t i = 0; i < enc.size(); ++i) total += static_cast<double>(i + 1);
  for (std::size_t i = 0; i < enc.size(); ++i) {
    w.push_back((i + 1) / total);
    for (int v = 0; v < m.num_vars(); ++v) x[v] += w.back() * enc[i].second[v];
  }
  CHECK(residuals(m, x, 1e-9).violated <= 1);  // only the alpha row may differ
  const Rounder r(m, x);
  const int n = 20000;
  std::map<std::uint64_t, int> seen;
  std::vector<int> cx(m.num_single(), 0);
  for (int i = 0; i < n; ++i) {
    const RoundingTrace tr = r.sample(StreamRng::derive(4, "mix", {static_cast<std::uint64_t>(i)}));
    REQUIRE(trace_consistent(m, tr));
    ++seen[tr.u.bits()];
    for (int p : s->t.partition_nodes()) {
      if (tr.relevant(p)) ++cx[m.first_x(p) + tr.profile[p]];
    }
  }
  for (int v = 0; v < m.num_single(); ++v) {
    const double p = x[v], f = cx[v] / static_cast<double>(n);
    const double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
    CHECK(std::abs(f - p) <= 4 * sigma + 1e-12);
  }
  // Every sampled face set is the enclosed set of some mixed cycle.
  for (const auto& [bits, count] : seen) {
    bool found = false;
    for (const auto& e : enc) found = found || e.first.enclosed().bits() == bits;
    CHECK(found);
  }
}

TEST_CASE("degenerate mass is reported") {
  GraphSpec spec = make_grid(2, 3);
  randomize_weights(spec, 2, 4, 3, 1);
  const auto s = setup(spec, 1);
  const auto m = LpModel::build(s->t, s->prof, 1.0);
  auto sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  // Break the assign rows below the root: scale every child value down.
  for (int v = 1; v < m.num_single(); ++v) sol.x[v] *= 0.5;
  const Rounder r(m, sol.x);
  CHECK_THROWS_AS(
      [&] {
        for (std::uint64_t k = 0; k < 50; ++k) r.sample(k);
      }(),
      Error);
  // Noise below ten times the tolerance is renormalized away.
  auto y = solve_lp(m).x;
  for (int v = 1; v < m.num_single(); ++v) y[v] *= 1 + 1e-9;
  const Rounder ok(m, y);
  CHECK_NOTHROW(ok.sample(1));
}

TEST_CASE("pipeline on the small fixtures") {
  SUBCASE("C4 reaches the optimum") {
    const auto g = EmbeddedPlanarGraph::build(fixtures::c4());
    const auto r = run_pipeline(g, {.seed = 1});
    CHECK(r.cut.sparsity == brute_force_sparsest(g).best.sparsity);
    CHECK(r.cut.sparsity.to_double() <= 6);
  }
  SUBCASE("K4 within the guarantee") {
    const auto g = EmbeddedPlanarGraph::build(fixtures::k4());
    const auto r = run_pipeline(g, {.seed = 2});
    CHECK(r.cut.sparsity == Ratio(3, 1));
  }
  SUBCASE("zero-cost cut") {
    // 2x3 grid with edges 1-2 and 4-5 free: {2,5} is cut at cost 0.
    GraphSpec spec = make_grid(2, 3);
    for (Edge& e : spec.edges) {
      const std::pair<VertexId, VertexId> key = std::minmax(e.u, e.v);
      if (key == std::pair<VertexId, VertexId>{1, 2} || key == std::pair<VertexId, VertexId>{4, 5}) e.cost = 0;
    }
    spec.demands = {{0, 5, 2}};
    const auto g = EmbeddedPlanarGraph::build(spec);
    const auto r = run_pipeline(g, {.seed = 3});
    CHECK(r.cut.cost == 0);
    CHECK(r.cut.sparsity == Ratio(0, 2));
  }
  SUBCASE("no demand") {
    const auto g = EmbeddedPlanarGraph::build(fixtures::grid(2, 2));
    try {
      run_pipeline(g, {});
      FAIL("expected NoDemand");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoDemand);
    }
  }
  SUBCASE("deterministic report") {
    GraphSpec spec = make_wheel(6);
    randomize_weights(spec, 3, 5, 5, 7);
    const auto g = EmbeddedPlanarGraph::build(spec);
    const auto a = to_text(run_pipeline(g, {.samples = 50, .seed = 11}));
    const auto b = to_text(run_pipeline(g, {.samples = 50, .seed = 11}));
    CHECK(a == b);
  }
  SUBCASE("invalid config") {
    const auto g = EmbeddedPlanarGraph::build(fixtures::c4());
    CHECK_THROWS_AS(run_pipeline(g, {.epsilon = 0}), Error);
    CHECK_THROWS_AS(run_pipeline(g, {.samples = 0}), Error);
  }
}

TEST_CASE("pipeline on graphs with bridges") {
  int with_bridges = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GraphSpec s = make_random_planar(2, 4, 0.6, seed);
    randomize_weights(s, 3, 5, 5, seed);
    const auto g = EmbeddedPlanarGraph::build(s);
    const BridgeCore core = bridge_core(g);
    if (core.bridges.empty()) continue;
    ++with_bridges;
    CHECK(DualGraph::build(core.graph).num_vertices() >= 1);
    const PipelineResult r = run_pipeline(g, {.seed = seed});
    CHECK(r.bridges == static_cast<int>(core.bridges.size()));
    CHECK(!r.cut.side.contains(0));
    const Ratio best = brute_force_sparsest(g).best.sparsity;
    CHECK(r.cut.sparsity.to_double() <= 3 * best.to_double() + 1e-12);
  }
  CHECK(with_bridges >= 3);
}
