#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "planarcut/generators.hpp"
#include "planarcut/lp.hpp"
#include "planarcut/oracle.hpp"
#include "planarcut/reductions.hpp"
#include "planarcut/rng.hpp"
#include "planarcut/sparsity.hpp"
#include "planarcut/simplex.hpp"

using namespace planarcut;

namespace {

using Row = SimplexProblem::Row;

SimplexProblem problem(int n, std::vector<std::int64_t> cost, std::vector<Row> rows, double upper = 1) {
  return {n, std::move(cost), std::move(rows), std::vector<double>(n, upper)};
}

struct Instance {
  EmbeddedPlanarGraph g;
  DualGraph d;
  NdhcTree t;
  ProfileTable prof;
  CutResult best;
};

Instance make_instance(GraphSpec s, std::size_t max_kappa, std::uint64_t seed) {
  auto g = EmbeddedPlanarGraph::build(s);
  auto d = DualGraph::build(g);
  Instance in{g, d, {}, {}, {}};
  in.t = NdhcTree::build(in.d, {.n = g.num_vertices(), .max_kappa = max_kappa, .max_nodes = 3000, .seed = seed});
  in.prof = enumerate_all_profiles(in.t);
  in.best = best_simple_cut(in.g, brute_force_sparsest(in.g).best.side);
  return in;
}

}  // namespace

TEST_CASE("simplex solves small textbook problems") {
  // min -x0 - x1, x0 + 2 x1 >= 1 (redundant), x0 + x1 = 1.5 with 0 <= x <= 1
  auto p = problem(2, {-1, -1}, {{{{0, 1}, {1, 2}}, true, 1}, {{{0, 1}, {1, 1}}, false, 1.5}});
  auto r = simplex_solve<double>(p);
  REQUIRE(r.status == SimplexStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-1.5));
  auto e = simplex_solve<Rational>(p);
  REQUIRE(e.status == SimplexStatus::Optimal);
  CHECK(e.objective == Rational(-3, 2));

  // A bound flip: min -x0 with no rows besides a slack one.
  auto flip = simplex_solve<double>(problem(2, {-1, 0}, {{{{1, 1}}, true, 0}}));
  REQUIRE(flip.status == SimplexStatus::Optimal);
  CHECK(flip.x[0] == 1.0);

  // Infeasible: x0 + x1 >= 3 with unit bounds.
  CHECK(simplex_solve<double>(problem(2, {1, 1}, {{{{0, 1}, {1, 1}}, true, 3}})).status == SimplexStatus::Infeasible);
  CHECK(simplex_solve<Rational>(problem(2, {1, 1}, {{{{0, 1}, {1, 1}}, true, 3}})).status ==
        SimplexStatus::Infeasible);

  // Unbounded above: min -x0 with no upper bound.
  CHECK(simplex_solve<double>(problem(1, {-1}, {{{{0, 1}}, true, 0}}, -1)).status == SimplexStatus::Unbounded);
}

TEST_CASE("simplex drops duplicated equality rows") {
  // x0 + x1 = 1 three times, x0 - x1 = 0.
  std::vector<Row> rows(3, Row{{{0, 1}, {1, 1}}, false, 1});
  rows.push_back({{{0, 1}, {1, -1}}, false, 0});
  rows.push_back({{{0, 2}, {1, 2}}, false, 2});
  auto r = simplex_solve<double>(problem(2, {1, 3}, rows));
  REQUIRE(r.status == SimplexStatus::Optimal);
  CHECK(r.redundant_rows == 3);
  CHECK(r.x[0] == doctest::Approx(0.5));
  CHECK(r.objective == doctest::Approx(2));
  auto e = simplex_solve<Rational>(problem(2, {1, 3}, rows));
  CHECK(e.redundant_rows == 3);
  CHECK(e.objective == 2);
}

TEST_CASE("simplex agrees with enumeration of vertices on random small problems") {
  // Minimizing over {0,1}-bounded boxes cut by one equality: compare the
  // double and rational solvers, which use different pricing rules.
  for (int seed = 1; seed <= 30; ++seed) {
    StreamRng rng = StreamRng::named(seed, "simplex");
    auto pick = [&](int lo, int hi) { return lo + static_cast<std::int64_t>(rng.below(hi - lo + 1)); };
    const int n = 6;
    std::vector<std::int64_t> cost(n);
    for (auto& c : cost) c = pick(-5, 5);
    std::vector<Row> rows;
    for (int k = 0; k < 3; ++k) {
      Row r;
      for (int j = 0; j < n; ++j) {
        if (pick(0, 2) > 0) r.terms.push_back({j, pick(-3, 3)});
      }
      r.ge = k > 0;
      r.rhs = static_cast<double>(pick(-2, 2));
      rows.push_back(r);
    }
    const auto p = problem(n, cost, rows);
    auto a = simplex_solve<double>(p);
    auto b = simplex_solve<Rational>(p);
    INFO("seed " << seed);
    REQUIRE(a.status == b.status);
    if (a.status == SimplexStatus::Optimal) CHECK(a.objective == doctest::Approx(b.objective.convert_to<double>()));
  }
}

TEST_CASE("single-vertex dual has only the root pin") {
  GraphSpec s;
  s.n = 1;
  s.rotation = {{}};
  auto g = EmbeddedPlanarGraph::build(s);
  auto d = DualGraph::build(g);
  auto t = NdhcTree::build(d, {.n = 1, .seed = 1});
  auto m = LpModel::build(t, enumerate_all_profiles(t), 0.0);
  const auto sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == 0);
  m.set_alpha(1.0);
  CHECK(solve_lp(m).status == LpStatus::Infeasible);
}

TEST_CASE("bridges are rejected by the LP builder") {
  // A face bounded only by a self-loop is never in a boundary set, so the
  // model could not see demand at that primal vertex.
  auto g = EmbeddedPlanarGraph::build(fixtures::path({2, 3}, {{0, 2, 1}}));
  auto d = DualGraph::build(g);
  auto t = NdhcTree::build(d, {.n = 3, .seed = 1});
  const auto prof = enumerate_all_profiles(t);
  CHECK_THROWS_WITH_AS(LpModel::build(t, prof, 1.0), doctest::Contains("bridge"), Error);
  const BridgeCore core = bridge_core(g);
  CHECK(core.bridges.size() == 2);
  CHECK(core.graph.num_vertices() == 1);
  const CutResult b = best_bridge_cut(g, core.bridges);
  CHECK(b.cost == 2);
  CHECK(b.demand == 1);
}

TEST_CASE("integral encoding of the optimal cycle is feasible") {
  int encoded = 0;
  for (int fam = 0; fam < 3; ++fam) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      GraphSpec s = fam == 0 ? make_grid(3, 3) : fam == 1 ? make_wheel(5) : fixtures::c4();
      if (fam < 2) randomize_weights(s, 3, 5, 4, seed);
      auto in = make_instance(s, 5, seed);
      const DualCycle c = cycle_of_cut(in.d, in.best.side);
      Forcing phi;
      try {
        phi = find_amenable_forcing(in.t, c.walk());
      } catch (const Error&) {
        continue;  // not amenable in this tree; no encoding to test
      }
      ++encoded;
      const auto m = LpModel::build(in.t, in.prof, static_cast<double>(in.best.demand));
      const auto x = encode_integral(m, c, phi);
      std::vector<Rational> xr(x.begin(), x.end());
      const Residuals r = residuals(m, xr);
      INFO("fam " << fam << " seed " << seed << " worst " << (r.worst_row >= 0 ? m.row_label(r.worst_row) : "bound"));
      CHECK(r.violated == 0);
      CHECK(evaluate(m.objective(), x) == doctest::Approx(static_cast<double>(in.best.cost)));
      // y is the indicator of the cycle separating each pair.
      const auto y = pair_values(m, x);
      for (std::size_t i = 0; i < m.pairs().size(); ++i) {
        const auto& pr = m.pairs()[i];
        const bool sep = c.enclosed().contains(pr.s) != c.enclosed().contains(pr.t);
        CHECK(y[i] == (sep ? 1.0 : 0.0));
      }
      const auto sol = solve_lp(m);
      REQUIRE(sol.status == LpStatus::Optimal);
      CHECK(sol.objective <= in.best.cost + 1e-7);
      CHECK(sol.residual.max_abs <= 1e-7);  // implied rows included
    }
  }
  CHECK(encoded >= 5);
}

TEST_CASE("exact and floating solvers agree on small models") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GraphSpec s = make_grid(2, 3);
    randomize_weights(s, 2, 4, 3, seed);
    auto in = make_instance(s, 4, seed);
    const auto m = LpModel::build(in.t, in.prof, 1.0);
    const auto a = solve_lp(m);
    const auto b = solve_lp(m, {.exact = true});
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(b.residual.max_abs == 0);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
  }
}

TEST_CASE("alpha above the total demand is infeasible") {
  GraphSpec s = make_wheel(5);
  randomize_weights(s, 2, 4, 3, 2);
  auto in = make_instance(s, 4, 1);
  std::int64_t total = 0;
  for (const auto& dm : s.demands) total += dm.amount;
  auto m = LpModel::build(in.t, in.prof, static_cast<double>(total) + 0.5);
  CHECK(solve_lp(m).status == LpStatus::Infeasible);
  m.set_alpha(1.0);
  CHECK(solve_lp(m).status == LpStatus::Optimal);
}

TEST_CASE("dense cap") {
  GraphSpec s = make_grid(3, 3);
  randomize_weights(s, 2, 4, 3, 1);
  auto in = make_instance(s, 8, 1);
  const auto m = LpModel::build(in.t, in.prof, 1.0);
  CHECK_THROWS_AS(solve_lp(m, {.max_dense_entries = 10}), Error);
}

TEST_CASE("alpha grid") {
  const auto a = alpha_grid(10, 4, 1.0);
  CHECK(a == std::vector<double>{1, 2, 4, 8});
  CHECK(alpha_grid(1000, 2, 1.0).back() == 32);  // n^5 = 32
  CHECK(alpha_grid(0, 4, 0.5).empty());
  CHECK_THROWS_AS(alpha_grid(5, 4, 0), Error);
}
