#include "doctest.h"
#include "fixtures.hpp"
#include "planarcut/generators.hpp"
#include "planarcut/oracle.hpp"

using namespace planarcut;

namespace {

// Independent enumeration straight from the edge and demand lists.
Ratio slow_sparsest(const EmbeddedPlanarGraph& g) {
  Ratio best = Ratio::infinite();
  const int n = g.num_vertices();
  for (std::uint64_t bits = 1; bits + 1 < (std::uint64_t{1} << n); ++bits) {
    const VertexSet s(bits);
    std::int64_t c = 0, d = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) c += s.contains(g.edge(e).u) != s.contains(g.edge(e).v) ? g.edge(e).cost : 0;
    for (const Demand& dm : g.demands()) d += s.contains(dm.u) != s.contains(dm.v) ? dm.amount : 0;
    if (d > 0 && Ratio(c, d) < best) best = Ratio(c, d);
  }
  return best;
}

}  // namespace

TEST_CASE("brute force matches an independent enumeration") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    GraphSpec s = seed % 2 ? make_grid(3, 3) : make_wheel(6);
    randomize_weights(s, 3, 9, 7, seed);
    const auto g = EmbeddedPlanarGraph::build(s);
    const OracleResult r = brute_force_sparsest(g);
    CHECK(r.best.sparsity == slow_sparsest(g));
    CHECK_FALSE(r.best.side.contains(0));
    const OracleResult q = brute_force_sparsest_serial(g);
    CHECK(q.best.side == r.best.side);
    CHECK(q.subsets_checked == r.subsets_checked);
  }
}

TEST_CASE("oracle errors") {
  CHECK_THROWS_AS(brute_force_sparsest(EmbeddedPlanarGraph::build(fixtures::grid(2, 2))), Error);
  CHECK_THROWS_AS(brute_force_sparsest(EmbeddedPlanarGraph::build(fixtures::grid(3, 3, {{0, 8, 1}})), 8), Error);
}

TEST_CASE("a tree's dual has only self-loops") {
  const auto g = EmbeddedPlanarGraph::build(fixtures::path({1, 2, 3}, {{0, 3, 1}}));
  const auto d = DualGraph::build(g);
  CHECK(d.num_vertices() == 1);
  const auto cycles = all_simple_cycles(d);
  CHECK(cycles.size() == 3);
  for (const auto& c : cycles) CHECK(c.size() == 1);
}

TEST_CASE("best cycle equals best cut") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GraphSpec s = seed % 3 == 0 ? make_grid(2, 4) : seed % 3 == 1 ? make_wheel(5) : make_random_planar(3, 3, 0.7, seed);
    randomize_weights(s, 3, 6, 5, seed);
    const auto g = EmbeddedPlanarGraph::build(s);
    const auto d = DualGraph::build(g);
    CHECK(min_cycle_sparsity(d, all_simple_cycles(d)) == brute_force_sparsest(g).best.sparsity);
  }
}

TEST_CASE("cycle budget") {
  const auto d = DualGraph::build(EmbeddedPlanarGraph::build(make_grid(3, 3)));
  CHECK_THROWS_AS(all_simple_cycles(d, 3), Error);
}
