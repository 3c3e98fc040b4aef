#include "doctest.h"
#include "planarcut/generators.hpp"
#include "planarcut/instance_io.hpp"

using namespace planarcut;

TEST_CASE("grid and wheel counts") {
  const auto g22 = EmbeddedPlanarGraph::build(make_grid(2, 2));
  CHECK(g22.num_vertices() == 4);
  CHECK(g22.num_edges() == 4);
  CHECK(g22.num_faces() == 2);
  const auto g33 = EmbeddedPlanarGraph::build(make_grid(3, 3));
  CHECK(g33.num_vertices() == 9);
  CHECK(g33.num_edges() == 12);
  CHECK(g33.num_faces() == 5);
  const auto w = EmbeddedPlanarGraph::build(make_wheel(7));
  CHECK(w.num_vertices() == 8);
  CHECK(w.num_edges() == 14);
  CHECK(w.num_faces() == 8);
}

TEST_CASE("random planar graphs are connected and embedded") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GraphSpec s = make_random_planar(3, 4, 0.6, seed);
    CHECK_NOTHROW(EmbeddedPlanarGraph::build(s));
    CHECK(s.n == 12);
  }
}

TEST_CASE("weights stay in range") {
  GraphSpec s = make_grid(3, 3);
  randomize_weights(s, 4, 6, 9, 2);
  CHECK(s.demands.size() == 4);
  for (const Edge& e : s.edges) {
    CHECK(e.cost >= 1);
    CHECK(e.cost <= 6);
  }
  for (const Demand& d : s.demands) {
    CHECK(d.u < d.v);
    CHECK(d.amount >= 1);
    CHECK(d.amount <= 9);
  }
}

TEST_CASE("families") {
  GeneratorParams p;
  p.rows = 2;
  p.cols = 3;
  p.seed = 4;
  const GraphSpec g = generate_family("grid", p);
  CHECK(g.n == 6);
  CHECK(g.demands.size() == 3);
  CHECK(generate_family("wheel", p).n == 6);
  CHECK(generate_family("random-planar", p).n == 6);
  CHECK_THROWS_AS(generate_family("torus", p), Error);
  p.rows = 0;
  CHECK_THROWS_AS(generate_family("grid", p), Error);
  // Same seed, same instance.
  p.rows = 3;
  CHECK(write_instance(generate_family("random-planar", p)) == write_instance(generate_family("random-planar", p)));
}
