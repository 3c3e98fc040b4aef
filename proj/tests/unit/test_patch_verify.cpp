#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "planarcut/generators.hpp"
#include "planarcut/oracle.hpp"
#include "planarcut/patch_verify.hpp"
#include "planarcut/profiles.hpp"
#include "planarcut/separation.hpp"

using namespace planarcut;

namespace {

// A dual graph whose G* is the rows x cols grid itself; at[v] is the dual
// vertex of grid vertex v.
struct GridDual {
  DualGraph d;
  std::vector<FaceId> at;
};

GridDual grid_as_dual(int rows, int cols) {
  const auto g = EmbeddedPlanarGraph::build(make_grid(rows, cols));
  const auto h = dual_embedding(DualGraph::build(g));
  GridDual out{DualGraph::build(h), {}};
  for (VertexId v = 0; v < g.num_vertices(); ++v) out.at.push_back(h.face_of_dart(g.rotation(v)[0]));
  return out;
}

EdgeId edge_between(const DualGraph& d, FaceId a, FaceId b) {
  for (auto [w, e] : d.incident(a)) {
    if (w == b) return e;
  }
  return -1;
}

// Walk around the border of a rows x cols grid (vertex r*cols + c).
ClosedWalk border(const GridDual& gd, int rows, int cols) {
  const DualGraph& d = gd.d;
  std::vector<FaceId> vs;
  for (int c = 0; c < cols; ++c) vs.push_back(c);
  for (int r = 1; r < rows; ++r) vs.push_back(r * cols + cols - 1);
  for (int c = cols - 2; c >= 0; --c) vs.push_back((rows - 1) * cols + c);
  for (int r = rows - 2; r >= 1; --r) vs.push_back(r * cols);
  for (FaceId& v : vs) v = gd.at[v];
  ClosedWalk w;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    w.vertices.push_back(vs[i]);
    w.edges.push_back(edge_between(d, vs[i], vs[(i + 1) % vs.size()]));
  }
  return w;
}

bool is_closed(const DualGraph& d, const ClosedWalk& w) {
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const FaceId a = w.vertices[i], b = w.vertices[(i + 1) % w.vertices.size()];
    const EdgeId e = w.edges[i];
    if (!((d.end0(e) == a && d.end1(e) == b) || (d.end0(e) == b && d.end1(e) == a))) return false;
  }
  return true;
}

DualCycle optimal_cycle(const EmbeddedPlanarGraph& g, const DualGraph& d) {
  const auto best = brute_force_sparsest(g);
  return cycle_of_cut(d, best_simple_cut(g, best.best.side).side);
}

}  // namespace

TEST_CASE("patch leaves cheap walks alone") {
  const GridDual gd = grid_as_dual(4, 4);
  const DualGraph& d = gd.d;
  const ClosedWalk w = border(gd, 4, 4);
  REQUIRE(is_closed(d, w));
  const PatchReport a = patch(d, w, d.all_vertices(), 6, 6);  // threshold 12 = cost
  CHECK(a.outputs.size() == 1);
  CHECK_FALSE(a.patched());
  const PatchReport b = patch(d, w, VertexSet::of({gd.at[5], gd.at[6], gd.at[9], gd.at[10]}), 1, 1);
  CHECK(b.outputs.size() == 1);
  CHECK(b.internal_cost == 0);
  CHECK_THROWS_AS(patch(d, w, d.all_vertices(), 0, 1), Error);
}

TEST_CASE("patch splits a long internal run") {
  const GridDual gd = grid_as_dual(4, 4);
  const DualGraph& d = gd.d;
  const ClosedWalk w = border(gd, 4, 4);
  const double delta = 6;  // diameter of the 4x4 grid
  const int z = 1;         // threshold 2
  const PatchReport r = patch(d, w, d.all_vertices(), delta, z);
  REQUIRE(r.patched());
  CHECK(r.special.front() == *std::min_element(w.vertices.begin(), w.vertices.end()));
  CHECK(r.special.size() == 5);  // counter passes 2 after edges 3, 6, 9, 12
  CHECK(r.outputs.size() >= 2);
  CHECK(same_parity(d, w, r.outputs));
  std::int64_t total = 0;
  for (std::size_t i = 0; i < r.outputs.size(); ++i) {
    CHECK(is_closed(d, r.outputs[i]));
    CHECK(r.nonspecial_internal[i] <= (z / 3.0 + 2) * delta);
    total += r.outputs[i].cost(d);
  }
  CHECK(total == w.cost(d) + r.added_cost);
  CHECK(r.max_path_cost <= delta);
  // Two copies of the path to each special vertex other than r.
  std::int64_t paths = 0;
  const auto dist = dijkstra_within(WeightedGraph::of_dual(d), d.all_vertices(), r.special.front());
  for (std::size_t t = 1; t < r.special.size(); ++t) paths += 2 * dist[r.special[t]];
  CHECK(r.added_cost == paths);
}

TEST_CASE("patch on a sub-cluster adds only internal edges") {
  const GridDual gd = grid_as_dual(5, 5);
  const DualGraph& d = gd.d;
  const ClosedWalk w = border(gd, 5, 5);
  // Top two rows.
  VertexSet k;
  for (int v = 0; v < 10; ++v) k.insert(gd.at[v]);
  const PatchReport r = patch(d, w, k, 2, 1);
  REQUIRE(r.patched());
  CHECK(same_parity(d, w, r.outputs));
  std::vector<int> count(d.num_edges(), 0);
  for (EdgeId e : w.edges) ++count[e];
  for (const auto& o : r.outputs) {
    for (EdgeId e : o.edges) {
      if (--count[e] < 0) CHECK(d.internal(e, k));
    }
  }
  for (VertexId v : r.special) CHECK(k.contains(v));
}

TEST_CASE("patch output covers the separated demand") {
  for (int seed = 1; seed <= 5; ++seed) {
    GraphSpec s = make_grid(3, 4);
    randomize_weights(s, 4, 3, 5, seed);
    const auto g = EmbeddedPlanarGraph::build(s);
    const DualGraph d = DualGraph::build(g);
    const DualCycle c0 = optimal_cycle(g, d);
    const PatchReport r = patch(d, c0.walk(), d.all_vertices(), 1, 1);
    CHECK(check_separation_cover(d, c0, r.outputs));
    CHECK(check_parity(d, c0, r.outputs));
  }
}

TEST_CASE("virtual procedure on a trivial instance keeps the optimum") {
  const auto g = EmbeddedPlanarGraph::build(fixtures::c4());
  const DualGraph d = DualGraph::build(g);
  const NdhcTree t = NdhcTree::build(d, {.n = 4, .seed = 3});
  const DualCycle c0 = optimal_cycle(g, d);
  const VirtualRunReport r = run_virtual(t, c0);
  CHECK(r.failure == VirtualFailure::None);
  CHECK(r.final_cycles.size() == 1);
  CHECK(r.cost_ratio() == 1.0);
  CHECK(r.separation_ok);
  CHECK(r.forcing_ok());
}

TEST_CASE("virtual procedure invariants on grids and wheels") {
  int runs = 0, patched_runs = 0;
  for (int fam = 0; fam < 2; ++fam) {
    for (int seed = 1; seed <= 4; ++seed) {
      GraphSpec s = fam == 0 ? make_grid(3, 3) : make_wheel(5);
      randomize_weights(s, 3, 4, 5, seed);
      const auto g = EmbeddedPlanarGraph::build(s);
      const DualGraph d = DualGraph::build(g);
      const DualCycle c0 = optimal_cycle(g, d);
      for (int z : {1, 2, 0}) {
        const NdhcTree t = NdhcTree::build(d, {.z = z, .n = g.num_vertices(), .max_nodes = 4000,
                                               .seed = static_cast<std::uint64_t>(seed)});
        const VirtualRunReport r = run_virtual(t, c0);
        INFO(r.to_text(t.z()));
        ++runs;
        if (r.patched > 0) ++patched_runs;
        CHECK(r.parity_ok);
        CHECK(r.internal_ok);
        CHECK(r.separation_ok);
        CHECK(r.size_ok);
        CHECK(r.final_cost >= r.c0_cost);
        for (const LevelCost& lc : r.levels) CHECK(lc.after >= lc.before);
        if (r.failure == VirtualFailure::None) {
          CHECK(r.certificates.size() == r.final_cycles.size());
          for (const auto& c : r.certificates) {
            CHECK(c.is_forcing);
            CHECK(c.max_normal <= t.z());
          }
        }
      }
    }
  }
  CHECK(runs == 24);
  CHECK(patched_runs > 0);
}

TEST_CASE("find_amenable_forcing agrees with the path check") {
  GraphSpec s = make_grid(3, 3);
  randomize_weights(s, 3, 2, 5, 9);
  const auto g = EmbeddedPlanarGraph::build(s);
  const DualGraph d = DualGraph::build(g);
  const NdhcTree t = NdhcTree::build(d, {.z = 2, .n = 9, .seed = 5});
  const auto cycles = all_simple_cycles(d);
  int found = 0;
  for (const DualCycle& c : cycles) {
    try {
      const Forcing phi = find_amenable_forcing(t, c.walk());
      ++found;
      CHECK(t.is_forcing(phi));
      for (int p : t.retained(phi)) CHECK(amenable_on_path(t, c.walk(), p));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAmenable);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("guided run matches the full-tree run's checks") {
  for (int seed = 1; seed <= 6; ++seed) {
    GraphSpec s = seed % 2 ? make_grid(3, 3) : make_wheel(6);
    randomize_weights(s, 3, 6, 5, seed);
    const auto g = EmbeddedPlanarGraph::build(s);
    const DualGraph d = DualGraph::build(g);
    const DualCycle c0 = optimal_cycle(g, d);
    for (int z : {3, 0}) {
      const VirtualRun vr = run_virtual_guided(d, c0, {.z = z, .n = g.num_vertices(), .seed = static_cast<std::uint64_t>(seed)});
      const VirtualRunReport& r = vr.report;
      INFO(r.to_text(vr.tree.z()));
      CHECK_NOTHROW(vr.tree.validate());
      CHECK(r.failure != VirtualFailure::KappaMissing);
      CHECK(r.separation_ok);
      CHECK(r.parity_ok);
      CHECK(r.cost_ratio() <= 1.0 + 12.0 * r.levels_run / vr.tree.z());
      if (r.failure == VirtualFailure::None) CHECK(r.forcing_ok());
      if (z == 0) CHECK(r.failure == VirtualFailure::None);
      // The same tree replayed through the full-tree driver agrees.
      const VirtualRunReport again = run_virtual(vr.tree, c0);
      CHECK(again.to_text(vr.tree.z()) == r.to_text(vr.tree.z()));
    }
  }
}
