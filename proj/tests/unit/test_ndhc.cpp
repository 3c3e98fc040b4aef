#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "planarcut/generators.hpp"
#include "planarcut/ndhc.hpp"
#include "planarcut/oracle.hpp"

using namespace planarcut;

namespace {

NdhcTree tree_of(const GraphSpec& s, NdhcParams p = {}) {
  const auto g = EmbeddedPlanarGraph::build(s);
  if (p.n == 0) p.n = g.num_vertices();
  return NdhcTree::build(DualGraph::build(g), p);
}

}  // namespace

TEST_CASE("single-vertex dual") {
  GraphSpec s;
  s.n = 1;
  s.rotation.assign(1, {});
  const NdhcTree t = tree_of(s);
  CHECK(t.size() == 2);
  CHECK(t.node(1).children.empty());
  CHECK(t.boundary_plus(0).empty());
}

TEST_CASE("two-vertex dual shatters quickly") {
  const NdhcTree t = tree_of(fixtures::c4(), {.z = 2, .a = 2, .n = 4});
  for (int id : t.cluster_nodes()) {
    if (t.node(id).children.empty()) CHECK(t.node(id).cluster.size() == 1);
  }
  for (int id : t.partition_nodes()) {
    CHECK(t.node(id).depth <= 4);
    if (!t.node(id).shattering) CHECK(t.node(id).parts.size() <= 4);
  }
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("merge parts") {
  const auto path = WeightedGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}});
  const std::vector<VertexSet> singles{VertexSet::single(0), VertexSet::single(1), VertexSet::single(2)};
  CHECK(merge_parts(path, singles, 0b111).size() == 3);
  const auto chain = merge_parts(path, singles, 0b001);
  REQUIRE(chain.size() == 1);
  CHECK(chain[0].first == VertexSet::range(3));
  CHECK(chain[0].second == 0b111);
  CHECK_THROWS_AS(merge_parts(path, singles, 0), Error);
  const auto two = merge_parts(path, singles, 0b101);
  CHECK(two.size() == 2);
}

TEST_CASE("merge parts bounds the part count on random partitions") {
  GraphSpec s = make_grid(4, 4);
  const auto g = EmbeddedPlanarGraph::build(s);
  const auto d = DualGraph::build(g);
  const auto h = WeightedGraph::of_dual(d);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    StreamRng rng(seed);
    const auto p = sample_bounded_partition(h, d.all_vertices(), 1.5, rng);
    if (p.parts.size() < 3) continue;
    const auto m = merge_parts(h, p.parts, 0b101);
    CHECK(m.size() <= 2);
    VertexSet u;
    for (const auto& [part, mask] : m) u |= part;
    CHECK(u == d.all_vertices());
  }
}

TEST_CASE("built trees satisfy the structural invariants") {
  for (const GraphSpec& s : {make_grid(3, 3), make_wheel(6), make_grid(2, 4), fixtures::k4()}) {
    const NdhcTree t = tree_of(s, {.epsilon = 0.5, .seed = 7});
    CHECK_NOTHROW(t.validate());
    MESSAGE("nodes=" << t.size() << " partitions=" << t.partition_nodes().size() << " height=" << t.height()
                     << " diameter=" << t.diameter());
    CHECK(t.boundary_plus(0).empty());
    for (int p : t.partition_nodes()) {
      // The boundary of pi+ is the disjoint union of boundaries along the path.
      VertexSet u;
      bool disjoint = true;
      for (int q : t.partn_path(p)) {
        disjoint = disjoint && !u.intersects(t.boundary(q));
        u |= t.boundary(q);
      }
      CHECK(disjoint);
      CHECK(u == t.boundary_plus(p));
      CHECK(partition_boundary(t.dual(), t.pi_plus(p)) == t.boundary_plus(p));
      CHECK(t.lca(p, p) == p);
      CHECK(t.lca(0, p) == 0);
    }
  }
}

TEST_CASE("crossings two ways") {
  const NdhcTree t = tree_of(make_grid(3, 3), {.seed = 3});
  const auto cycles = all_simple_cycles(t.dual());
  for (int p : t.partition_nodes()) {
    for (const DualCycle& c : cycles) {
      CHECK(t.crossings(c.walk(), p) == t.crossings_by_parts(c.walk(), p));
      if (t.node(p).parts.size() == 1) CHECK(t.crossings(c.walk(), p) == 0);
    }
  }
}

TEST_CASE("forcings induce ordinary hierarchies") {
  const NdhcTree t = tree_of(make_wheel(5), {.seed = 5});
  Forcing phi;
  std::vector<int> stack{1};
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    const auto& ch = t.node(c).children;
    if (ch.empty()) continue;
    phi[c] = ch.back();
    for (int cc : t.node(ch.back()).children) stack.push_back(cc);
  }
  CHECK(t.is_forcing(phi));
  const auto kept = t.retained(phi);
  std::set<int> kept_set(kept.begin(), kept.end());
  for (const auto& [c, p] : phi) CHECK(kept_set.count(p));
  // Exactly one retained partition node below every retained non-leaf cluster.
  for (int p : kept) {
    for (int c : t.node(p).children) {
      int count = 0;
      for (int q : t.node(c).children) count += kept_set.count(q);
      CHECK(count == (t.node(c).children.empty() ? 0 : 1));
    }
  }
  Forcing partial = phi;
  partial.erase(1);
  CHECK(!t.is_forcing(partial));
}

TEST_CASE("construction is deterministic") {
  const NdhcTree a = tree_of(make_grid(3, 3), {.seed = 11});
  const NdhcTree b = tree_of(make_grid(3, 3), {.seed = 11});
  CHECK(a.dump() == b.dump());
}
