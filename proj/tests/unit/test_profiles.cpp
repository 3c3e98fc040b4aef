#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "planarcut/generators.hpp"
#include "planarcut/profiles.hpp"

using namespace planarcut;

namespace {

NdhcTree tree_of(const GraphSpec& s, NdhcParams p = {}) {
  const auto g = EmbeddedPlanarGraph::build(s);
  if (p.n == 0) p.n = g.num_vertices();
  return NdhcTree::build(DualGraph::build(g), p);
}

}  // namespace

TEST_CASE("root profiles are the empty set") {
  const NdhcTree t = tree_of(make_grid(3, 3), {.seed = 2});
  const ProfileTable table = enumerate_all_profiles(t);
  REQUIRE(table.at(0).size() == 1);
  CHECK(table.at(0).profiles[0].empty());
  CHECK(verify_witnesses(t, table));
}

TEST_CASE("Z = 0 keeps only non-crossing cycles") {
  const NdhcTree t = tree_of(make_grid(3, 3), {.z = 0 + 1, .seed = 2});
  const ProfileTable table = enumerate_all_profiles(t);
  for (int p : t.partition_nodes()) {
    for (std::size_t i = 0; i < table.at(p).size(); ++i) {
      const int w = table.at(p).witness[i];
      if (w < 0) continue;
      for (int q : t.partn_path(p)) CHECK(t.crossings(table.cycles[w].walk(), q) <= 1);
    }
  }
}

TEST_CASE("cycle enumeration and crossing guesses agree") {
  for (const GraphSpec& s : {fixtures::c4(), fixtures::k4(), make_grid(2, 3), make_wheel(4)}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const NdhcTree t = tree_of(s, {.z = 2, .seed = seed});
      const ProfileTable table = enumerate_all_profiles(t);
      for (int p : t.partition_nodes()) {
        CHECK(enumerate_aplus_by_crossings(t, p) == table.at(p).profiles);
      }
    }
  }
}

TEST_CASE("crossing signature does not determine the profile") {
  // Wheel with five spokes: the triangle 0-1-5 and the 6-cycle through
  // 1-2-3-4-0-5 cross pi+ on the same two edges but enclose different
  // boundary faces.
  const NdhcTree t = tree_of(make_wheel(5), {.seed = 4});
  const ProfileTable table = enumerate_all_profiles(t);
  const int bound = (t.height() + 1) * t.z();
  int conflicts = 0;
  for (int p : t.partition_nodes()) {
    const auto cross = crossing_edges_plus(t, p);
    std::map<std::vector<EdgeId>, VertexSet> by_sig;
    for (const DualCycle& c : table.cycles) {
      std::vector<EdgeId> sig;
      for (EdgeId e : c.edge_set()) {
        if (std::binary_search(cross.begin(), cross.end(), e)) sig.push_back(e);
      }
      const VertexSet prof = c.enclosed() & t.boundary_plus(p);
      auto [it, fresh] = by_sig.try_emplace(sig, prof);
      if (it->second != prof) ++conflicts;
      if (amenable_on_path(t, c.walk(), p)) CHECK(static_cast<int>(sig.size()) <= bound);
    }
  }
  CHECK(conflicts > 0);
}

TEST_CASE("pair products") {
  const std::vector<VertexSet> a{VertexSet(), VertexSet::single(1), VertexSet::of({2, 3})};
  const std::vector<VertexSet> unit{VertexSet()};
  CHECK(aplus_pair(a, unit) == a);
  CHECK(aplus_pair(a, a).size() == 4);
  const std::vector<VertexSet> b{VertexSet::single(4), VertexSet::single(5)};
  CHECK(aplus_pair(a, b).size() == a.size() * b.size());
  const std::vector<VertexSet> c{VertexSet::single(1), VertexSet::of({1, 2})};
  CHECK(aplus_pair(a, c).size() < a.size() * c.size());
}
