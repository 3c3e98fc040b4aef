#pragma once

#include <vector>

#include "planarcut/ndhc.hpp"

namespace planarcut {

/// Realizable profiles inside(C) ∩ ∂+(p) of one partition node, sorted by
/// bitmask, each with the index of a witness cycle.
struct ProfileSet {
  int node = -1;
  std::vector<VertexSet> profiles;
  std::vector<int> witness;

  int index_of(VertexSet s) const;
  std::size_t size() const { return profiles.size(); }
};

/// Profiles of every partition node (indexed by node id; empty for
/// cluster nodes) over a shared list of simple dual cycles.
struct ProfileTable {
  std::vector<DualCycle> cycles;
  std::vector<ProfileSet> by_node;

  const ProfileSet& at(int p) const { return by_node[p]; }
};

/// True when the walk crosses at most Z times at every normal node and
/// never at a shattering node of partn_path(p).
bool amenable_on_path(const NdhcTree& t, const ClosedWalk& w, int p);

/// Edges of G* crossing pi+(p), ascending.
std::vector<EdgeId> crossing_edges_plus(const NdhcTree& t, int p);

ProfileSet enumerate_aplus(const NdhcTree& t, int p, const std::vector<DualCycle>& cycles);

/// All partition nodes; the cycle list comes from all_simple_cycles.
/// Throws CycleBudgetExceeded.
ProfileTable enumerate_all_profiles(const NdhcTree& t, std::size_t cycle_budget = 200000);

/// Same profiles computed by guessing crossing sets: for each set X of at
/// most (H+1)Z edges crossing pi+(p), find the simple cycles (by edge-subset
/// search, independent of the backtracking enumerator) whose crossings are
/// exactly X and take their profiles. Throws TooLarge past `max_edges`.
std::vector<VertexSet> enumerate_aplus_by_crossings(const NdhcTree& t, int p, int max_edges = 20);

/// { S ∪ S' } over S in a, S' in b, sorted and deduplicated.
std::vector<VertexSet> aplus_pair(const std::vector<VertexSet>& a, const std::vector<VertexSet>& b);

/// Re-checks that every stored witness reproduces its profile and is
/// amenable along the path.
bool verify_witnesses(const NdhcTree& t, const ProfileTable& table);

/// A forcing under which the walk is amenable at every retained node
/// (at most Z crossings at normal nodes, none at shattering nodes). Among
/// children the smallest id that works is taken. Throws NotAmenable.
Forcing find_amenable_forcing(const NdhcTree& t, const ClosedWalk& w);

}  // namespace planarcut
