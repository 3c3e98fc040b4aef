#pragma once

#include <utility>
#include <vector>

#include "planarcut/graph.hpp"

namespace planarcut {

/// A rotation system passing the Euler check for the given graph (parallel
/// edges allowed), found by exhaustive search over rotations; n == 0 in the
/// result when none exists. Unit costs, no demands.
GraphSpec embed_by_search(int n, const std::vector<std::pair<int, int>>& edges);

/// All connected simple graphs with at most `max_n` vertices and at most
/// `max_edges` edges, one per isomorphism class, each embedded, with varied
/// costs in [1, 3] and deterministic pseudo-random demands (every graph with
/// n >= 2 gets at least one positive pair).
std::vector<GraphSpec> small_planar_graphs(int max_n, int max_edges);

/// The duality fixture set: small_planar_graphs(6, max_edges) plus paths,
/// stars and cycles up to max_edges edges, bonds of parallel edges, and
/// small multigraphs, grids and wheels within the edge limit.
std::vector<GraphSpec> duality_fixtures(int max_edges);

}  // namespace planarcut
