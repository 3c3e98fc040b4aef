#pragma once

#include <vector>

#include "planarcut/graph.hpp"

namespace fixtures {

using planarcut::GraphSpec;

/// Square 0-1-2-3 with unit costs and demand(0,2) = 1.
GraphSpec c4();

/// K4 with a planar rotation, unit costs, demand(0,1) = 1.
GraphSpec k4();

/// Grid or wheel with the given demands.
GraphSpec grid(int rows, int cols, std::vector<planarcut::Demand> demands = {});
GraphSpec wheel(int spokes, std::vector<planarcut::Demand> demands = {});

/// Path 0-1-...-(n-1) with the given costs (size n-1).
GraphSpec path(const std::vector<std::int64_t>& costs, std::vector<planarcut::Demand> demands = {});

/// All connected simple graphs with at most `max_n` vertices and at most
/// `max_edges` edges, one per isomorphism class, each with a rotation
/// system that passes the Euler check and deterministic pseudo-random
/// demands (every graph with n >= 2 gets at least one positive pair).
std::vector<GraphSpec> small_planar_graphs(int max_n, int max_edges);

/// A rotation passing the Euler check for the given simple graph, found by
/// exhaustive search; empty optional-like result (n == 0) if none exists.
GraphSpec embed(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace fixtures
