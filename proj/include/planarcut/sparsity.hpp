#pragma once

#include <span>
#include <vector>

#include "planarcut/dual.hpp"
#include "planarcut/ratio.hpp"

namespace planarcut {

struct CutResult {
  VertexSet side;
  std::int64_t cost = 0;
  std::int64_t demand = 0;
  Ratio sparsity = Ratio::infinite();
};

std::int64_t cut_cost(const EmbeddedPlanarGraph& g, VertexSet side);
std::int64_t separated_demand(const EmbeddedPlanarGraph& g, VertexSet side);

/// cost(delta(U)) / demand(U); infinite when no demand is separated.
/// Throws EmptyOrFullSet.
CutResult sparsity(const EmbeddedPlanarGraph& g, VertexSet side);

/// Cycle objective: cost of the cycle's edges over the demand between
/// enclosed and non-enclosed primal vertices.
Ratio cycle_objective(const DualGraph& d, const DualCycle& c);

/// Best simple cut obtainable from `side`: the sparsest connected component
/// of G[side], then the sparsest component of the complement of that.
/// The result is never worse than `side` itself.
CutResult best_simple_cut(const EmbeddedPlanarGraph& g, VertexSet side);

}  // namespace planarcut
