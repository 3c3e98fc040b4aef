#pragma once

#include <span>
#include <vector>

#include "planarcut/sparsity.hpp"

namespace planarcut {

/// True iff every demand pair separated by c0 is separated by some walk in
/// `walks` (separation by a walk is by the parity of its edge multiset).
bool check_separation_cover(const DualGraph& d, const DualCycle& c0, std::span<const ClosedWalk> walks);

/// Each edge occurs an odd number of times across `walks` iff it is in c0.
bool check_parity(const DualGraph& d, const DualCycle& c0, std::span<const ClosedWalk> walks);

struct SparseChoice {
  std::size_t index = 0;  // walk whose parity side is sparse enough
  Ratio walk_ratio;       // cost(walk) / demand(parity side)
  DualCycle cycle;        // simple cycle extracted from that side
  CutResult cut;
};

/// Picks a walk whose cost over separated demand is at most (1+eps)*s, where
/// s is the sparsity of c0, and extracts a simple cycle no worse than it.
/// Throws PreconditionViolated when the cover or total-cost premise fails.
SparseChoice select_sparse_cycle(const DualGraph& d, const DualCycle& c0, std::span<const ClosedWalk> walks,
                                 double eps);

}  // namespace planarcut
