#pragma once

#include <vector>

#include "planarcut/sparsity.hpp"

namespace planarcut {

struct OracleResult {
  CutResult best;                 // side never contains vertex 0
  std::uint64_t subsets_checked = 0;
};

/// Exhaustive minimum sparsity over all nonempty proper vertex subsets.
/// Ties go to the smallest bitmask. Throws TooLarge above `limit` vertices
/// and NoDemand when no pair has positive demand.
OracleResult brute_force_sparsest(const EmbeddedPlanarGraph& g, int limit = 16);

/// Single-threaded reference for the above; identical output.
OracleResult brute_force_sparsest_serial(const EmbeddedPlanarGraph& g, int limit = 16);

/// Every simple cycle of the dual exactly once (self-loops and 2-cycles on
/// distinct parallel edges included). Each cycle starts at its smallest
/// vertex and its first edge id is below its last. Output order is
/// deterministic. Throws CycleBudgetExceeded past `budget` cycles.
std::vector<DualCycle> all_simple_cycles(const DualGraph& d, std::size_t budget = 200000);

/// Smallest sparsity over all simple dual cycles (infinite if none).
Ratio min_cycle_sparsity(const DualGraph& d, const std::vector<DualCycle>& cycles);

}  // namespace planarcut
