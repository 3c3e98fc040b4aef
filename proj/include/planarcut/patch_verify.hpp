#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planarcut/ndhc.hpp"

namespace planarcut {

struct PatchReport {
  ClosedWalk input;
  std::vector<ClosedWalk> outputs;
  double threshold = 0;                 // (Z/3) * Delta
  std::int64_t internal_cost = 0;       // cost of input edges internal to K, with multiplicity
  std::vector<VertexId> special;        // special vertices in traversal order; special[0] is the start r
  std::vector<EdgeId> special_edges;
  std::int64_t added_cost = 0;          // cost of the doubled shortest paths
  std::int64_t max_path_cost = 0;
  std::vector<std::int64_t> nonspecial_internal;  // per output
  bool path_missing = false;            // G*[K] did not connect r to a special vertex

  bool patched() const { return special.size() > 1; }
};

/// Splits a walk whose cost inside G*[k] exceeds (z/3)*delta into walks
/// through shortest paths from the start r to each special vertex. Below the
/// threshold, or when k holds no vertex of the walk, returns the input.
PatchReport patch(const DualGraph& d, const ClosedWalk& c, VertexSet k, double delta, int z);

/// Each edge occurs an odd number of times across `outputs` iff it occurs an
/// odd number of times in `input`.
bool same_parity(const DualGraph& d, const ClosedWalk& input, const std::vector<ClosedWalk>& outputs);

struct CycleNode {
  ClosedWalk walk;
  int parent = -1;       // in the tree of cycles
  int born_level = 0;
  bool alive = true;
  Forcing psi;           // inherited table entries: cluster -> partition node
};

struct LevelCost {
  int level = 0;
  std::int64_t before = 0;
  std::int64_t after = 0;
  int patched = 0;
};

struct CycleCertificate {
  int cycle = -1;
  Forcing phi;
  bool is_forcing = false;
  int max_normal = 0;          // most crossings at a retained normal node
  int max_shattering = 0;      // most crossings at a retained shattering node
  int retained_nodes = 0;
  bool amenable = false;       // is_forcing and max_normal <= Z
};

enum class VirtualFailure { None, Crossing, KappaTooLarge, KappaMissing };

const char* to_string(VirtualFailure f);

struct VirtualRunReport {
  std::vector<CycleNode> cycles;
  std::vector<int> final_cycles;
  VirtualFailure failure = VirtualFailure::None;
  int failure_cluster = -1;
  int failure_cycle = -1;

  std::int64_t c0_cost = 0;
  std::int64_t final_cost = 0;
  std::vector<LevelCost> levels;
  int levels_run = 0;

  int patch_calls = 0;
  int patched = 0;
  bool parity_ok = true;          // every patch call preserved parity
  bool internal_ok = true;        // every added edge is internal to its cluster
  int path_over_delta = 0;        // precondition diagnostics
  int path_missing = 0;
  int nonspecial_over = 0;        // outputs above (Z/3 + 2) * Delta
  int added_over = 0;             // patch calls above 12 * internal / Z
  bool separation_ok = false;     // final collection covers C0's demand pairs
  bool size_ok = false;           // |collection| <= final_cost / min edge cost
  std::vector<CycleCertificate> certificates;

  double cost_ratio() const { return c0_cost ? static_cast<double>(final_cost) / static_cast<double>(c0_cost) : 1.0; }
  bool forcing_ok() const;
  std::string to_text(int z) const;
};

/// Runs the virtual procedure on the tree built by the construction, using
/// its stored samples and kappa choices, starting from c0.
VirtualRunReport run_virtual(const NdhcTree& t, const DualCycle& c0);

struct VirtualRun {
  NdhcTree tree;
  VirtualRunReport report;
};

/// Builds the tree and runs the virtual procedure together, materializing
/// only the (sample, kappa) children that the procedure selects. The full
/// tree has n^O(Z) nodes; every check in the report refers only to the
/// selected children, so it is unaffected.
VirtualRun run_virtual_guided(const DualGraph& d, const DualCycle& c0, const NdhcParams& params);

}  // namespace planarcut
