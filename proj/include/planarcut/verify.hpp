#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planarcut/graph.hpp"

namespace planarcut {

/// Outcome of one invariant or statistical suite. `lines` hold measured
/// statistics as "key value" pairs in a fixed order; `failure` names the
/// first violated invariant.
struct SuiteReport {
  std::string suite;
  bool passed = false;
  std::vector<std::string> lines;
  std::string failure;

  std::string to_text() const;
};

struct VerifyParams {
  std::uint64_t seed = 1;
  int max_edges = 8;                          // duality fixture limit
  std::size_t decoupling_samples = 1'000'000;
  std::uint64_t ldd_samples = 10'000;         // per (D, seed)
  int ldd_seeds = 3;
  std::vector<double> ldd_bounds{4, 8, 16};
  int patch_fixtures = 24;
  std::vector<int> patch_small_z{3, 4, 6};
  int marginal_samples = 100'000;
  double epsilon = 0.5;
};

/// Simple cuts vs simple dual cycles on every duality fixture.
SuiteReport verify_duality(const VerifyParams& p);
/// L - (b+c)/2 >= -1e-12 over uniform simplex samples.
SuiteReport verify_decoupling(const VerifyParams& p);
/// Boundedness, per-edge cut frequency against a fitted beta, and beta
/// stability (within 20% of the mean) across seeds, on a weighted 5x5 grid.
SuiteReport verify_ldd(const VerifyParams& p);
/// Virtual procedure on fixtures with n <= 12: parity and separation,
/// cost ratio, and forcings with at most Z crossings at the default Z;
/// parity and cost ratio at the small explicit Z values.
SuiteReport verify_patch(const VerifyParams& p);
/// Rounding frequencies against x({p},S), y on edges and y/2 on demand
/// pairs, each within three binomial standard deviations.
SuiteReport verify_lp_marginals(const VerifyParams& p);

std::vector<std::string> suite_names();
/// Throws InvalidParams for an unknown suite.
SuiteReport run_suite(const std::string& name, const VerifyParams& p);

/// Patch-suite fixtures: grids, wheels and random planar graphs with at
/// most 12 vertices and weighted demands.
std::vector<GraphSpec> patch_fixtures(int count, std::uint64_t seed);

}  // namespace planarcut
