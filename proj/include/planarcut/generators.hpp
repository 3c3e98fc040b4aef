#pragma once

#include <cstdint>

#include "planarcut/graph.hpp"

namespace planarcut {

struct GeneratorParams {
  int rows = 3;
  int cols = 3;
  int spokes = 5;           // wheel rim size
  double keep = 0.7;        // random-planar: probability an edge survives deletion
  int demand_pairs = 3;
  std::int64_t max_cost = 1;
  std::int64_t max_demand = 10;
  std::uint64_t seed = 1;
};

/// rows x cols grid with counterclockwise rotations.
GraphSpec make_grid(int rows, int cols);

/// Hub 0 joined to a rim cycle 1..spokes.
GraphSpec make_wheel(int spokes);

/// Triangulated grid with edges deleted at random while the graph stays
/// connected; the embedding is inherited from the triangulation.
GraphSpec make_random_planar(int rows, int cols, double keep, std::uint64_t seed);

/// Replaces costs by uniform draws in [1, max_cost] and demands by
/// `pairs` distinct random pairs with amounts in [1, max_demand].
void randomize_weights(GraphSpec& spec, int pairs, std::int64_t max_cost, std::int64_t max_demand,
                       std::uint64_t seed);

/// Family "grid", "wheel" or "random-planar". Throws InvalidParams.
GraphSpec generate_family(const std::string& family, const GeneratorParams& p);

}  // namespace planarcut
