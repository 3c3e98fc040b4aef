#pragma once

#include <cstdint>
#include <vector>

#include "planarcut/dual.hpp"
#include "planarcut/rng.hpp"

namespace planarcut {

/// Plain undirected weighted graph on at most 64 vertices; parallel edges
/// and self-loops allowed (loops never matter for distances).
struct WeightedGraph {
  struct Arc {
    VertexId to;
    std::int64_t cost;
    EdgeId edge;
  };
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<Arc>> adj;

  static WeightedGraph from_edges(int n, std::vector<Edge> edges);
  static WeightedGraph of_primal(const EmbeddedPlanarGraph& g);
  static WeightedGraph of_dual(const DualGraph& d);
};

/// Distances from `src` inside the induced subgraph on `subset`.
std::vector<std::int64_t> dijkstra_within(const WeightedGraph& h, VertexSet subset, VertexId src);

/// Max pairwise distance measured inside G[part]; kUnreachable when
/// G[part] is disconnected.
std::int64_t strong_diameter(const WeightedGraph& h, VertexSet part);

struct BoundedPartition {
  std::vector<VertexSet> parts;  // in carving order
  double bound = 0;
  std::uint64_t seed = 0;

  /// Index of the part containing v, or -1.
  int part_of(VertexId v) const;
};

struct LddConfig {
  double beta_target = 8.0;
  std::uint64_t seed = 1;
};

/// Exponential-radius ball carving of H[subset] (see README). Every part has
/// strong diameter at most D. Throws NonpositiveBound when D <= 0.
BoundedPartition sample_bounded_partition(const WeightedGraph& h, VertexSet subset, double bound, StreamRng& rng);

/// True when parts are disjoint, cover `subset` and each has strong
/// diameter <= bound.
bool is_bounded_partition(const WeightedGraph& h, VertexSet subset, const BoundedPartition& p);

struct LddStats {
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> cut_counts;  // per edge of H
  std::uint64_t unbounded = 0;            // samples failing is_bounded_partition
  double beta_hat = 0;                    // max over edges of freq * D / cost

  double frequency(EdgeId e) const { return samples ? static_cast<double>(cut_counts[e]) / samples : 0.0; }
};

/// Monte Carlo over `samples` partitions of all of H, sample i drawn from
/// the stream derive(seed, "ldd", {i}). OpenMP-parallel; counts do not
/// depend on the thread count.
LddStats ldd_monte_carlo(const WeightedGraph& h, double bound, std::uint64_t samples, std::uint64_t seed);

/// Serial reference for ldd_monte_carlo; identical output.
LddStats ldd_monte_carlo_serial(const WeightedGraph& h, double bound, std::uint64_t samples, std::uint64_t seed);

/// Edges whose frequency exceeds beta_target * cost / D by more than
/// three binomial standard deviations.
std::vector<EdgeId> ldd_violations(const WeightedGraph& h, const LddStats& s, double bound, double beta_target);

}  // namespace planarcut
