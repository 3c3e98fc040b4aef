#pragma once

#include <optional>
#include <vector>

#include "planarcut/graph.hpp"
#include "planarcut/sparsity.hpp"

namespace planarcut {

/// An instance rescaled to small integers for one guess of the costliest
/// cut edge and the largest separated demand pair.
///
/// Scaling uses the vertex count n of the original graph: a kept edge of
/// cost c becomes ceil(c * n^2 / c_max) and a kept (aggregated) demand d
/// becomes floor(d * n^3 / d_max). Edges costlier than the guessed edge are
/// contracted; demands above the guessed pair's are deleted.
struct NormalizedInstance {
  EmbeddedPlanarGraph graph;
  bool identity = false;                 // no contraction, no rescaling
  EdgeId guess_edge = -1;                // original edge id
  VertexId guess_u = -1, guess_v = -1;   // original demand pair
  std::int64_t cost_cap = 0;             // c_max
  std::int64_t demand_cap = 0;           // d_max after aggregation
  int original_n = 0;
  std::vector<VertexId> vertex_map;      // original vertex -> normalized vertex
  std::vector<EdgeId> edge_origin;       // normalized edge -> original edge
  std::vector<EdgeId> contracted;        // original edges contracted away

  /// Original vertices whose image lies in `side`.
  VertexSet lift(VertexSet side) const;
};

/// Throws InvalidGuess when the edge does not exist, the pair has no
/// demand, or the pair's endpoints are merged by the contraction.
NormalizedInstance normalize_instance(const EmbeddedPlanarGraph& g, EdgeId guess_edge, VertexId a, VertexId b);

/// The instance itself, when costs already lie in [0, n^2] and demands in
/// [0, n^3]; nullopt otherwise.
std::optional<NormalizedInstance> identity_instance(const EmbeddedPlanarGraph& g);

/// Guess used by single-guess mode: the identity when in range, otherwise
/// (costliest edge, largest demand pair).
NormalizedInstance single_guess(const EmbeddedPlanarGraph& g);

/// Lazily yields one normalized instance per (edge, positive-demand pair)
/// guess, skipping guesses that are invalid for the graph.
class GuessStream {
 public:
  explicit GuessStream(const EmbeddedPlanarGraph& g);
  std::optional<NormalizedInstance> next();
  std::size_t total_guesses() const { return g_.num_edges() * g_.demands().size(); }

 private:
  const EmbeddedPlanarGraph& g_;
  std::size_t edge_ = 0;
  std::size_t pair_ = 0;
};

/// Every instance of the stream, in stream order.
std::vector<NormalizedInstance> guess_iterator(const EmbeddedPlanarGraph& g);

/// Embedded contraction of the given edges (self-loops created along the
/// way are dropped). Demands at merged vertices are summed. Returns the
/// contracted graph, the vertex map and the surviving edge origins.
EmbeddedPlanarGraph contract_edges(const EmbeddedPlanarGraph& g, const std::vector<EdgeId>& edges,
                                   std::vector<VertexId>& vertex_map, std::vector<EdgeId>& edge_origin);

/// G with every bridge contracted. A bond that contains a bridge is that
/// bridge alone, so the other simple cuts of G are exactly the simple cuts
/// of the core; its dual has no self-loops.
struct BridgeCore {
  EmbeddedPlanarGraph graph;
  std::vector<VertexId> vertex_map;  // original vertex -> core vertex
  std::vector<EdgeId> bridges;

  /// Original vertices whose image lies in `u`.
  VertexSet lift(VertexSet u) const;
};

BridgeCore bridge_core(const EmbeddedPlanarGraph& g);

/// Sparsest single-bridge cut (side without vertex 0; lowest edge id on
/// ties). Infinite when no bridge separates demand.
CutResult best_bridge_cut(const EmbeddedPlanarGraph& g, const std::vector<EdgeId>& bridges);

}  // namespace planarcut
