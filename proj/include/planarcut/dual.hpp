#pragma once

#include <limits>
#include <span>
#include <vector>

#include "planarcut/graph.hpp"

namespace planarcut {

/// Faces-as-vertices dual of an embedded graph. Dual edge e is primal edge e;
/// it joins the faces on the two sides of e, so the dual may have parallel
/// edges and self-loops (a primal bridge has the same face on both sides).
///
/// The "faces" of the dual are the primal vertices. One of them, f_inf, is
/// designated as the infinite face; enclosed sets never contain it.
class DualGraph {
 public:
  static DualGraph build(const EmbeddedPlanarGraph& primal, VertexId f_inf = 0);

  const EmbeddedPlanarGraph& primal() const { return primal_; }
  int num_vertices() const { return primal_.num_faces(); }
  int num_edges() const { return primal_.num_edges(); }
  VertexId infinite_face() const { return f_inf_; }

  FaceId end0(EdgeId e) const { return ends_[e].first; }
  FaceId end1(EdgeId e) const { return ends_[e].second; }
  FaceId other_end(EdgeId e, FaceId x) const { return ends_[e].first == x ? ends_[e].second : ends_[e].first; }
  bool is_loop(EdgeId e) const { return ends_[e].first == ends_[e].second; }
  std::int64_t cost(EdgeId e) const { return primal_.edge(e).cost; }

  /// (neighbor, edge) pairs; a self-loop is listed once.
  std::span<const std::pair<FaceId, EdgeId>> incident(FaceId x) const { return adj_[x]; }

  /// Dual vertices (primal faces) around primal vertex s.
  VertexSet around(VertexId s) const { return around_[s]; }

  VertexSet all_vertices() const { return VertexSet::range(num_vertices()); }

  /// True when both ends of e lie in `k`.
  bool internal(EdgeId e, VertexSet k) const { return k.contains(end0(e)) && k.contains(end1(e)); }

  /// All-pairs shortest path lengths in G*[subset]; entries outside the
  /// subset or unreachable are kUnreachable.
  std::vector<std::vector<std::int64_t>> distances(VertexSet subset) const;

  /// Strong diameter of `subset` (kUnreachable when G*[subset] is disconnected).
  std::int64_t diameter(VertexSet subset) const;

  static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;

 private:
  EmbeddedPlanarGraph primal_;
  VertexId f_inf_ = 0;
  std::vector<std::pair<FaceId, FaceId>> ends_;
  std::vector<std::vector<std::pair<FaceId, EdgeId>>> adj_;
  std::vector<VertexSet> around_;
};

/// A closed walk in the dual: edges[i] joins vertices[i] and
/// vertices[(i + 1) % size]. Vertices and edges may repeat.
struct ClosedWalk {
  std::vector<FaceId> vertices;
  std::vector<EdgeId> edges;

  std::int64_t cost(const DualGraph& d) const;
};

/// A simple dual cycle together with the primal vertex set it encloses.
class DualCycle {
 public:
  DualCycle() = default;

  /// Validates that `edges` (any order) form one simple cycle and computes
  /// the enclosed set. Throws Error{NotSimple}.
  static DualCycle from_edges(const DualGraph& d, std::vector<EdgeId> edges);

  const std::vector<EdgeId>& edges() const { return walk_.edges; }
  const std::vector<FaceId>& vertices() const { return walk_.vertices; }
  const ClosedWalk& walk() const { return walk_; }
  VertexSet enclosed() const { return enclosed_; }
  std::int64_t cost() const { return cost_; }
  std::size_t size() const { return walk_.edges.size(); }

  /// Edge ids sorted ascending; identical for every rotation/reflection.
  std::vector<EdgeId> edge_set() const;

 private:
  ClosedWalk walk_;
  VertexSet enclosed_;
  std::int64_t cost_ = 0;
};

/// Edges of the primal cut delta(U), ascending.
std::vector<EdgeId> cut_edges(const EmbeddedPlanarGraph& g, VertexSet side);

/// Cycle whose edges are delta(U). Throws EmptyOrFullSet or NotSimple.
DualCycle cycle_of_cut(const DualGraph& d, VertexSet side);

/// Side (not containing f_inf) of the primal cut formed by the edges that
/// occur an odd number of times in `edges`. Two primal vertices are
/// separated by the multiset iff exactly one of them lies in this side.
VertexSet parity_side(const DualGraph& d, std::span<const EdgeId> edges);

/// The dual as an embedded graph: rotation at face f follows f's boundary
/// walk, so dual dart d leaves face_of_dart(d). Its faces correspond to the
/// primal vertices (the face of dart d is tail(d)).
EmbeddedPlanarGraph dual_embedding(const DualGraph& d);

/// Per-edge multiplicity modulo 2 of an edge multiset.
std::vector<char> edge_parity(int num_edges, std::span<const EdgeId> edges);

}  // namespace planarcut
