#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "planarcut/common.hpp"

namespace planarcut {

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  std::int64_t cost = 1;
};

/// Demand between an unordered vertex pair; stored with u < v.
struct Demand {
  VertexId u = 0;
  VertexId v = 0;
  std::int64_t amount = 0;
};

/// Raw description of an embedded graph. `rotation[v]` lists the edges
/// incident to v in cyclic order; a self-loop appears twice.
struct GraphSpec {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> rotation;
  std::vector<Demand> demands;
};

/// Connected graph with a rotation system, integer edge costs and pairwise
/// demands. Dart 2e runs edges[e].u -> edges[e].v and dart 2e+1 the reverse.
///
/// Construction traces the faces of the rotation system and certifies the
/// embedding with Euler's formula; objects are immutable afterwards.
class EmbeddedPlanarGraph {
 public:
  /// Throws Error{Disconnected} or Error{EulerViolation}.
  static EmbeddedPlanarGraph build(const GraphSpec& spec);

  /// Same, with the rotation given directly as darts leaving each vertex.
  static EmbeddedPlanarGraph build_from_darts(int n, std::vector<Edge> edges,
                                              std::vector<std::vector<int>> dart_rotation,
                                              std::vector<Demand> demands);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_faces() const { return num_faces_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  static int twin(int dart) { return dart ^ 1; }
  static EdgeId edge_of(int dart) { return dart >> 1; }
  VertexId tail(int dart) const { return (dart & 1) ? edges_[dart >> 1].v : edges_[dart >> 1].u; }
  VertexId head(int dart) const { return tail(twin(dart)); }

  /// Next dart along the boundary of the face containing `dart`.
  int face_next(int dart) const;
  FaceId face_of_dart(int dart) const { return dart_face_[dart]; }

  /// Darts leaving v in rotation order.
  std::span<const int> rotation(VertexId v) const { return rotation_[v]; }

  /// Faces incident to v, one per corner (may repeat).
  std::vector<FaceId> faces_around(VertexId v) const;

  /// Boundary walk of face f as darts in traversal order.
  std::vector<int> face_boundary(FaceId f) const;

  /// Aggregated positive demands, sorted by (u, v).
  std::span<const Demand> demands() const { return demands_; }
  std::int64_t demand(VertexId a, VertexId b) const;
  std::int64_t total_demand() const;

  /// Vertices adjacent through non-loop edges, with the edge used.
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency() const;

  /// Equivalent spec (rotation as edge ids, self-loop darts in order 2e, 2e+1).
  GraphSpec to_spec() const;

 private:
  int n_ = 0;
  int num_faces_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> rotation_;
  std::vector<int> dart_pos_;  // position of dart in its tail's rotation
  std::vector<FaceId> dart_face_;
  std::vector<Demand> demands_;
};

/// True when G[side] and G[V \ side] are both connected and side is a
/// nonempty proper subset.
bool is_simple_cut(const EmbeddedPlanarGraph& g, VertexSet side);

/// Connected components of G[subset], each as a vertex set, ordered by
/// smallest member.
std::vector<VertexSet> components(const EmbeddedPlanarGraph& g, VertexSet subset);

}  // namespace planarcut
