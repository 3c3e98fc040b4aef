#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "planarcut/dual.hpp"
#include "planarcut/ldd.hpp"

namespace planarcut {

struct NdhcParams {
  double epsilon = 0.5;
  int z = 0;                      // 0: ceil(3 ln n / epsilon)
  double a = 2.0;
  int repetitions = 0;            // 0: ceil(a ln n)
  int n = 0;                      // primal vertex count used for ln n; 0: faces of the dual
  std::size_t max_kappa = 64;     // kappa subsets tried per sampled partition
  std::size_t max_nodes = 20000;  // expansion stops (clusters shatter) past this many nodes
  std::uint64_t seed = 1;
};

/// Resolved Z and repetition count for the given parameters.
int default_z(int n, double epsilon);
int default_repetitions(int n, double a);

enum class NodeKind { Cluster, Partition };

struct NdhcNode {
  NodeKind kind = NodeKind::Cluster;
  int parent = -1;
  int level = 0;
  int depth = 0;
  std::vector<int> children;

  // Cluster nodes.
  VertexSet cluster;
  std::vector<BoundedPartition> samples;                 // the sampled partitions pi_i
  std::map<std::pair<int, std::uint64_t>, int> choice;   // (i, kappa mask) -> child

  // Partition nodes.
  std::vector<VertexSet> parts;
  bool shattering = false;
  int sample = -1;                          // provenance of the first (i, kappa) producing it
  std::uint64_t kappa = 0;
  std::vector<std::uint64_t> merged_from;   // per part: mask of sample parts merged into it
};

struct NdhcStats {
  std::size_t kappa_truncated = 0;   // samples whose kappa enumeration hit max_kappa
  std::size_t node_cap_hits = 0;     // clusters shattered early because of max_nodes
  std::size_t duplicates = 0;        // child partitions dropped as duplicates
};

/// Partial map cluster node -> child partition node.
using Forcing = std::map<int, int>;

class NdhcTree;

/// Chooses which (sample, kappa) children a cluster gets, in place of the
/// full enumeration. Clusters are offered level by level in id order.
class NdhcGuide {
 public:
  virtual ~NdhcGuide() = default;
  virtual void begin_level(const NdhcTree& t, int level) = 0;
  virtual std::vector<std::pair<int, std::uint64_t>> choose(const NdhcTree& t, int c,
                                                            const std::vector<BoundedPartition>& samples) = 0;
  /// After the chosen children of c exist (node(c).choice is filled).
  virtual void chosen(const NdhcTree& t, int c) = 0;
};

/// Nondeterministic hierarchical clustering of a dual graph. Node 0 is the
/// root partition node, node 1 its cluster child.
class NdhcTree {
 public:
  static NdhcTree build(const DualGraph& d, const NdhcParams& params);
  /// Same construction, but only the children named by the guide are
  /// created. Serial.
  static NdhcTree build_guided(const DualGraph& d, const NdhcParams& params, NdhcGuide& guide);

  const DualGraph& dual() const { return dual_; }
  const NdhcNode& node(int id) const { return nodes_[id]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  bool is_cluster(int id) const { return nodes_[id].kind == NodeKind::Cluster; }
  bool is_partition(int id) const { return nodes_[id].kind == NodeKind::Partition; }
  const std::vector<int>& partition_nodes() const { return partition_ids_; }
  const std::vector<int>& cluster_nodes() const { return cluster_ids_; }

  int z() const { return z_; }
  int repetitions() const { return reps_; }
  std::int64_t diameter() const { return diameter_; }
  int last_level() const { return last_level_; }
  /// Delta_l = diameter / 2^l.
  double delta(int level) const;
  /// Partition depth H: the longest partn_path.
  int height() const { return height_; }
  const NdhcStats& stats() const { return stats_; }

  /// Partition nodes from the root to `id`, inclusive.
  std::vector<int> partn_path(int id) const;
  bool is_ancestor(int a, int b) const;  // a is an ancestor of b or equal
  int lca(int a, int b) const;

  /// pi+(p) as a partition of all dual vertices.
  std::vector<VertexSet> pi_plus(int p) const;
  /// Faces (primal vertices) in the boundary of pi(p), resp. pi+(p).
  VertexSet boundary(int p) const { return boundary_[p]; }
  VertexSet boundary_plus(int p) const { return boundary_plus_[p]; }

  /// Edges of the walk (with multiplicity) internal to K(parent(p)) whose
  /// ends lie in different parts of pi(p).
  int crossings(const ClosedWalk& w, int p) const;
  /// Same through a direct scan of part boundaries; used as a cross-check.
  int crossings_by_parts(const ClosedWalk& w, int p) const;

  /// Cluster node ids reachable from the root under `phi`, and the
  /// retained partition nodes (root included).
  std::vector<int> retained(const Forcing& phi) const;
  bool is_forcing(const Forcing& phi) const;

  /// Throws Error{PreconditionViolated} naming the first broken invariant.
  void validate() const;

  std::string dump() const;

 private:
  DualGraph dual_;
  std::vector<NdhcNode> nodes_;
  std::vector<int> partition_ids_, cluster_ids_;
  std::vector<VertexSet> boundary_, boundary_plus_;
  std::vector<std::vector<int>> part_of_;  // per partition node: dual vertex -> part index or -1
  int z_ = 1, reps_ = 1, last_level_ = 0, height_ = 0;
  std::int64_t diameter_ = 0;
  NdhcStats stats_;

  int add_node(NdhcNode n);
  void finish();
  static NdhcTree build_impl(const DualGraph& d, const NdhcParams& params, NdhcGuide* guide);
};

/// Boundary faces of a partition of a subset of dual vertices.
VertexSet partition_boundary(const DualGraph& d, const std::vector<VertexSet>& parts);

/// Merges parts meeting kappa with adjacent parts that do not, until no
/// such edge is left. kappa is a mask over part indices. Returns the new
/// parts ordered by smallest vertex, each with the mask of merged input
/// parts. Throws EmptyKappa.
std::vector<std::pair<VertexSet, std::uint64_t>> merge_parts(const WeightedGraph& h,
                                                             const std::vector<VertexSet>& parts, std::uint64_t kappa);

}  // namespace planarcut
