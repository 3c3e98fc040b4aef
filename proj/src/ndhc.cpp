#include "planarcut/ndhc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace planarcut {

int default_z(int n, double epsilon) {
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidParams, "epsilon must be positive");
  return std::max(1, static_cast<int>(std::ceil(3.0 * std::log(std::max(n, 2)) / epsilon)));
}

int default_repetitions(int n, double a) {
  if (!(a > 0)) throw Error(ErrorCode::InvalidParams, "a must be positive");
  return std::max(1, static_cast<int>(std::ceil(a * std::log(std::max(n, 2)))));
}

VertexSet partition_boundary(const DualGraph& d, const std::vector<VertexSet>& parts) {
  VertexSet all;
  for (VertexSet p : parts) all |= p;
  VertexSet out;
  const int n = d.primal().num_vertices();
  for (VertexId s = 0; s < n; ++s) {
    const VertexSet around = d.around(s);
    if (!around.subset_of(all)) continue;
    int touched = 0;
    for (VertexSet p : parts) {
      if (p.intersects(around) && ++touched > 1) break;
    }
    if (touched > 1) out.insert(s);
  }
  return out;
}

std::vector<std::pair<VertexSet, std::uint64_t>> merge_parts(const WeightedGraph& h,
                                                             const std::vector<VertexSet>& parts, std::uint64_t kappa) {
  const int m = static_cast<int>(parts.size());
  if (m > 64) throw Error(ErrorCode::InvalidParams, "too many parts");
  const std::uint64_t valid = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  if ((kappa & valid) == 0) throw Error(ErrorCode::EmptyKappa, "kappa is empty");
  std::vector<int> part_of(h.n, -1);
  for (int i = 0; i < m; ++i) parts[i].for_each([&](VertexId v) { part_of[v] = i; });
  std::vector<int> root(m);
  std::iota(root.begin(), root.end(), 0);
  std::vector<std::uint64_t> mask(m);
  std::vector<char> marked(m);
  for (int i = 0; i < m; ++i) {
    mask[i] = std::uint64_t{1} << i;
    marked[i] = (kappa >> i) & 1;
  }
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : h.edges) {
      const int pu = part_of[e.u], pv = part_of[e.v];
      if (pu < 0 || pv < 0) continue;
      const int ru = find(pu), rv = find(pv);
      if (ru == rv || marked[ru] == marked[rv]) continue;
      const int keep = marked[ru] ? ru : rv;
      const int gone = keep == ru ? rv : ru;
      root[gone] = keep;
      mask[keep] |= mask[gone];
      changed = true;
    }
  }
  std::vector<std::pair<VertexSet, std::uint64_t>> out;
  for (int i = 0; i < m; ++i) {
    if (find(i) != i) continue;
    VertexSet s;
    for (int j = 0; j < m; ++j) {
      if ((mask[i] >> j) & 1) s |= parts[j];
    }
    out.push_back({s, mask[i]});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first.min() < y.first.min(); });
  return out;
}

namespace {

struct Candidate {
  std::vector<VertexSet> parts;
  std::vector<std::uint64_t> merged_from;
  std::vector<std::pair<int, std::uint64_t>> choices;
};

struct Expansion {
  std::vector<BoundedPartition> samples;
  std::vector<Candidate> candidates;
  std::size_t truncated = 0;
  std::size_t duplicates = 0;
};

// Calls f(mask) for kappa subsets in enumeration order: all parts first
// (when allowed), then sizes 1..limit in lexicographic order of indices.
template <class F>
bool for_each_kappa(int m, int limit, std::size_t cap, F&& f) {
  std::size_t tried = 0;
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  if (m <= limit) {
    if (tried++ >= cap) return false;
    f(all);
  }
  for (int k = 1; k <= std::min(limit, m); ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::uint64_t mask = 0;
      for (int i : idx) mask |= std::uint64_t{1} << i;
      if (mask != all) {
        if (tried++ >= cap) return false;
        f(mask);
      }
      int j = k - 1;
      while (j >= 0 && idx[j] == m - k + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int t = j + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return true;
}

std::vector<BoundedPartition> draw_samples(const WeightedGraph& h, VertexSet cluster, double bound, int reps,
                                          std::uint64_t seed, int node_id) {
  std::vector<BoundedPartition> out;
  for (int i = 0; i < reps; ++i) {
    StreamRng rng = StreamRng::named(seed, "ndhc", {static_cast<std::uint64_t>(node_id), static_cast<std::uint64_t>(i)});
    out.push_back(sample_bounded_partition(h, cluster, bound, rng));
  }
  return out;
}

class CandidateIndex {
 public:
  CandidateIndex(const WeightedGraph& h, Expansion& ex) : h_(h), ex_(ex) {}

  void add(int i, std::uint64_t kappa) {
    const auto& parts = ex_.samples[i].parts;
    auto merged = merge_parts(h_, parts, kappa);
    std::vector<VertexSet> key;
    for (const auto& pm : merged) key.push_back(pm.first);
    auto [it, fresh] = index_.try_emplace(key, static_cast<int>(ex_.candidates.size()));
    if (fresh) {
      Candidate c;
      c.parts = key;
      for (const auto& pm : merged) c.merged_from.push_back(pm.second);
      ex_.candidates.push_back(std::move(c));
    } else {
      ++ex_.duplicates;
    }
    ex_.candidates[it->second].choices.push_back({i, kappa});
  }

 private:
  const WeightedGraph& h_;
  Expansion& ex_;
  std::map<std::vector<VertexSet>, int> index_;
};

Expansion expand(const WeightedGraph& h, VertexSet cluster, double bound, int reps, int z,
                 std::size_t max_kappa, std::uint64_t seed, int node_id) {
  Expansion ex;
  ex.samples = draw_samples(h, cluster, bound, reps, seed, node_id);
  CandidateIndex index(h, ex);
  for (int i = 0; i < reps; ++i) {
    const int m = static_cast<int>(ex.samples[i].parts.size());
    const bool complete = for_each_kappa(m, 2 * z, max_kappa, [&](std::uint64_t kappa) { index.add(i, kappa); });
    if (!complete) ++ex.truncated;
  }
  return ex;
}

}  // namespace

int NdhcTree::add_node(NdhcNode n) {
  const int id = static_cast<int>(nodes_.size());
  if (n.parent >= 0) {
    n.depth = nodes_[n.parent].depth + 1;
    nodes_[n.parent].children.push_back(id);
  }
  nodes_.push_back(std::move(n));
  return id;
}

double NdhcTree::delta(int level) const { return std::ldexp(static_cast<double>(diameter_), -level); }

NdhcTree NdhcTree::build(const DualGraph& d, const NdhcParams& params) { return build_impl(d, params, nullptr); }

NdhcTree NdhcTree::build_guided(const DualGraph& d, const NdhcParams& params, NdhcGuide& guide) {
  return build_impl(d, params, &guide);
}

NdhcTree NdhcTree::build_impl(const DualGraph& d, const NdhcParams& params, NdhcGuide* guide) {
  NdhcTree t;
  t.dual_ = d;
  const int n = params.n > 0 ? params.n : d.num_vertices();
  t.z_ = params.z > 0 ? params.z : default_z(n, params.epsilon);
  t.reps_ = params.repetitions > 0 ? params.repetitions : default_repetitions(n, params.a);
  const VertexSet all = d.all_vertices();
  t.diameter_ = d.diameter(all);
  if (t.diameter_ >= DualGraph::kUnreachable) throw Error(ErrorCode::Disconnected, "dual graph is disconnected");
  t.last_level_ = 0;
  while ((std::int64_t{1} << t.last_level_) < t.diameter_) ++t.last_level_;

  NdhcNode root;
  root.kind = NodeKind::Partition;
  root.parts = {all};
  root.merged_from = {1};
  t.add_node(std::move(root));
  NdhcNode top;
  top.kind = NodeKind::Cluster;
  top.parent = 0;
  top.cluster = all;
  std::vector<int> frontier{t.add_node(std::move(top))};

  const WeightedGraph h = WeightedGraph::of_dual(d);
  for (int level = 0; level <= t.last_level_; ++level) {
    const double bound = t.delta(level + 1);
    std::vector<int> work;
    for (int c : frontier) {
      if (t.nodes_[c].cluster.size() > 1) work.push_back(c);
    }
    frontier.clear();
    if (!(bound > 0)) break;
    std::vector<Expansion> ex(work.size());
    if (guide) {
      guide->begin_level(t, level);
    } else {
#pragma omp parallel for schedule(dynamic)
      for (std::size_t k = 0; k < work.size(); ++k) {
        ex[k] = expand(h, t.nodes_[work[k]].cluster, bound, t.reps_, t.z_, params.max_kappa, params.seed, work[k]);
      }
    }
    for (std::size_t k = 0; k < work.size(); ++k) {
      const int c = work[k];
      if (t.nodes_.size() >= params.max_nodes) {
        ++t.stats_.node_cap_hits;
        continue;
      }
      if (guide) {
        ex[k].samples = draw_samples(h, t.nodes_[c].cluster, bound, t.reps_, params.seed, c);
        CandidateIndex index(h, ex[k]);
        for (auto [i, kappa] : guide->choose(t, c, ex[k].samples)) {
          if (i < 0 || i >= t.reps_ || std::popcount(kappa) > 2 * t.z_ ||
              (ex[k].samples[i].parts.size() < 64 && (kappa >> ex[k].samples[i].parts.size()) != 0)) {
            throw Error(ErrorCode::PreconditionViolated, "guide chose an invalid kappa");
          }
          index.add(i, kappa);
        }
      }
      t.stats_.kappa_truncated += ex[k].truncated;
      t.stats_.duplicates += ex[k].duplicates;
      t.nodes_[c].samples = std::move(ex[k].samples);
      for (Candidate& cand : ex[k].candidates) {
        NdhcNode p;
        p.kind = NodeKind::Partition;
        p.parent = c;
        p.level = level + 1;
        p.parts = cand.parts;
        p.merged_from = cand.merged_from;
        p.sample = cand.choices.front().first;
        p.kappa = cand.choices.front().second;
        const int pid = t.add_node(std::move(p));
        for (const auto& ch : cand.choices) t.nodes_[c].choice[ch] = pid;
        for (VertexSet part : cand.parts) {
          NdhcNode child;
          child.kind = NodeKind::Cluster;
          child.parent = pid;
          child.level = level + 1;
          child.cluster = part;
          frontier.push_back(t.add_node(std::move(child)));
        }
      }
      if (guide) guide->chosen(t, c);
    }
  }

  // Shatter every non-singleton leaf.
  const int before = t.size();
  for (int c = 0; c < before; ++c) {
    const NdhcNode& node = t.nodes_[c];
    if (node.kind != NodeKind::Cluster || !node.children.empty() || node.cluster.size() <= 1) continue;
    NdhcNode p;
    p.kind = NodeKind::Partition;
    p.parent = c;
    p.level = node.level + 1;
    p.shattering = true;
    node.cluster.for_each([&](VertexId v) { p.parts.push_back(VertexSet::single(v)); });
    const std::vector<VertexSet> parts = p.parts;
    const int pid = t.add_node(std::move(p));
    for (VertexSet part : parts) {
      NdhcNode child;
      child.kind = NodeKind::Cluster;
      child.parent = pid;
      child.level = t.nodes_[pid].level;
      child.cluster = part;
      t.add_node(std::move(child));
    }
  }
  t.finish();
  t.validate();
  return t;
}

void NdhcTree::finish() {
  partition_ids_.clear();
  cluster_ids_.clear();
  const int n = size();
  boundary_.assign(n, VertexSet());
  boundary_plus_.assign(n, VertexSet());
  part_of_.assign(n, {});
  height_ = 0;
  for (int id = 0; id < n; ++id) {
    NdhcNode& node = nodes_[id];
    if (node.kind == NodeKind::Cluster) {
      cluster_ids_.push_back(id);
      continue;
    }
    partition_ids_.push_back(id);
    part_of_[id].assign(dual_.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(node.parts.size()); ++i) {
      node.parts[i].for_each([&](VertexId v) { part_of_[id][v] = i; });
    }
    boundary_[id] = partition_boundary(dual_, node.parts);
    // Parents precede children, so the ancestor's value is ready.
    const int grand = node.parent >= 0 ? nodes_[node.parent].parent : -1;
    boundary_plus_[id] = boundary_[id] | (grand >= 0 ? boundary_plus_[grand] : VertexSet());
    height_ = std::max(height_, static_cast<int>(partn_path(id).size()) - 1);
  }
}

std::vector<int> NdhcTree::partn_path(int id) const {
  std::vector<int> out;
  for (int x = id; x >= 0; x = nodes_[x].parent) {
    if (nodes_[x].kind == NodeKind::Partition) out.push_back(x);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool NdhcTree::is_ancestor(int a, int b) const {
  while (b >= 0 && nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
  return a == b;
}

int NdhcTree::lca(int a, int b) const {
  while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
  while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return a;
}

std::vector<VertexSet> NdhcTree::pi_plus(int p) const {
  const int c = nodes_[p].parent;
  const VertexSet k = c >= 0 ? nodes_[c].cluster : dual_.all_vertices();
  std::vector<VertexSet> out = nodes_[p].parts;
  for (int q : partn_path(p)) {
    if (q == p) continue;
    for (VertexSet part : nodes_[q].parts) {
      if (!k.subset_of(part)) out.push_back(part);
    }
  }
  std::sort(out.begin(), out.end(), [](VertexSet x, VertexSet y) { return x.min() < y.min(); });
  return out;
}

int NdhcTree::crossings(const ClosedWalk& w, int p) const {
  const int c = nodes_[p].parent;
  const VertexSet k = c >= 0 ? nodes_[c].cluster : dual_.all_vertices();
  const auto& part = part_of_[p];
  int count = 0;
  for (EdgeId e : w.edges) {
    const FaceId u = dual_.end0(e), v = dual_.end1(e);
    if (k.contains(u) && k.contains(v) && part[u] != part[v]) ++count;
  }
  return count;
}

int NdhcTree::crossings_by_parts(const ClosedWalk& w, int p) const {
  const int c = nodes_[p].parent;
  const VertexSet k = c >= 0 ? nodes_[c].cluster : dual_.all_vertices();
  int twice = 0;
  for (VertexSet part : nodes_[p].parts) {
    for (EdgeId e : w.edges) {
      const FaceId u = dual_.end0(e), v = dual_.end1(e);
      if (k.contains(u) && k.contains(v) && part.contains(u) != part.contains(v)) ++twice;
    }
  }
  return twice / 2;
}

std::vector<int> NdhcTree::retained(const Forcing& phi) const {
  std::vector<int> out{0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int c : nodes_[out[i]].children) {
      auto it = phi.find(c);
      if (it != phi.end()) out.push_back(it->second);
    }
  }
  return out;
}

bool NdhcTree::is_forcing(const Forcing& phi) const {
  for (const auto& [c, p] : phi) {
    if (c < 0 || c >= size() || !is_cluster(c) || p < 0 || p >= size() || nodes_[p].parent != c) return false;
  }
  for (int p : retained(phi)) {
    for (int c : nodes_[p].children) {
      if (!nodes_[c].children.empty() && !phi.count(c)) return false;
    }
  }
  return true;
}

void NdhcTree::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::PreconditionViolated, "ndhc invariant: " + what); };
  if (nodes_.size() < 2 || !is_partition(0) || nodes_[0].parts.size() != 1 ||
      nodes_[0].parts[0] != dual_.all_vertices() || nodes_[0].children.size() != 1) {
    fail("root partition");
  }
  const WeightedGraph h = WeightedGraph::of_dual(dual_);
  for (int id = 0; id < size(); ++id) {
    const NdhcNode& node = nodes_[id];
    if (node.parent >= 0 && nodes_[node.parent].kind == node.kind) fail("levels alternate");
    if (node.kind == NodeKind::Cluster) {
      if (node.cluster.empty()) fail("empty cluster");
      if (node.children.empty() && node.cluster.size() != 1) fail("leaf clusters are singletons");
      for (const BoundedPartition& raw : node.samples) {
        if (!is_bounded_partition(h, node.cluster, raw)) fail("sampled partition is bounded");
      }
      continue;
    }
    const VertexSet k = node.parent >= 0 ? nodes_[node.parent].cluster : dual_.all_vertices();
    VertexSet seen;
    if (node.children.size() != node.parts.size()) fail("one child per part");
    for (std::size_t i = 0; i < node.parts.size(); ++i) {
      const VertexSet part = node.parts[i];
      if (part.empty() || part.intersects(seen)) fail("parts disjoint and nonempty");
      seen |= part;
      if (nodes_[node.children[i]].cluster != part) fail("child cluster equals its part");
    }
    if (seen != k) fail("parts cover the parent cluster");
    if (node.shattering) {
      for (VertexSet part : node.parts) {
        if (part.size() != 1) fail("shattering parts are singletons");
      }
    } else if (id != 0) {
      if (static_cast<int>(node.parts.size()) > 2 * z_) fail("part arity at most 2Z");
      const NdhcNode& c = nodes_[node.parent];
      if (node.sample < 0 || node.sample >= static_cast<int>(c.samples.size())) fail("partition provenance");
      const BoundedPartition& raw = c.samples[node.sample];
      for (std::size_t i = 0; i < node.parts.size(); ++i) {
        VertexSet u;
        for (std::size_t j = 0; j < raw.parts.size(); ++j) {
          if ((node.merged_from[i] >> j) & 1) u |= raw.parts[j];
        }
        if (u != node.parts[i]) fail("parts are unions of sampled parts");
      }
    }
  }
}

std::string NdhcTree::dump() const {
  std::ostringstream os;
  os << "ndhc nodes=" << size() << " z=" << z_ << " reps=" << reps_ << " diameter=" << diameter_
     << " last_level=" << last_level_ << "\n";
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, indent] = stack.back();
    stack.pop_back();
    const NdhcNode& node = nodes_[id];
    os << std::string(2 * indent, ' ');
    if (node.kind == NodeKind::Cluster) {
      os << 'C' << id << " level=" << node.level << " K=" << node.cluster.to_string() << "\n";
    } else {
      os << 'P' << id << " level=" << node.level;
      if (node.shattering) os << " shatter";
      if (node.sample >= 0) os << " sample=" << node.sample << " kappa=" << node.kappa;
      os << " parts=";
      for (VertexSet p : node.parts) os << p.to_string();
      os << "\n";
    }
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back({*it, indent + 1});
  }
  return os.str();
}

}  // namespace planarcut
