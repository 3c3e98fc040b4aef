#include "planarcut/patch_verify.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "planarcut/separation.hpp"

namespace planarcut {

namespace {

struct PathTree {
  std::vector<std::int64_t> dist;
  std::vector<EdgeId> via;  // edge to the parent, -1 at the source
};

// Dijkstra inside G*[k]; ties resolve to the smaller vertex id first.
PathTree shortest_paths(const DualGraph& d, VertexSet k, VertexId src) {
  PathTree pt;
  pt.dist.assign(d.num_vertices(), DualGraph::kUnreachable);
  pt.via.assign(d.num_vertices(), -1);
  using Item = std::pair<std::int64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pt.dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du != pt.dist[u]) continue;
    for (auto [w, e] : d.incident(u)) {
      if (w == u || !k.contains(w)) continue;
      const std::int64_t nd = du + d.cost(e);
      if (nd < pt.dist[w]) {
        pt.dist[w] = nd;
        pt.via[w] = e;
        pq.push({nd, w});
      }
    }
  }
  return pt;
}

// Vertices r = p0, ..., v and the edges between them.
void path_to(const DualGraph& d, const PathTree& pt, VertexId v, std::vector<VertexId>& vs, std::vector<EdgeId>& es) {
  vs.assign(1, v);
  es.clear();
  while (pt.via[v] >= 0) {
    es.push_back(pt.via[v]);
    v = d.other_end(pt.via[v], v);
    vs.push_back(v);
  }
  std::reverse(vs.begin(), vs.end());
  std::reverse(es.begin(), es.end());
}

}  // namespace

bool same_parity(const DualGraph& d, const ClosedWalk& input, const std::vector<ClosedWalk>& outputs) {
  std::vector<char> par(d.num_edges(), 0);
  for (EdgeId e : input.edges) par[e] ^= 1;
  for (const ClosedWalk& w : outputs) {
    for (EdgeId e : w.edges) par[e] ^= 1;
  }
  return std::find(par.begin(), par.end(), 1) == par.end();
}

PatchReport patch(const DualGraph& d, const ClosedWalk& c, VertexSet k, double delta, int z) {
  if (!(delta > 0)) throw Error(ErrorCode::NonpositiveBound, "patch needs a positive scale");
  PatchReport rep;
  rep.input = c;
  rep.threshold = z / 3.0 * delta;
  for (EdgeId e : c.edges) {
    if (d.internal(e, k)) rep.internal_cost += d.cost(e);
  }
  const int len = static_cast<int>(c.edges.size());
  int start = -1;
  for (int i = 0; i < len; ++i) {
    if (k.contains(c.vertices[i]) && (start < 0 || c.vertices[i] < c.vertices[start])) start = i;
  }
  auto unchanged = [&] {
    rep.outputs = {c};
    std::int64_t own = 0;
    for (EdgeId e : c.edges) {
      if (d.internal(e, k)) own += d.cost(e);
    }
    rep.nonspecial_internal = {own};
    if (start >= 0) rep.special = {c.vertices[start]};
    return rep;
  };
  if (start < 0 || static_cast<double>(rep.internal_cost) <= rep.threshold) return unchanged();

  // Rotate so that position 0 is the first occurrence of r.
  std::vector<VertexId> vs(len + 1);
  std::vector<EdgeId> es(len);
  for (int i = 0; i < len; ++i) {
    vs[i] = c.vertices[(start + i) % len];
    es[i] = c.edges[(start + i) % len];
  }
  vs[len] = vs[0];
  const VertexId r = vs[0];

  std::vector<int> cuts{0};
  std::vector<char> special_edge(len, 0);
  double counter = 0;
  for (int i = 0; i < len; ++i) {
    if (!d.internal(es[i], k)) continue;
    counter += static_cast<double>(d.cost(es[i]));
    if (counter > rep.threshold) {
      cuts.push_back(i + 1);
      special_edge[i] = 1;
      rep.special_edges.push_back(es[i]);
      counter = 0;
    }
  }
  for (int pos : cuts) rep.special.push_back(vs[pos]);
  if (cuts.back() != len) cuts.push_back(len);

  const PathTree pt = shortest_paths(d, k, r);
  for (std::size_t t = 1; t < rep.special.size(); ++t) {
    const VertexId v = rep.special[t];
    if (pt.dist[v] >= DualGraph::kUnreachable) {
      rep.path_missing = true;
      rep.special.resize(1);
      rep.special_edges.clear();
      return unchanged();
    }
    rep.added_cost += 2 * pt.dist[v];
    rep.max_path_cost = std::max(rep.max_path_cost, pt.dist[v]);
  }

  std::vector<VertexId> pv, qv;
  std::vector<EdgeId> pe, qe;
  for (std::size_t t = 0; t + 1 < cuts.size(); ++t) {
    const int a = cuts[t], b = cuts[t + 1];
    ClosedWalk w;
    std::int64_t own = 0;
    path_to(d, pt, vs[a], pv, pe);
    for (std::size_t j = 0; j < pe.size(); ++j) {
      w.vertices.push_back(pv[j]);
      w.edges.push_back(pe[j]);
      own += d.cost(pe[j]);
    }
    for (int j = a; j < b; ++j) {
      w.vertices.push_back(vs[j]);
      w.edges.push_back(es[j]);
      if (!special_edge[j] && d.internal(es[j], k)) own += d.cost(es[j]);
    }
    path_to(d, pt, vs[b], qv, qe);
    for (std::size_t j = qe.size(); j-- > 0;) {
      w.vertices.push_back(qv[j + 1]);
      w.edges.push_back(qe[j]);
      own += d.cost(qe[j]);
    }
    if (w.edges.empty()) continue;
    rep.outputs.push_back(std::move(w));
    rep.nonspecial_internal.push_back(own);
  }
  return rep;
}

const char* to_string(VirtualFailure f) {
  switch (f) {
    case VirtualFailure::None: return "none";
    case VirtualFailure::Crossing: return "crossing";
    case VirtualFailure::KappaTooLarge: return "kappa-too-large";
    case VirtualFailure::KappaMissing: return "kappa-missing";
  }
  return "unknown";
}

bool VirtualRunReport::forcing_ok() const {
  if (failure != VirtualFailure::None) return false;
  return std::all_of(certificates.begin(), certificates.end(), [](const CycleCertificate& c) { return c.amenable; });
}

namespace {

// Valid for c: every proper cluster ancestor of c maps to the next
// partition node on the path to c.
bool valid_for(const NdhcTree& t, const Forcing& psi, int c) {
  for (int p = t.node(c).parent; p > 0; p = t.node(t.node(p).parent).parent) {
    auto it = psi.find(t.node(p).parent);
    if (it == psi.end() || it->second != p) return false;
  }
  return true;
}

int crossings_of_sample(const DualGraph& d, const ClosedWalk& w, VertexSet k, const BoundedPartition& pi) {
  int count = 0;
  for (EdgeId e : w.edges) {
    if (d.internal(e, k) && pi.part_of(d.end0(e)) != pi.part_of(d.end1(e))) ++count;
  }
  return count;
}

std::int64_t live_cost(const DualGraph& d, const std::vector<CycleNode>& cs) {
  std::int64_t s = 0;
  for (const CycleNode& c : cs) {
    if (c.alive) s += c.walk.cost(d);
  }
  return s;
}

// Algorithm state shared by both drivers: the cycle collection, psi
// entries and the accounting.
class Virtual final : public NdhcGuide {
 public:
  Virtual(const DualCycle& c0) : c0_(c0) {
    rep_.c0_cost = c0.cost();
    rep_.cycles.push_back({c0.walk(), -1, 0, true, {}});
  }

  void begin_level(const NdhcTree& t, int level) override {
    close_level(t);
    if (rep_.failure != VirtualFailure::None) return;
    open_ = true;
    lc_ = LevelCost{};
    lc_.level = level;
    lc_.before = live_cost(t.dual(), rep_.cycles);
  }

  std::vector<std::pair<int, std::uint64_t>> choose(const NdhcTree& t, int c,
                                                    const std::vector<BoundedPartition>& samples) override {
    pending_.clear();
    if (rep_.failure != VirtualFailure::None) return {};
    const DualGraph& d = t.dual();
    const int z = t.z();
    const NdhcNode& node = t.node(c);
    const VertexSet k = node.cluster;
    const double delta = t.delta(node.level);
    std::vector<int> valid;
    for (int i = 0; i < static_cast<int>(rep_.cycles.size()); ++i) {
      if (rep_.cycles[i].alive && valid_for(t, rep_.cycles[i].psi, c)) valid.push_back(i);
    }
    std::vector<int> now;
    for (int i : valid) patch_one(d, i, k, delta, z, now);

    std::vector<std::pair<int, std::uint64_t>> out;
    for (int i : now) {
      const ClosedWalk& w = rep_.cycles[i].walk;
      int pick = -1;
      for (int s = 0; s < static_cast<int>(samples.size()); ++s) {
        if (crossings_of_sample(d, w, k, samples[s]) <= z) {
          pick = s;
          break;
        }
      }
      if (pick < 0) {
        fail(VirtualFailure::Crossing, c, i);
        return {};
      }
      const BoundedPartition& pi = samples[pick];
      std::uint64_t kappa = 0;
      for (EdgeId e : w.edges) {
        if (!d.internal(e, k)) continue;
        kappa |= std::uint64_t{1} << pi.part_of(d.end0(e));
        kappa |= std::uint64_t{1} << pi.part_of(d.end1(e));
      }
      if (kappa == 0) kappa = 1;
      if (std::popcount(kappa) > 2 * z) {
        fail(VirtualFailure::KappaTooLarge, c, i);
        return {};
      }
      pending_.push_back({i, {pick, kappa}});
      out.push_back({pick, kappa});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void chosen(const NdhcTree& t, int c) override {
    const NdhcNode& node = t.node(c);
    for (const auto& [i, key] : pending_) {
      auto it = node.choice.find(key);
      if (it == node.choice.end()) {
        fail(VirtualFailure::KappaMissing, c, i);
        break;
      }
      rep_.cycles[i].psi[c] = it->second;
    }
    pending_.clear();
  }

  VirtualRunReport finish(const NdhcTree& t);

 private:
  const DualCycle& c0_;
  VirtualRunReport rep_;
  LevelCost lc_;
  bool open_ = false;
  std::vector<std::pair<int, std::pair<int, std::uint64_t>>> pending_;

  void fail(VirtualFailure f, int c, int i) {
    if (rep_.failure != VirtualFailure::None) return;
    rep_.failure = f;
    rep_.failure_cluster = c;
    rep_.failure_cycle = i;
  }

  void close_level(const NdhcTree& t) {
    if (!open_) return;
    open_ = false;
    lc_.after = live_cost(t.dual(), rep_.cycles);
    rep_.levels.push_back(lc_);
    rep_.levels_run = lc_.level + 1;
  }

  void patch_one(const DualGraph& d, int i, VertexSet k, double delta, int z, std::vector<int>& now) {
    ++rep_.patch_calls;
    PatchReport pr = patch(d, rep_.cycles[i].walk, k, delta, z);
    if (pr.path_missing) ++rep_.path_missing;
    if (!pr.patched()) {
      now.push_back(i);
      return;
    }
    ++rep_.patched;
    ++lc_.patched;
    if (!same_parity(d, pr.input, pr.outputs)) rep_.parity_ok = false;
    if (static_cast<double>(pr.max_path_cost) > delta) ++rep_.path_over_delta;
    if (static_cast<double>(pr.added_cost) * z > 12.0 * static_cast<double>(pr.internal_cost)) ++rep_.added_over;
    std::vector<int> count(d.num_edges(), 0);
    for (EdgeId e : pr.input.edges) ++count[e];
    for (std::size_t j = 0; j < pr.outputs.size(); ++j) {
      for (EdgeId e : pr.outputs[j].edges) {
        if (--count[e] < 0 && !d.internal(e, k)) rep_.internal_ok = false;
      }
      if (static_cast<double>(pr.nonspecial_internal[j]) > (z / 3.0 + 2) * delta) ++rep_.nonspecial_over;
    }
    rep_.cycles[i].alive = false;
    const int level = lc_.level;
    for (ClosedWalk& w : pr.outputs) {
      CycleNode child{std::move(w), i, level, true, rep_.cycles[i].psi};
      now.push_back(static_cast<int>(rep_.cycles.size()));
      rep_.cycles.push_back(std::move(child));
    }
  }
};

VirtualRunReport Virtual::finish(const NdhcTree& t) {
  close_level(t);
  const DualGraph& d = t.dual();
  const int z = t.z();
  VirtualRunReport rep = std::move(rep_);

  // Leaf clusters shatter; every cycle points at the shattering child.
  for (int c : t.cluster_nodes()) {
    const NdhcNode& node = t.node(c);
    if (node.children.size() != 1 || !t.node(node.children[0]).shattering) continue;
    for (CycleNode& cn : rep.cycles) {
      if (cn.alive) cn.psi[c] = node.children[0];
    }
  }

  std::vector<ClosedWalk> finals;
  std::int64_t min_cost = -1;
  for (EdgeId e = 0; e < d.num_edges(); ++e) min_cost = min_cost < 0 ? d.cost(e) : std::min(min_cost, d.cost(e));
  for (int i = 0; i < static_cast<int>(rep.cycles.size()); ++i) {
    if (!rep.cycles[i].alive) continue;
    rep.final_cycles.push_back(i);
    finals.push_back(rep.cycles[i].walk);
  }
  rep.final_cost = live_cost(d, rep.cycles);
  rep.separation_ok = check_separation_cover(d, c0_, finals) && check_parity(d, c0_, finals);
  rep.size_ok = min_cost <= 0 ||
                static_cast<std::int64_t>(finals.size()) * min_cost <= std::max<std::int64_t>(rep.final_cost, min_cost);

  if (rep.failure == VirtualFailure::None) {
    for (int i : rep.final_cycles) {
      CycleCertificate cert;
      cert.cycle = i;
      const ClosedWalk& w = rep.cycles[i].walk;
      for (const auto& [c, p] : rep.cycles[i].psi) {
        if (valid_for(t, rep.cycles[i].psi, c)) cert.phi[c] = p;
      }
      cert.is_forcing = t.is_forcing(cert.phi);
      const auto kept = t.retained(cert.phi);
      cert.retained_nodes = static_cast<int>(kept.size());
      for (int p : kept) {
        const int x = t.crossings(w, p);
        if (t.node(p).shattering) {
          cert.max_shattering = std::max(cert.max_shattering, x);
        } else {
          cert.max_normal = std::max(cert.max_normal, x);
        }
      }
      cert.amenable = cert.is_forcing && cert.max_normal <= z;
      rep.certificates.push_back(std::move(cert));
    }
  }
  return rep;
}

}  // namespace

VirtualRunReport run_virtual(const NdhcTree& t, const DualCycle& c0) {
  Virtual v(c0);
  std::vector<std::vector<int>> by_level(t.last_level() + 1);
  for (int c : t.cluster_nodes()) {
    const NdhcNode& node = t.node(c);
    if (node.cluster.size() <= 1 || node.samples.empty()) continue;
    if (node.level < static_cast<int>(by_level.size())) by_level[node.level].push_back(c);
  }
  for (int level = 0; level <= t.last_level(); ++level) {
    v.begin_level(t, level);
    for (int c : by_level[level]) {
      v.choose(t, c, t.node(c).samples);
      v.chosen(t, c);
    }
  }
  return v.finish(t);
}

VirtualRun run_virtual_guided(const DualGraph& d, const DualCycle& c0, const NdhcParams& params) {
  Virtual v(c0);
  VirtualRun out{NdhcTree::build_guided(d, params, v), {}};
  out.report = v.finish(out.tree);
  return out;
}

std::string VirtualRunReport::to_text(int z) const {
  std::ostringstream os;
  os << "failure " << planarcut::to_string(failure);
  if (failure != VirtualFailure::None) os << " cluster=" << failure_cluster << " cycle=" << failure_cycle;
  os << "\ncost c0=" << c0_cost << " final=" << final_cost << " ratio=" << cost_ratio() << " levels=" << levels_run
     << " bound=" << 1.0 + 12.0 * levels_run / z << "\n";
  for (const LevelCost& lc : levels) {
    os << "level " << lc.level << " before=" << lc.before << " after=" << lc.after << " patched=" << lc.patched << "\n";
  }
  os << "patch calls=" << patch_calls << " patched=" << patched << " parity=" << (parity_ok ? "ok" : "BROKEN")
     << " internal=" << (internal_ok ? "ok" : "BROKEN") << " path_over_delta=" << path_over_delta
     << " path_missing=" << path_missing << " nonspecial_over=" << nonspecial_over << " added_over=" << added_over
     << "\n";
  os << "cycles final=" << final_cycles.size() << " total=" << cycles.size() << " separation="
     << (separation_ok ? "ok" : "BROKEN") << " size=" << (size_ok ? "ok" : "BROKEN") << "\n";
  for (const CycleCertificate& c : certificates) {
    os << "cycle " << c.cycle << " forcing=" << (c.is_forcing ? "yes" : "no") << " retained=" << c.retained_nodes
       << " max_normal=" << c.max_normal << " max_shattering=" << c.max_shattering
       << " amenable=" << (c.amenable ? "yes" : "no") << "\n";
  }
  return os.str();
}

}  // namespace planarcut
