#include "planarcut/profiles.hpp"

#include <algorithm>
#include <map>

#include "planarcut/oracle.hpp"

namespace planarcut {

int ProfileSet::index_of(VertexSet s) const {
  auto it = std::lower_bound(profiles.begin(), profiles.end(), s);
  return (it != profiles.end() && *it == s) ? static_cast<int>(it - profiles.begin()) : -1;
}

bool amenable_on_path(const NdhcTree& t, const ClosedWalk& w, int p) {
  for (int q : t.partn_path(p)) {
    const int limit = t.node(q).shattering ? 0 : t.z();
    if (t.crossings(w, q) > limit) return false;
  }
  return true;
}

std::vector<EdgeId> crossing_edges_plus(const NdhcTree& t, int p) {
  const DualGraph& d = t.dual();
  std::vector<int> part(d.num_vertices(), -1);
  const auto parts = t.pi_plus(p);
  for (int i = 0; i < static_cast<int>(parts.size()); ++i) parts[i].for_each([&](VertexId v) { part[v] = i; });
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < d.num_edges(); ++e) {
    if (part[d.end0(e)] != part[d.end1(e)]) out.push_back(e);
  }
  return out;
}

namespace {

ProfileSet collect(int p, VertexSet bplus, const std::vector<DualCycle>& cycles, const std::vector<char>& ok) {
  std::map<VertexSet, int> seen;
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
    if (ok[i]) seen.try_emplace(cycles[i].enclosed() & bplus, i);
  }
  if (p == 0) seen.try_emplace(VertexSet(), -1);
  ProfileSet s;
  s.node = p;
  for (const auto& [prof, w] : seen) {
    s.profiles.push_back(prof);
    s.witness.push_back(w);
  }
  return s;
}

}  // namespace

ProfileSet enumerate_aplus(const NdhcTree& t, int p, const std::vector<DualCycle>& cycles) {
  std::vector<char> ok(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) ok[i] = amenable_on_path(t, cycles[i].walk(), p);
  return collect(p, t.boundary_plus(p), cycles, ok);
}

ProfileTable enumerate_all_profiles(const NdhcTree& t, std::size_t cycle_budget) {
  ProfileTable table;
  table.cycles = all_simple_cycles(t.dual(), cycle_budget);
  const std::size_t m = table.cycles.size();
  table.by_node.resize(t.size());
  // Amenability along the path is the parent's verdict and this node's.
  std::vector<std::vector<char>> ok(t.size());
  for (int p : t.partition_nodes()) {
    const int c = t.node(p).parent;
    const int up = c >= 0 ? t.node(c).parent : -1;
    ok[p].resize(m);
    const int limit = t.node(p).shattering ? 0 : t.z();
    for (std::size_t i = 0; i < m; ++i) {
      ok[p][i] = (up < 0 || ok[up][i]) && t.crossings(table.cycles[i].walk(), p) <= limit;
    }
  }
  const auto& ids = t.partition_nodes();
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const int p = ids[k];
    table.by_node[p] = collect(p, t.boundary_plus(p), table.cycles, ok[p]);
  }
  return table;
}

std::vector<VertexSet> enumerate_aplus_by_crossings(const NdhcTree& t, int p, int max_edges) {
  const DualGraph& d = t.dual();
  const int m = d.num_edges();
  if (m > max_edges) throw Error(ErrorCode::TooLarge, "edge-subset search is limited to small duals");
  const auto crossing = crossing_edges_plus(t, p);
  std::uint64_t cross_mask = 0;
  for (EdgeId e : crossing) cross_mask |= std::uint64_t{1} << e;
  const int bound = (t.height() + 1) * t.z();
  // Guess X, then collect every cycle realizing it. One cycle per guess
  // is not enough: routes inside a part can enclose different faces.
  std::map<std::uint64_t, std::vector<VertexSet>> by_signature;
  for (std::uint64_t f = 1; f < (std::uint64_t{1} << m); ++f) {
    const std::uint64_t x = f & cross_mask;
    if (std::popcount(x) > bound) continue;
    std::vector<EdgeId> edges;
    for (int e = 0; e < m; ++e) {
      if ((f >> e) & 1) edges.push_back(e);
    }
    DualCycle c;
    try {
      c = DualCycle::from_edges(d, edges);
    } catch (const Error&) {
      continue;
    }
    if (!amenable_on_path(t, c.walk(), p)) continue;
    by_signature[x].push_back(c.enclosed() & t.boundary_plus(p));
  }
  std::vector<VertexSet> out;
  for (const auto& [x, profs] : by_signature) out.insert(out.end(), profs.begin(), profs.end());
  if (p == 0) out.push_back(VertexSet());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexSet> aplus_pair(const std::vector<VertexSet>& a, const std::vector<VertexSet>& b) {
  std::vector<VertexSet> out;
  out.reserve(a.size() * b.size());
  for (VertexSet x : a) {
    for (VertexSet y : b) out.push_back(x | y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool verify_witnesses(const NdhcTree& t, const ProfileTable& table) {
  for (int p : t.partition_nodes()) {
    const ProfileSet& s = table.at(p);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s.profiles[i].subset_of(t.boundary_plus(p))) return false;
      if (s.witness[i] < 0) {
        if (p != 0 || !s.profiles[i].empty()) return false;
        continue;
      }
      const DualCycle& c = table.cycles[s.witness[i]];
      if ((c.enclosed() & t.boundary_plus(p)) != s.profiles[i]) return false;
      if (!amenable_on_path(t, c.walk(), p)) return false;
    }
  }
  return true;
}

Forcing find_amenable_forcing(const NdhcTree& t, const ClosedWalk& w) {
  // ok[c]: 1 satisfiable, 0 not, -1 unknown. A cluster's verdict depends only
  // on its subtree, so each is decided once.
  std::vector<signed char> ok(t.size(), -1);
  std::vector<int> pick(t.size(), -1);
  auto node_ok = [&](int p) { return t.crossings(w, p) <= (t.node(p).shattering ? 0 : t.z()); };
  // Post-order over clusters: children have larger ids than parents.
  for (int c = t.size() - 1; c >= 0; --c) {
    if (!t.is_cluster(c)) continue;
    const auto& kids = t.node(c).children;
    if (kids.empty()) {
      ok[c] = 1;
      continue;
    }
    ok[c] = 0;
    for (int p : kids) {
      if (!node_ok(p)) continue;
      bool all = true;
      for (int cc : t.node(p).children) all = all && ok[cc] == 1;
      if (all) {
        ok[c] = 1;
        pick[c] = p;
        break;
      }
    }
  }
  if (!node_ok(0) || ok[1] != 1) throw Error(ErrorCode::NotAmenable, "no forcing keeps the walk amenable");
  Forcing phi;
  std::vector<int> stack{1};
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    if (pick[c] < 0) continue;
    phi[c] = pick[c];
    for (int cc : t.node(pick[c]).children) stack.push_back(cc);
  }
  return phi;
}

}  // namespace planarcut
