#include "planarcut/reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "planarcut/dual.hpp"

namespace planarcut {

VertexSet NormalizedInstance::lift(VertexSet side) const {
  VertexSet out;
  for (VertexId v = 0; v < original_n; ++v) {
    if (side.contains(vertex_map[v])) out.insert(v);
  }
  return out;
}

EmbeddedPlanarGraph contract_edges(const EmbeddedPlanarGraph& g, const std::vector<EdgeId>& edges,
                                   std::vector<VertexId>& vertex_map, std::vector<EdgeId>& edge_origin) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  std::vector<std::vector<int>> rot(n);
  for (VertexId v = 0; v < n; ++v) rot[v].assign(g.rotation(v).begin(), g.rotation(v).end());
  std::vector<VertexId> tail(2 * m);
  for (int d = 0; d < 2 * m; ++d) tail[d] = g.tail(d);
  std::vector<char> dead(m, 0);
  std::vector<VertexId> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&](VertexId v) {
    while (rep[v] != v) v = rep[v] = rep[rep[v]];
    return v;
  };
  auto drop_dart = [&](int d) {
    auto& r = rot[tail[d]];
    r.erase(std::find(r.begin(), r.end(), d));
  };

  for (EdgeId e : edges) {
    if (dead[e]) continue;
    const int d = 2 * e;
    const VertexId u = tail[d], v = tail[d ^ 1];
    dead[e] = 1;
    if (u == v) {
      drop_dart(d);
      drop_dart(d ^ 1);
      continue;
    }
    // Splice: u's darts after d, then v's darts after twin(d).
    std::vector<int> merged;
    auto append_after = [&](const std::vector<int>& r, int skip) {
      const auto pos = static_cast<std::size_t>(std::find(r.begin(), r.end(), skip) - r.begin());
      for (std::size_t i = 1; i < r.size(); ++i) merged.push_back(r[(pos + i) % r.size()]);
    };
    append_after(rot[u], d);
    append_after(rot[v], d ^ 1);
    for (int x : rot[v]) tail[x] = u;
    rot[u] = std::move(merged);
    rot[v].clear();
    rep[find(v)] = find(u);
  }
  // Remaining self-loops can never be cut.
  for (EdgeId e = 0; e < m; ++e) {
    if (!dead[e] && tail[2 * e] == tail[2 * e + 1]) {
      dead[e] = 1;
      drop_dart(2 * e);
      drop_dart(2 * e + 1);
    }
  }

  std::vector<VertexId> new_id(n, -1);
  int nn = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (find(v) == v) new_id[v] = nn++;
  }
  vertex_map.assign(n, -1);
  for (VertexId v = 0; v < n; ++v) vertex_map[v] = new_id[find(v)];

  std::vector<int> new_edge(m, -1);
  std::vector<Edge> out_edges;
  edge_origin.clear();
  for (EdgeId e = 0; e < m; ++e) {
    if (dead[e]) continue;
    new_edge[e] = static_cast<int>(out_edges.size());
    out_edges.push_back({new_id[tail[2 * e]], new_id[tail[2 * e + 1]], g.edge(e).cost});
    edge_origin.push_back(e);
  }
  std::vector<std::vector<int>> out_rot(nn);
  for (VertexId v = 0; v < n; ++v) {
    if (find(v) != v) continue;
    for (int d : rot[v]) out_rot[new_id[v]].push_back(2 * new_edge[d >> 1] + (d & 1));
  }
  std::vector<Demand> dem;
  for (const Demand& q : g.demands()) dem.push_back({vertex_map[q.u], vertex_map[q.v], q.amount});
  return EmbeddedPlanarGraph::build_from_darts(nn, std::move(out_edges), std::move(out_rot), std::move(dem));
}

namespace {

std::int64_t ceil_div(__int128 a, __int128 b) { return static_cast<std::int64_t>((a + b - 1) / b); }

}  // namespace

NormalizedInstance normalize_instance(const EmbeddedPlanarGraph& g, EdgeId guess_edge, VertexId a, VertexId b) {
  if (guess_edge < 0 || guess_edge >= g.num_edges()) throw Error(ErrorCode::InvalidGuess, "no such edge");
  if (a == b || g.demand(a, b) <= 0) throw Error(ErrorCode::InvalidGuess, "guessed pair has no demand");
  const int n = g.num_vertices();
  const std::int64_t c_max = g.edge(guess_edge).cost;
  std::vector<EdgeId> heavy;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.edge(e).cost > c_max) heavy.push_back(e);
  }
  NormalizedInstance out;
  out.guess_edge = guess_edge;
  out.guess_u = std::min(a, b);
  out.guess_v = std::max(a, b);
  out.original_n = n;
  out.contracted = heavy;
  out.cost_cap = c_max;
  EmbeddedPlanarGraph c = contract_edges(g, heavy, out.vertex_map, out.edge_origin);
  const VertexId ma = out.vertex_map[a], mb = out.vertex_map[b];
  if (ma == mb) throw Error(ErrorCode::InvalidGuess, "guessed pair merged by contraction");
  const std::int64_t d_max = c.demand(ma, mb);
  out.demand_cap = d_max;

  const __int128 n2 = static_cast<__int128>(n) * n;
  const __int128 n3 = n2 * n;
  std::vector<Edge> edges(c.edges().begin(), c.edges().end());
  for (Edge& e : edges) {
    // Exact multiples of c_max/n^2 keep their value.
    e.cost = c_max == 0 ? 0 : ceil_div(static_cast<__int128>(e.cost) * n2, c_max);
  }
  std::vector<Demand> dem;
  for (const Demand& q : c.demands()) {
    if (q.amount > d_max) continue;
    dem.push_back({q.u, q.v, static_cast<std::int64_t>(static_cast<__int128>(q.amount) * n3 / d_max)});
  }
  std::vector<std::vector<int>> rot(c.num_vertices());
  for (VertexId v = 0; v < c.num_vertices(); ++v) rot[v].assign(c.rotation(v).begin(), c.rotation(v).end());
  out.graph = EmbeddedPlanarGraph::build_from_darts(c.num_vertices(), std::move(edges), std::move(rot), std::move(dem));
  return out;
}

std::optional<NormalizedInstance> identity_instance(const EmbeddedPlanarGraph& g) {
  const std::int64_t n = g.num_vertices();
  for (const Edge& e : g.edges()) {
    if (e.cost > n * n) return std::nullopt;
  }
  for (const Demand& d : g.demands()) {
    if (d.amount > n * n * n) return std::nullopt;
  }
  NormalizedInstance out;
  out.graph = g;
  out.identity = true;
  out.original_n = g.num_vertices();
  out.vertex_map.resize(n);
  std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
  out.edge_origin.resize(g.num_edges());
  std::iota(out.edge_origin.begin(), out.edge_origin.end(), 0);
  return out;
}

NormalizedInstance single_guess(const EmbeddedPlanarGraph& g) {
  if (auto id = identity_instance(g)) return *id;
  if (g.demands().empty() || g.num_edges() == 0) throw Error(ErrorCode::NoDemand, "nothing to guess");
  EdgeId best_e = 0;
  for (EdgeId e = 1; e < g.num_edges(); ++e) {
    if (g.edge(e).cost > g.edge(best_e).cost) best_e = e;
  }
  const Demand* best_d = &g.demands()[0];
  for (const Demand& d : g.demands()) {
    if (d.amount > best_d->amount) best_d = &d;
  }
  return normalize_instance(g, best_e, best_d->u, best_d->v);
}

GuessStream::GuessStream(const EmbeddedPlanarGraph& g) : g_(g) {}

std::optional<NormalizedInstance> GuessStream::next() {
  const std::size_t pairs = g_.demands().size();
  while (edge_ < static_cast<std::size_t>(g_.num_edges()) && pairs > 0) {
    const EdgeId e = static_cast<EdgeId>(edge_);
    const Demand& d = g_.demands()[pair_];
    if (++pair_ == pairs) {
      pair_ = 0;
      ++edge_;
    }
    try {
      return normalize_instance(g_, e, d.u, d.v);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::InvalidGuess) throw;
    }
  }
  return std::nullopt;
}

std::vector<NormalizedInstance> guess_iterator(const EmbeddedPlanarGraph& g) {
  std::vector<NormalizedInstance> out;
  GuessStream s(g);
  while (auto inst = s.next()) out.push_back(std::move(*inst));
  return out;
}

}  // namespace planarcut

namespace planarcut {

VertexSet BridgeCore::lift(VertexSet u) const {
  VertexSet out;
  for (VertexId v = 0; v < static_cast<VertexId>(vertex_map.size()); ++v) {
    if (u.contains(vertex_map[v])) out.insert(v);
  }
  return out;
}

BridgeCore bridge_core(const EmbeddedPlanarGraph& g) {
  BridgeCore c;
  const DualGraph d = DualGraph::build(g);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (d.is_loop(e)) c.bridges.push_back(e);
  }
  if (c.bridges.empty()) {
    c.graph = g;
    c.vertex_map.resize(g.num_vertices());
    std::iota(c.vertex_map.begin(), c.vertex_map.end(), 0);
    return c;
  }
  std::vector<EdgeId> origin;
  c.graph = contract_edges(g, c.bridges, c.vertex_map, origin);
  return c;
}

CutResult best_bridge_cut(const EmbeddedPlanarGraph& g, const std::vector<EdgeId>& bridges) {
  CutResult best;
  for (EdgeId b : bridges) {
    // Side of the bridge not holding vertex 0.
    VertexSet seen = VertexSet::of({0});
    std::vector<VertexId> stack{0};
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (e == b) continue;
        const Edge& ed = g.edge(e);
        if (ed.u != v && ed.v != v) continue;
        const VertexId w = ed.u == v ? ed.v : ed.u;
        if (!seen.contains(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
      }
    }
    const CutResult c = sparsity(g, VertexSet::range(g.num_vertices()) - seen);
    if (!c.sparsity.is_infinite() && (best.sparsity.is_infinite() || c.sparsity < best.sparsity)) best = c;
  }
  return best;
}

}  // namespace planarcut
