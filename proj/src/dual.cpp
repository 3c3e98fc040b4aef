#include "planarcut/dual.hpp"

#include <algorithm>

namespace planarcut {

DualGraph DualGraph::build(const EmbeddedPlanarGraph& primal, VertexId f_inf) {
  if (f_inf < 0 || f_inf >= primal.num_vertices()) {
    throw Error(ErrorCode::InvalidParams, "infinite face must be a primal vertex");
  }
  DualGraph d;
  d.primal_ = primal;
  d.f_inf_ = f_inf;
  const int m = primal.num_edges();
  d.ends_.resize(m);
  d.adj_.assign(primal.num_faces(), {});
  for (EdgeId e = 0; e < m; ++e) {
    const FaceId a = primal.face_of_dart(2 * e);
    const FaceId b = primal.face_of_dart(2 * e + 1);
    d.ends_[e] = {a, b};
    d.adj_[a].push_back({b, e});
    if (a != b) d.adj_[b].push_back({a, e});
  }
  d.around_.resize(primal.num_vertices());
  for (VertexId s = 0; s < primal.num_vertices(); ++s) {
    for (FaceId f : primal.faces_around(s)) d.around_[s].insert(f);
  }
  return d;
}

std::vector<std::vector<std::int64_t>> DualGraph::distances(VertexSet subset) const {
  const int nv = num_vertices();
  std::vector<std::vector<std::int64_t>> dist(nv, std::vector<std::int64_t>(nv, kUnreachable));
  subset.for_each([&](FaceId x) { dist[x][x] = 0; });
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const auto [a, b] = ends_[e];
    if (a == b || !subset.contains(a) || !subset.contains(b)) continue;
    dist[a][b] = std::min(dist[a][b], cost(e));
    dist[b][a] = dist[a][b];
  }
  const auto members = subset.to_vector();
  for (FaceId k : members) {
    for (FaceId i : members) {
      if (dist[i][k] == kUnreachable) continue;
      for (FaceId j : members) {
        if (dist[k][j] == kUnreachable) continue;
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
      }
    }
  }
  return dist;
}

std::int64_t DualGraph::diameter(VertexSet subset) const {
  const auto dist = distances(subset);
  std::int64_t best = 0;
  subset.for_each([&](FaceId i) {
    subset.for_each([&](FaceId j) { best = std::max(best, dist[i][j]); });
  });
  return best;
}

std::int64_t ClosedWalk::cost(const DualGraph& d) const {
  std::int64_t c = 0;
  for (EdgeId e : edges) c += d.cost(e);
  return c;
}

std::vector<char> edge_parity(int num_edges, std::span<const EdgeId> edges) {
  std::vector<char> par(num_edges, 0);
  for (EdgeId e : edges) par[e] ^= 1;
  return par;
}

VertexSet parity_side(const DualGraph& d, std::span<const EdgeId> edges) {
  const EmbeddedPlanarGraph& g = d.primal();
  const auto par = edge_parity(g.num_edges(), edges);
  std::vector<int> label(g.num_vertices(), -1);
  std::vector<VertexId> stack{d.infinite_face()};
  label[d.infinite_face()] = 0;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (int dart : g.rotation(v)) {
      const VertexId w = g.head(dart);
      const int want = label[v] ^ par[EmbeddedPlanarGraph::edge_of(dart)];
      if (label[w] < 0) {
        label[w] = want;
        stack.push_back(w);
      } else if (label[w] != want) {
        throw Error(ErrorCode::PreconditionViolated, "edge multiset is not a union of closed walks");
      }
    }
  }
  VertexSet side;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (label[v] == 1) side.insert(v);
  }
  return side;
}

std::vector<EdgeId> cut_edges(const EmbeddedPlanarGraph& g, VertexSet side) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (side.contains(ed.u) != side.contains(ed.v)) out.push_back(e);
  }
  return out;
}

DualCycle DualCycle::from_edges(const DualGraph& d, std::vector<EdgeId> edges) {
  if (edges.empty()) throw Error(ErrorCode::NotSimple, "empty edge set");
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorCode::NotSimple, "repeated edge");
  }
  DualCycle c;
  if (edges.size() == 1) {
    if (!d.is_loop(edges[0])) throw Error(ErrorCode::NotSimple, "single non-loop edge");
    c.walk_ = {{d.end0(edges[0])}, {edges[0]}};
  } else {
    // Every vertex must meet exactly two of the edges, loops excluded.
    std::vector<std::vector<EdgeId>> at(d.num_vertices());
    for (EdgeId e : edges) {
      if (d.is_loop(e)) throw Error(ErrorCode::NotSimple, "loop inside a longer cycle");
      at[d.end0(e)].push_back(e);
      at[d.end1(e)].push_back(e);
    }
    for (const auto& list : at) {
      if (!list.empty() && list.size() != 2) throw Error(ErrorCode::NotSimple, "vertex degree is not two");
    }
    const FaceId start = std::min(d.end0(edges[0]), d.end1(edges[0]));
    FaceId v = start;
    EdgeId prev = -1;
    for (std::size_t step = 0; step < edges.size(); ++step) {
      const auto& l = at[v];
      EdgeId e = (l[0] != prev) ? l[0] : l[1];
      if (step == 0) e = std::min(l[0], l[1]);
      c.walk_.vertices.push_back(v);
      c.walk_.edges.push_back(e);
      v = d.other_end(e, v);
      prev = e;
      if (v == start && step + 1 != edges.size()) throw Error(ErrorCode::NotSimple, "edges form several cycles");
    }
    if (v != start) throw Error(ErrorCode::NotSimple, "edges do not close up");
  }
  c.cost_ = c.walk_.cost(d);

  // Enclosed side: primal vertices not reachable from f_inf without using a
  // cycle edge. A simple cycle leaves exactly two connected sides.
  const EmbeddedPlanarGraph& g = d.primal();
  std::vector<char> on(g.num_edges(), 0);
  for (EdgeId e : c.walk_.edges) on[e] = 1;
  VertexSet reached = VertexSet::single(d.infinite_face());
  std::vector<VertexId> stack{d.infinite_face()};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (int dart : g.rotation(v)) {
      if (on[EmbeddedPlanarGraph::edge_of(dart)]) continue;
      const VertexId w = g.head(dart);
      if (!reached.contains(w)) {
        reached.insert(w);
        stack.push_back(w);
      }
    }
  }
  c.enclosed_ = VertexSet::range(g.num_vertices()) - reached;
  if (c.enclosed_.empty() || components(g, c.enclosed_).size() != 1 ||
      cut_edges(g, c.enclosed_) != c.edge_set()) {
    throw Error(ErrorCode::NotSimple, "edges do not bound a simple cut");
  }
  return c;
}

std::vector<EdgeId> DualCycle::edge_set() const {
  auto e = walk_.edges;
  std::sort(e.begin(), e.end());
  return e;
}

EmbeddedPlanarGraph dual_embedding(const DualGraph& d) {
  const EmbeddedPlanarGraph& g = d.primal();
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < d.num_edges(); ++e) edges.push_back({d.end0(e), d.end1(e), d.cost(e)});
  std::vector<std::vector<int>> rot(d.num_vertices());
  for (FaceId f = 0; f < d.num_vertices(); ++f) rot[f] = g.face_boundary(f);
  if (g.num_edges() == 0) rot.assign(1, {});
  return EmbeddedPlanarGraph::build_from_darts(d.num_vertices(), std::move(edges), std::move(rot), {});
}

DualCycle cycle_of_cut(const DualGraph& d, VertexSet side) {
  const EmbeddedPlanarGraph& g = d.primal();
  const VertexSet all = VertexSet::range(g.num_vertices());
  if (side.empty() || side == all || !side.subset_of(all)) {
    throw Error(ErrorCode::EmptyOrFullSet, "cut side must be a nonempty proper subset");
  }
  if (!is_simple_cut(g, side)) throw Error(ErrorCode::NotSimple, "cut has a disconnected side");
  return DualCycle::from_edges(d, cut_edges(g, side));
}

}  // namespace planarcut
