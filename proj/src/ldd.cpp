#include "planarcut/ldd.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <queue>

namespace planarcut {

WeightedGraph WeightedGraph::from_edges(int n, std::vector<Edge> edges) {
  WeightedGraph h;
  h.n = n;
  h.edges = std::move(edges);
  h.adj.assign(n, {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(h.edges.size()); ++e) {
    const Edge& ed = h.edges[e];
    if (ed.u == ed.v) continue;
    h.adj[ed.u].push_back({ed.v, ed.cost, e});
    h.adj[ed.v].push_back({ed.u, ed.cost, e});
  }
  return h;
}

WeightedGraph WeightedGraph::of_primal(const EmbeddedPlanarGraph& g) {
  return from_edges(g.num_vertices(), std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

WeightedGraph WeightedGraph::of_dual(const DualGraph& d) {
  std::vector<Edge> edges;
  edges.reserve(d.num_edges());
  for (EdgeId e = 0; e < d.num_edges(); ++e) edges.push_back({d.end0(e), d.end1(e), d.cost(e)});
  return from_edges(d.num_vertices(), std::move(edges));
}

std::vector<std::int64_t> dijkstra_within(const WeightedGraph& h, VertexSet subset, VertexId src) {
  std::vector<std::int64_t> dist(h.n, DualGraph::kUnreachable);
  using Item = std::pair<std::int64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    const auto [dv, v] = pq.top();
    pq.pop();
    if (dv != dist[v]) continue;
    for (const auto& a : h.adj[v]) {
      if (!subset.contains(a.to)) continue;
      const std::int64_t nd = dv + a.cost;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        pq.push({nd, a.to});
      }
    }
  }
  return dist;
}

std::int64_t strong_diameter(const WeightedGraph& h, VertexSet part) {
  std::int64_t best = 0;
  part.for_each([&](VertexId s) {
    const auto dist = dijkstra_within(h, part, s);
    part.for_each([&](VertexId t) { best = std::max(best, dist[t]); });
  });
  return best;
}

int BoundedPartition::part_of(VertexId v) const {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].contains(v)) return static_cast<int>(i);
  }
  return -1;
}

BoundedPartition sample_bounded_partition(const WeightedGraph& h, VertexSet subset, double bound, StreamRng& rng) {
  if (!(bound > 0)) throw Error(ErrorCode::NonpositiveBound, "partition bound must be positive");
  BoundedPartition out;
  out.bound = bound;
  out.seed = rng.key();
  const double rate = 2.0 * std::log(static_cast<double>(subset.size()) + 1.0) / bound;
  VertexSet left = subset;
  while (!left.empty()) {
    const auto members = left.to_vector();
    const VertexId center = members[rng.below(members.size())];
    double r = rng.exponential(rate);
    while (r > bound / 2) r = rng.exponential(rate);
    const auto dist = dijkstra_within(h, left, center);
    VertexSet ball;
    left.for_each([&](VertexId v) {
      if (static_cast<double>(dist[v]) <= r) ball.insert(v);
    });
    out.parts.push_back(ball);
    left = left - ball;
  }
  return out;
}

bool is_bounded_partition(const WeightedGraph& h, VertexSet subset, const BoundedPartition& p) {
  VertexSet seen;
  for (VertexSet part : p.parts) {
    if (part.empty() || part.intersects(seen)) return false;
    seen |= part;
    if (static_cast<double>(strong_diameter(h, part)) > p.bound) return false;
  }
  return seen == subset;
}

namespace {

void accumulate(const WeightedGraph& h, double bound, std::uint64_t seed, std::uint64_t i,
                std::vector<std::uint64_t>& counts, std::uint64_t& unbounded) {
  const VertexSet all = VertexSet::range(h.n);
  StreamRng rng = StreamRng::named(seed, "ldd", {i});
  const BoundedPartition p = sample_bounded_partition(h, all, bound, rng);
  if (!is_bounded_partition(h, all, p)) ++unbounded;
  std::vector<int> owner(h.n, -1);
  for (std::size_t k = 0; k < p.parts.size(); ++k) p.parts[k].for_each([&](VertexId v) { owner[v] = static_cast<int>(k); });
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    if (owner[h.edges[e].u] != owner[h.edges[e].v]) ++counts[e];
  }
}

void finish(const WeightedGraph& h, double bound, LddStats& s) {
  s.beta_hat = 0;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    if (h.edges[e].cost <= 0 || h.edges[e].u == h.edges[e].v) continue;
    s.beta_hat = std::max(s.beta_hat, s.frequency(static_cast<EdgeId>(e)) * bound / static_cast<double>(h.edges[e].cost));
  }
}

}  // namespace

LddStats ldd_monte_carlo_serial(const WeightedGraph& h, double bound, std::uint64_t samples, std::uint64_t seed) {
  LddStats s;
  s.samples = samples;
  s.cut_counts.assign(h.edges.size(), 0);
  for (std::uint64_t i = 0; i < samples; ++i) accumulate(h, bound, seed, i, s.cut_counts, s.unbounded);
  finish(h, bound, s);
  return s;
}

LddStats ldd_monte_carlo(const WeightedGraph& h, double bound, std::uint64_t samples, std::uint64_t seed) {
  if (!(bound > 0)) throw Error(ErrorCode::NonpositiveBound, "partition bound must be positive");
  LddStats s;
  s.samples = samples;
  s.cut_counts.assign(h.edges.size(), 0);
  const int threads = omp_get_max_threads();
  std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(h.edges.size(), 0));
  std::vector<std::uint64_t> unbounded(threads, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
    const int t = omp_get_thread_num();
    accumulate(h, bound, seed, static_cast<std::uint64_t>(i), counts[t], unbounded[t]);
  }
  for (int t = 0; t < threads; ++t) {
    for (std::size_t e = 0; e < h.edges.size(); ++e) s.cut_counts[e] += counts[t][e];
    s.unbounded += unbounded[t];
  }
  finish(h, bound, s);
  return s;
}

std::vector<EdgeId> ldd_violations(const WeightedGraph& h, const LddStats& s, double bound, double beta_target) {
  std::vector<EdgeId> bad;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    if (h.edges[e].u == h.edges[e].v) continue;
    const double p = std::min(1.0, beta_target * static_cast<double>(h.edges[e].cost) / bound);
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(s.samples));
    if (s.frequency(static_cast<EdgeId>(e)) > p + 3 * sigma) bad.push_back(static_cast<EdgeId>(e));
  }
  return bad;
}

}  // namespace planarcut
