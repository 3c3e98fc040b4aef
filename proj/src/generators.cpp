#include "planarcut/generators.hpp"

#include <algorithm>
#include <numeric>

#include "planarcut/rng.hpp"

namespace planarcut {

namespace {

// Builds rotations from per-vertex neighbor lists already in ccw order.
GraphSpec from_ccw(int n, const std::vector<std::vector<VertexId>>& ccw) {
  GraphSpec s;
  s.n = n;
  s.rotation.assign(n, {});
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> id(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : ccw[u]) {
      if (u < v) {
        id[u].push_back({v, static_cast<EdgeId>(s.edges.size())});
        s.edges.push_back({u, v, 1});
      }
    }
  }
  auto edge_id = [&](VertexId a, VertexId b) {
    const VertexId lo = std::min(a, b), hi = std::max(a, b);
    for (auto [w, e] : id[lo]) {
      if (w == hi) return e;
    }
    return -1;
  };
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : ccw[u]) s.rotation[u].push_back(edge_id(u, v));
  }
  return s;
}

}  // namespace

GraphSpec make_grid(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols > kMaxSetVertices) throw Error(ErrorCode::InvalidParams, "bad grid size");
  const int n = rows * cols;
  auto at = [&](int r, int c) { return r * cols + c; };
  std::vector<std::vector<VertexId>> ccw(n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto& l = ccw[at(r, c)];
      if (c + 1 < cols) l.push_back(at(r, c + 1));
      if (r + 1 < rows) l.push_back(at(r + 1, c));
      if (c > 0) l.push_back(at(r, c - 1));
      if (r > 0) l.push_back(at(r - 1, c));
    }
  }
  return from_ccw(n, ccw);
}

GraphSpec make_wheel(int spokes) {
  if (spokes < 3 || spokes + 1 > kMaxSetVertices) throw Error(ErrorCode::InvalidParams, "wheel needs 3..63 spokes");
  const int n = spokes + 1;
  std::vector<std::vector<VertexId>> ccw(n);
  for (int i = 1; i <= spokes; ++i) ccw[0].push_back(i);
  for (int i = 1; i <= spokes; ++i) {
    const int next = i % spokes + 1;
    const int prev = (i + spokes - 2) % spokes + 1;
    ccw[i] = {next, 0, prev};
  }
  return from_ccw(n, ccw);
}

GraphSpec make_random_planar(int rows, int cols, double keep, std::uint64_t seed) {
  if (rows < 1 || cols < 1 || rows * cols > kMaxSetVertices || keep < 0.0 || keep > 1.0) {
    throw Error(ErrorCode::InvalidParams, "bad random-planar parameters");
  }
  const int n = rows * cols;
  auto at = [&](int r, int c) { return r * cols + c; };
  std::vector<std::vector<VertexId>> ccw(n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto& l = ccw[at(r, c)];
      if (c + 1 < cols) l.push_back(at(r, c + 1));
      if (c + 1 < cols && r + 1 < rows) l.push_back(at(r + 1, c + 1));
      if (r + 1 < rows) l.push_back(at(r + 1, c));
      if (c > 0) l.push_back(at(r, c - 1));
      if (c > 0 && r > 0) l.push_back(at(r - 1, c - 1));
      if (r > 0) l.push_back(at(r - 1, c));
    }
  }
  GraphSpec full = from_ccw(n, ccw);
  StreamRng rng = StreamRng::named(seed, "random-planar");
  std::vector<EdgeId> order(full.edges.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<char> alive(full.edges.size(), 1);
  auto connected = [&]() {
    std::vector<std::vector<VertexId>> adj(n);
    for (std::size_t e = 0; e < full.edges.size(); ++e) {
      if (!alive[e]) continue;
      adj[full.edges[e].u].push_back(full.edges[e].v);
      adj[full.edges[e].v].push_back(full.edges[e].u);
    }
    std::vector<char> seen(n, 0);
    std::vector<VertexId> st{0};
    seen[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
      VertexId v = st.back();
      st.pop_back();
      for (VertexId w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++cnt;
          st.push_back(w);
        }
      }
    }
    return cnt == n;
  };
  for (EdgeId e : order) {
    if (rng.uniform() < keep) continue;
    alive[e] = 0;
    if (!connected()) alive[e] = 1;
  }
  std::vector<EdgeId> renum(full.edges.size(), -1);
  GraphSpec out;
  out.n = n;
  for (std::size_t e = 0; e < full.edges.size(); ++e) {
    if (!alive[e]) continue;
    renum[e] = static_cast<EdgeId>(out.edges.size());
    out.edges.push_back(full.edges[e]);
  }
  out.rotation.assign(n, {});
  for (int v = 0; v < n; ++v) {
    for (EdgeId e : full.rotation[v]) {
      if (renum[e] >= 0) out.rotation[v].push_back(renum[e]);
    }
  }
  return out;
}

void randomize_weights(GraphSpec& spec, int pairs, std::int64_t max_cost, std::int64_t max_demand,
                       std::uint64_t seed) {
  if (max_cost < 1 || max_demand < 1 || pairs < 0) throw Error(ErrorCode::InvalidParams, "bad weight ranges");
  StreamRng rc = StreamRng::named(seed, "costs");
  for (Edge& e : spec.edges) e.cost = 1 + static_cast<std::int64_t>(rc.below(static_cast<std::uint64_t>(max_cost)));
  const int n = spec.n;
  const int possible = n * (n - 1) / 2;
  pairs = std::min(pairs, possible);
  StreamRng rd = StreamRng::named(seed, "demands");
  spec.demands.clear();
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) all.push_back({u, v});
  }
  for (int i = 0; i < pairs; ++i) {
    const std::size_t j = i + rd.below(all.size() - i);
    std::swap(all[i], all[j]);
    spec.demands.push_back(
        {all[i].first, all[i].second, 1 + static_cast<std::int64_t>(rd.below(static_cast<std::uint64_t>(max_demand)))});
  }
  std::sort(spec.demands.begin(), spec.demands.end(),
            [](const Demand& a, const Demand& b) { return std::pair{a.u, a.v} < std::pair{b.u, b.v}; });
}

GraphSpec generate_family(const std::string& family, const GeneratorParams& p) {
  GraphSpec s;
  if (family == "grid") {
    s = make_grid(p.rows, p.cols);
  } else if (family == "wheel") {
    s = make_wheel(p.spokes);
  } else if (family == "random-planar" || family == "random-planar-by-deletion") {
    s = make_random_planar(p.rows, p.cols, p.keep, p.seed);
  } else {
    throw Error(ErrorCode::InvalidParams, "unknown family '" + family + "'");
  }
  randomize_weights(s, p.demand_pairs, p.max_cost, p.max_demand, p.seed);
  return s;
}

}  // namespace planarcut
