#include "planarcut/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace planarcut {

namespace {

int count_faces(int n, const std::vector<std::pair<int, int>>& edges, const std::vector<std::vector<int>>& rot_darts) {
  const int m = static_cast<int>(edges.size());
  std::vector<int> pos(2 * m), tail(2 * m);
  for (int v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < rot_darts[v].size(); ++i) {
      pos[rot_darts[v][i]] = static_cast<int>(i);
      tail[rot_darts[v][i]] = v;
    }
  }
  std::vector<char> seen(2 * m, 0);
  int faces = 0;
  for (int d0 = 0; d0 < 2 * m; ++d0) {
    if (seen[d0]) continue;
    ++faces;
    int d = d0;
    do {
      seen[d] = 1;
      const int t = d ^ 1;
      const auto& r = rot_darts[tail[t]];
      d = r[(pos[t] + 1) % r.size()];
    } while (d != d0);
  }
  return m == 0 ? 1 : faces;
}

}  // namespace

GraphSpec embed_by_search(int n, const std::vector<std::pair<int, int>>& edges) {
  const int m = static_cast<int>(edges.size());
  std::vector<std::vector<int>> rot(n);
  for (int e = 0; e < m; ++e) {
    rot[edges[e].first].push_back(2 * e);
    rot[edges[e].second].push_back(2 * e + 1);
  }
  // Odometer over permutations of each rotation with its first dart fixed.
  for (auto& r : rot) std::sort(r.begin(), r.end());
  while (true) {
    if (n - m + count_faces(n, edges, rot) == 2) {
      GraphSpec s;
      s.n = n;
      for (auto [u, v] : edges) s.edges.push_back({u, v, 1});
      s.rotation.assign(n, {});
      for (int v = 0; v < n; ++v) {
        for (int d : rot[v]) s.rotation[v].push_back(d >> 1);
      }
      return s;
    }
    int v = 0;
    for (; v < n; ++v) {
      if (rot[v].size() > 2 && std::next_permutation(rot[v].begin() + 1, rot[v].end())) break;
    }
    if (v == n) return GraphSpec{};
  }
}

std::vector<GraphSpec> small_planar_graphs(int max_n, int max_edges) {
  std::vector<GraphSpec> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) all.push_back({u, v});
    }
    std::vector<int> perm(n);
    std::set<std::uint64_t> classes;
    const int pairs = static_cast<int>(all.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      if (std::popcount(mask) > max_edges || std::popcount(mask) < n - 1) continue;
      // Connectivity.
      std::vector<int> comp(n);
      std::iota(comp.begin(), comp.end(), 0);
      auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
      };
      int parts = n;
      for (int i = 0; i < pairs; ++i) {
        if (!((mask >> i) & 1U)) continue;
        const int a = find(all[i].first), b = find(all[i].second);
        if (a != b) {
          comp[a] = b;
          --parts;
        }
      }
      if (parts != 1) continue;
      // Canonical form: smallest relabelled adjacency mask.
      std::uint64_t canon = ~std::uint64_t{0};
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::uint64_t img = 0;
        for (int i = 0; i < pairs; ++i) {
          if (!((mask >> i) & 1U)) continue;
          int a = perm[all[i].first], b = perm[all[i].second];
          if (a > b) std::swap(a, b);
          const int idx = a * (2 * n - a - 1) / 2 + (b - a - 1);
          img |= std::uint64_t{1} << idx;
        }
        canon = std::min(canon, img);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!classes.insert(canon).second) continue;
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < pairs; ++i) {
        if ((mask >> i) & 1U) edges.push_back(all[i]);
      }
      GraphSpec s = embed_by_search(n, edges);
      if (s.n == 0) continue;
      // Deterministic demands: a few pairs from a hash of the mask.
      std::uint64_t h = mask * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n);
      for (int i = 0; i < pairs; ++i) {
        h ^= h >> 29;
        h *= 0xBF58476D1CE4E5B9ULL;
        if (i == 0 || (h >> 61) == 0) {
          s.demands.push_back({all[i].first, all[i].second, static_cast<std::int64_t>(1 + (h >> 59) % 5)});
        }
      }
      // Varied costs keep sparsity ties rare.
      for (std::size_t e = 0; e < s.edges.size(); ++e) s.edges[e].cost = 1 + static_cast<std::int64_t>((e * 7 + mask) % 3);
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

void add_demand_ends(GraphSpec& s) {
  if (s.n >= 2) s.demands = {{0, s.n - 1, 2}};
  for (std::size_t e = 0; e < s.edges.size(); ++e) s.edges[e].cost = 1 + static_cast<std::int64_t>(e % 3);
}

GraphSpec from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  GraphSpec s = embed_by_search(n, edges);
  if (s.n != 0) add_demand_ends(s);
  return s;
}

}  // namespace

std::vector<GraphSpec> duality_fixtures(int max_edges) {
  std::vector<GraphSpec> out = small_planar_graphs(6, max_edges);
  std::vector<std::vector<std::pair<int, int>>> extra;
  std::vector<int> sizes;
  auto add = [&](int n, std::vector<std::pair<int, int>> edges) {
    if (static_cast<int>(edges.size()) <= max_edges) {
      sizes.push_back(n);
      extra.push_back(std::move(edges));
    }
  };
  // Paths, stars and cycles beyond six vertices.
  for (int n = 7; n <= max_edges + 1; ++n) {
    std::vector<std::pair<int, int>> path, star;
    for (int i = 0; i + 1 < n; ++i) {
      path.push_back({i, i + 1});
      star.push_back({0, i + 1});
    }
    add(n, path);
    add(n, star);
    if (n <= max_edges) {
      path.push_back({n - 1, 0});
      add(n, path);
    }
  }
  // Bonds: two vertices joined by k parallel edges.
  for (int k = 2; k <= std::min(max_edges, 6); ++k) add(2, std::vector<std::pair<int, int>>(k, {0, 1}));
  // Multigraphs: doubled edges on a triangle and a square, a doubled path.
  add(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}});
  add(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}, {1, 2}});
  add(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 1}});
  add(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 1}, {2, 3}});
  add(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}});
  // 2x3 grid, wheel with 4 spokes, a square with a pendant path.
  add(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
  add(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}});
  add(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {3, 4}, {4, 5}, {5, 6}});
  for (std::size_t i = 0; i < extra.size(); ++i) {
    GraphSpec s = from_edges(sizes[i], extra[i]);
    if (s.n != 0) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace planarcut
