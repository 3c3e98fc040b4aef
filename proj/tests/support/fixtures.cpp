#include "fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "planarcut/enumerate.hpp"
#include "planarcut/generators.hpp"

namespace fixtures {

using namespace planarcut;

GraphSpec c4() {
  GraphSpec s = make_grid(2, 2);
  s.demands = {{0, 3, 1}};  // opposite corners of the square
  return s;
}

GraphSpec k4() {
  // Triangle 1,2,3 around center 0.
  GraphSpec s = make_wheel(3);
  s.demands = {{0, 1, 1}};
  return s;
}

GraphSpec grid(int rows, int cols, std::vector<Demand> demands) {
  GraphSpec s = make_grid(rows, cols);
  s.demands = std::move(demands);
  return s;
}

GraphSpec wheel(int spokes, std::vector<Demand> demands) {
  GraphSpec s = make_wheel(spokes);
  s.demands = std::move(demands);
  return s;
}

GraphSpec path(const std::vector<std::int64_t>& costs, std::vector<Demand> demands) {
  GraphSpec s;
  s.n = static_cast<int>(costs.size()) + 1;
  s.rotation.assign(s.n, {});
  for (int i = 0; i + 1 < s.n; ++i) {
    s.edges.push_back({i, i + 1, costs[i]});
    s.rotation[i].push_back(i);
    s.rotation[i + 1].push_back(i);
  }
  s.demands = std::move(demands);
  return s;
}

GraphSpec embed(int n, const std::vector<std::pair<int, int>>& edges) { return embed_by_search(n, edges); }

std::vector<GraphSpec> small_planar_graphs(int max_n, int max_edges) {
  return planarcut::small_planar_graphs(max_n, max_edges);
}

}  // namespace fixtures
