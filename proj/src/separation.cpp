#include "planarcut/separation.hpp"

#include <cmath>

namespace planarcut {

bool check_separation_cover(const DualGraph& d, const DualCycle& c0, std::span<const ClosedWalk> walks) {
  std::vector<VertexSet> sides;
  sides.reserve(walks.size());
  for (const ClosedWalk& w : walks) sides.push_back(parity_side(d, w.edges));
  const VertexSet in0 = c0.enclosed();
  for (const Demand& q : d.primal().demands()) {
    if (in0.contains(q.u) == in0.contains(q.v)) continue;
    bool covered = false;
    for (VertexSet s : sides) {
      if (s.contains(q.u) != s.contains(q.v)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool check_parity(const DualGraph& d, const DualCycle& c0, std::span<const ClosedWalk> walks) {
  std::vector<char> par(d.num_edges(), 0);
  for (const ClosedWalk& w : walks) {
    for (EdgeId e : w.edges) par[e] ^= 1;
  }
  std::vector<char> want(d.num_edges(), 0);
  for (EdgeId e : c0.edges()) want[e] = 1;
  return par == want;
}

SparseChoice select_sparse_cycle(const DualGraph& d, const DualCycle& c0, std::span<const ClosedWalk> walks,
                                 double eps) {
  const EmbeddedPlanarGraph& g = d.primal();
  if (!check_separation_cover(d, c0, walks)) {
    throw Error(ErrorCode::PreconditionViolated, "walks do not cover the demand separated by c0");
  }
  std::int64_t total = 0;
  for (const ClosedWalk& w : walks) total += w.cost(d);
  if (static_cast<long double>(total) > (1.0L + eps) * static_cast<long double>(c0.cost()) + 1e-9L) {
    throw Error(ErrorCode::PreconditionViolated, "walks cost more than (1+eps) cost(c0)");
  }
  const Ratio s = cycle_objective(d, c0);
  if (s.is_infinite()) throw Error(ErrorCode::PreconditionViolated, "c0 separates no demand");
  // (1+eps) s as an exact comparison: cost_w * den * 1 <= (1+eps) * num * dem_w.
  for (std::size_t i = 0; i < walks.size(); ++i) {
    const VertexSet side = parity_side(d, walks[i].edges);
    const std::int64_t dem = separated_demand(g, side);
    if (dem == 0) continue;
    const std::int64_t cw = walks[i].cost(d);
    const long double lhs = static_cast<long double>(cw) * static_cast<long double>(s.den());
    const long double rhs = (1.0L + eps) * static_cast<long double>(s.num()) * static_cast<long double>(dem);
    if (lhs > rhs * (1.0L + 1e-15L)) continue;
    SparseChoice out;
    out.index = i;
    out.walk_ratio = Ratio(cw, dem);
    out.cut = best_simple_cut(g, side);
    out.cycle = DualCycle::from_edges(d, cut_edges(g, out.cut.side));
    return out;
  }
  throw Error(ErrorCode::PreconditionViolated, "no walk within (1+eps) of c0");
}

}  // namespace planarcut
