#include "planarcut/sparsity.hpp"

namespace planarcut {

std::int64_t cut_cost(const EmbeddedPlanarGraph& g, VertexSet side) {
  std::int64_t c = 0;
  for (const Edge& e : g.edges()) {
    if (side.contains(e.u) != side.contains(e.v)) c += e.cost;
  }
  return c;
}

std::int64_t separated_demand(const EmbeddedPlanarGraph& g, VertexSet side) {
  std::int64_t s = 0;
  for (const Demand& d : g.demands()) {
    if (side.contains(d.u) != side.contains(d.v)) s += d.amount;
  }
  return s;
}

CutResult sparsity(const EmbeddedPlanarGraph& g, VertexSet side) {
  const VertexSet all = VertexSet::range(g.num_vertices());
  if (side.empty() || side == all || !side.subset_of(all)) {
    throw Error(ErrorCode::EmptyOrFullSet, "cut side must be a nonempty proper subset");
  }
  CutResult r;
  r.side = side;
  r.cost = cut_cost(g, side);
  r.demand = separated_demand(g, side);
  r.sparsity = r.demand > 0 ? Ratio(r.cost, r.demand) : Ratio::infinite();
  return r;
}

Ratio cycle_objective(const DualGraph& d, const DualCycle& c) {
  std::int64_t cost = 0;
  for (EdgeId e : c.edges()) cost += d.cost(e);
  std::int64_t dem = 0;
  const VertexSet in = c.enclosed();
  for (const Demand& q : d.primal().demands()) {
    if (in.contains(q.u) != in.contains(q.v)) dem += q.amount;
  }
  return dem > 0 ? Ratio(cost, dem) : Ratio::infinite();
}

namespace {

CutResult best_component(const EmbeddedPlanarGraph& g, VertexSet side) {
  CutResult best;
  bool have = false;
  for (VertexSet comp : components(g, side)) {
    CutResult r = sparsity(g, comp);
    if (!have || r.sparsity < best.sparsity) {
      best = r;
      have = true;
    }
  }
  return best;
}

}  // namespace

CutResult best_simple_cut(const EmbeddedPlanarGraph& g, VertexSet side) {
  const VertexSet all = VertexSet::range(g.num_vertices());
  CutResult first = best_component(g, side);
  // Components of the complement each see only edges into first.side, which
  // is connected, so every candidate here is a simple cut.
  return best_component(g, all - first.side);
}

}  // namespace planarcut
