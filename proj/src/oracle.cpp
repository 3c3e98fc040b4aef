#include "planarcut/oracle.hpp"

#include <omp.h>

#include <algorithm>

namespace planarcut {

namespace {

struct Candidate {
  Ratio ratio = Ratio::infinite();
  std::uint64_t mask = 0;
  std::int64_t cost = 0;
  std::int64_t demand = 0;
  bool better_than(const Candidate& o) const { return ratio < o.ratio || (ratio == o.ratio && mask < o.mask); }
};

struct Flat {
  std::vector<std::uint64_t> eu, ev;
  std::vector<std::int64_t> ec;
  std::vector<std::uint64_t> du, dv;
  std::vector<std::int64_t> da;
};

Flat flatten(const EmbeddedPlanarGraph& g) {
  Flat f;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    f.eu.push_back(e.u);
    f.ev.push_back(e.v);
    f.ec.push_back(e.cost);
  }
  for (const Demand& d : g.demands()) {
    f.du.push_back(d.u);
    f.dv.push_back(d.v);
    f.da.push_back(d.amount);
  }
  return f;
}

// Subsets are indexed by masks over vertices 1..n-1, shifted left by one.
Candidate evaluate(const Flat& f, std::uint64_t idx) {
  const std::uint64_t mask = idx << 1;
  Candidate c;
  c.mask = mask;
  for (std::size_t i = 0; i < f.ec.size(); ++i) {
    if (((mask >> f.eu[i]) ^ (mask >> f.ev[i])) & 1U) c.cost += f.ec[i];
  }
  for (std::size_t i = 0; i < f.da.size(); ++i) {
    if (((mask >> f.du[i]) ^ (mask >> f.dv[i])) & 1U) c.demand += f.da[i];
  }
  c.ratio = c.demand > 0 ? Ratio(c.cost, c.demand) : Ratio::infinite();
  return c;
}

void check_input(const EmbeddedPlanarGraph& g, int limit) {
  if (g.num_vertices() > limit) {
    throw Error(ErrorCode::TooLarge, "brute force limited to " + std::to_string(limit) + " vertices");
  }
  if (g.num_vertices() < 2) throw Error(ErrorCode::NoDemand, "a single vertex has no cut");
  if (g.total_demand() == 0) throw Error(ErrorCode::NoDemand, "no pair has positive demand");
}

OracleResult finish(const EmbeddedPlanarGraph& g, const Candidate& best, std::uint64_t count) {
  OracleResult r;
  r.best = sparsity(g, VertexSet(best.mask));
  r.subsets_checked = count;
  return r;
}

}  // namespace

OracleResult brute_force_sparsest_serial(const EmbeddedPlanarGraph& g, int limit) {
  check_input(g, limit);
  const Flat f = flatten(g);
  const std::uint64_t total = std::uint64_t{1} << (g.num_vertices() - 1);
  Candidate best;
  bool have = false;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    const Candidate c = evaluate(f, idx);
    if (!have || c.better_than(best)) {
      best = c;
      have = true;
    }
  }
  return finish(g, best, total - 1);
}

OracleResult brute_force_sparsest(const EmbeddedPlanarGraph& g, int limit) {
  check_input(g, limit);
  const Flat f = flatten(g);
  const std::int64_t total = std::int64_t{1} << (g.num_vertices() - 1);
  std::vector<Candidate> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
  std::vector<char> have(per_thread.size(), 0);
#pragma omp parallel
  {
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
#pragma omp for schedule(static)
    for (std::int64_t idx = 1; idx < total; ++idx) {
      const Candidate c = evaluate(f, static_cast<std::uint64_t>(idx));
      if (!have[t] || c.better_than(per_thread[t])) {
        per_thread[t] = c;
        have[t] = 1;
      }
    }
  }
  Candidate best;
  bool any = false;
  for (std::size_t t = 0; t < per_thread.size(); ++t) {
    if (have[t] && (!any || per_thread[t].better_than(best))) {
      best = per_thread[t];
      any = true;
    }
  }
  return finish(g, best, static_cast<std::uint64_t>(total - 1));
}

namespace {

// Cycles whose smallest vertex is `start`: self-loops at start, then
// paths through larger vertices that return to start.
void cycles_from(const DualGraph& d, FaceId start, std::size_t budget, std::vector<std::vector<EdgeId>>& out) {
  for (const auto& [w, e] : d.incident(start)) {
    if (w == start) out.push_back({e});
  }
  std::vector<char> used(d.num_vertices(), 0);
  std::vector<EdgeId> path;
  used[start] = 1;
  auto dfs = [&](auto&& self, FaceId v) -> void {
    for (const auto& [w, e] : d.incident(v)) {
      if (out.size() > budget) return;
      if (w == v) continue;
      if (!path.empty() && e == path.back()) continue;
      if (w == start && !path.empty()) {
        if (path.front() < e) {
          path.push_back(e);
          out.push_back(path);
          path.pop_back();
        }
        continue;
      }
      if (w < start || used[w]) continue;
      used[w] = 1;
      path.push_back(e);
      self(self, w);
      path.pop_back();
      used[w] = 0;
    }
  };
  dfs(dfs, start);
}

}  // namespace

std::vector<DualCycle> all_simple_cycles(const DualGraph& d, std::size_t budget) {
  const int nv = d.num_vertices();
  std::vector<std::vector<std::vector<EdgeId>>> shards(nv);
  bool over = false;
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < nv; ++s) {
    cycles_from(d, s, budget, shards[s]);
    if (shards[s].size() > budget) {
#pragma omp atomic write
      over = true;
    }
  }
  std::size_t total = 0;
  for (const auto& s : shards) total += s.size();
  if (over || total > budget) {
    throw Error(ErrorCode::CycleBudgetExceeded, "more than " + std::to_string(budget) + " simple cycles");
  }
  std::vector<DualCycle> cycles;
  cycles.reserve(total);
  for (const auto& s : shards) {
    for (const auto& edges : s) cycles.push_back(DualCycle::from_edges(d, edges));
  }
  return cycles;
}

Ratio min_cycle_sparsity(const DualGraph& d, const std::vector<DualCycle>& cycles) {
  Ratio best = Ratio::infinite();
  for (const DualCycle& c : cycles) best = std::min(best, cycle_objective(d, c));
  return best;
}

}  // namespace planarcut
