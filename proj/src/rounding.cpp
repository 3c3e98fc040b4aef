#include "planarcut/rounding.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <omp.h>

#include "planarcut/profiles.hpp"

namespace planarcut {

Rounder::Rounder(const LpModel& m, const std::vector<double>& x, double tol) : m_(&m) {
  const NdhcTree& t = m.tree();
  table_.resize(t.size());
  for (int c : t.cluster_nodes()) {
    const NdhcNode& node = t.node(c);
    if (node.children.empty()) continue;
    const int p = node.parent;
    const VertexSet bp = t.boundary_plus(p);
    auto& tabs = table_[c];
    tabs.resize(m.profiles(p).size());
    for (int pi : node.children) {
      const auto& sets = m.profiles(pi);
      for (std::size_t k = 0; k < sets.size(); ++k) {
        const int w = m.x_index(p, sets[k] & bp) - m.first_x(p);
        const double v = std::max(0.0, x[m.first_x(pi) + static_cast<int>(k)]);
        Table& tab = tabs[w];
        tab.child.push_back(pi);
        tab.profile.push_back(static_cast<int>(k));
        tab.mass += v;
        tab.cdf.push_back(tab.mass);
      }
    }
    for (std::size_t w = 0; w < tabs.size(); ++w) {
      Table& tab = tabs[w];
      tab.target = x[m.first_x(p) + static_cast<int>(w)];
      tab.degenerate = !(tab.mass > 0) || std::abs(tab.mass - tab.target) > 10 * tol;
      if (tab.mass > 0) {
        for (double& v : tab.cdf) v /= tab.mass;
      }
    }
  }
}

RoundingTrace Rounder::sample(std::uint64_t key) const {
  const NdhcTree& t = m_->tree();
  RoundingTrace tr;
  tr.key = key;
  tr.choice.assign(t.size(), -1);
  tr.profile.assign(t.size(), -1);
  StreamRng rng(key);
  tr.profile[0] = m_->x_index(0, VertexSet{}) - m_->first_x(0);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int c : t.node(p).children) {
      if (t.node(c).children.empty()) continue;
      const Table& tab = table_[c][tr.profile[p]];
      if (tab.degenerate) {
        std::ostringstream os;
        os << "cluster " << c << " has conditional mass " << tab.mass << " against " << tab.target;
        throw Error(ErrorCode::DegenerateMass, os.str());
      }
      const double u = rng.uniform();
      auto it = std::upper_bound(tab.cdf.begin(), tab.cdf.end(), u);
      std::size_t i = std::min<std::size_t>(it - tab.cdf.begin(), tab.cdf.size() - 1);
      // Skip zero-weight entries that share the final cdf value.
      while (i > 0 && tab.cdf[i - 1] >= tab.cdf[i]) --i;
      const int pi = tab.child[i];
      tr.choice[c] = pi;
      tr.profile[pi] = tab.profile[i];
      tr.u |= m_->profiles(pi)[tab.profile[i]];
      stack.push_back(pi);
    }
  }
  return tr;
}

bool trace_consistent(const LpModel& m, const RoundingTrace& tr) {
  const NdhcTree& t = m.tree();
  for (int p : t.partition_nodes()) {
    if (!tr.relevant(p)) continue;
    if ((tr.u & t.boundary_plus(p)) != m.profiles(p)[tr.profile[p]]) return false;
  }
  return true;
}

double decoupling_lhs(double a, double b, double c, double d) {
  if (a < 0 || b < 0 || c < 0 || d < 0 || std::abs(a + b + c + d - 1) > 1e-9) {
    throw Error(ErrorCode::NotOnSimplex, "decoupling arguments must lie on the probability simplex");
  }
  return (a + b) * (b + d) + (a + c) * (c + d);
}

namespace {

double decoupling_slack(std::uint64_t seed, std::uint64_t i) {
  StreamRng rng = StreamRng::named(seed, "decoupling", {i});
  double e[4];
  double sum = 0;
  for (double& v : e) {
    v = -std::log1p(-rng.uniform());
    sum += v;
  }
  for (double& v : e) v /= sum;
  return decoupling_lhs(e[0], e[1], e[2], e[3]) - (e[1] + e[2]) / 2;
}

CutResult draw(const CutSampler& sampler, std::uint64_t seed, int i, int retries, int& resampled) {
  CutResult r = sampler(StreamRng::derive(seed, "amplify", {static_cast<std::uint64_t>(i)}));
  for (int k = 1; k <= retries && r.sparsity.is_infinite(); ++k) {
    ++resampled;
    r = sampler(StreamRng::derive(seed, "amplify", {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)}));
  }
  return r;
}

AmplifyResult reduce(std::vector<CutResult>& draws, int resampled) {
  AmplifyResult out;
  out.resampled = resampled;
  double sum = 0, sq = 0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const CutResult& r = draws[i];
    if (r.sparsity.is_infinite()) continue;
    ++out.finite;
    const double s = r.sparsity.to_double();
    sum += s;
    sq += s * s;
    out.total_cost += r.cost;
    out.total_demand += r.demand;
    if (out.best_index < 0 || r.sparsity < out.best.sparsity) {
      out.best = r;
      out.best_index = static_cast<int>(i);
    }
  }
  if (out.finite == 0) throw Error(ErrorCode::AllInfinite, "no sample separated any demand");
  out.mean = sum / out.finite;
  out.variance = out.finite > 1 ? std::max(0.0, (sq - sum * out.mean) / (out.finite - 1)) : 0.0;
  return out;
}

}  // namespace

double decoupling_min_slack(std::size_t samples, std::uint64_t seed) {
  double worst = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : worst)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
    worst = std::min(worst, decoupling_slack(seed, static_cast<std::uint64_t>(i)));
  }
  return worst;
}

double decoupling_min_slack_serial(std::size_t samples, std::uint64_t seed) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) worst = std::min(worst, decoupling_slack(seed, i));
  return worst;
}

AmplifyResult amplify(const CutSampler& sampler, int n, std::uint64_t seed, int retries) {
  if (n <= 0) throw Error(ErrorCode::InvalidParams, "amplification needs at least one sample");
  std::vector<CutResult> draws(n);
  std::vector<int> resampled(n, 0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    try {
      draws[i] = draw(sampler, seed, i, retries, resampled[i]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  int total = 0;
  for (int r : resampled) total += r;
  return reduce(draws, total);
}

AmplifyResult amplify_serial(const CutSampler& sampler, int n, std::uint64_t seed, int retries) {
  if (n <= 0) throw Error(ErrorCode::InvalidParams, "amplification needs at least one sample");
  std::vector<CutResult> draws(n);
  int resampled = 0;
  for (int i = 0; i < n; ++i) draws[i] = draw(sampler, seed, i, retries, resampled);
  return reduce(draws, resampled);
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::NumericalFailure: return "numerical-failure";
  }
  return "?";
}

std::int64_t total_demand(const EmbeddedPlanarGraph& g) {
  std::int64_t s = 0;
  for (const Demand& d : g.demands()) s += d.amount;
  return s;
}

void validate(const PipelineConfig& c) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidParams, what); };
  if (!(c.epsilon > 0 && c.epsilon <= 1)) bad("epsilon must lie in (0, 1]");
  if (c.z < 0) bad("z must be non-negative");
  if (!(c.a > 0)) bad("a must be positive");
  if (c.max_kappa == 0 || c.max_nodes == 0 || c.cycle_budget == 0 || c.max_lp_vars == 0 || c.max_dense_entries == 0) {
    bad("caps must be positive");
  }
  if (c.samples <= 0) bad("samples must be positive");
  if (c.alpha_max != 0 && c.alpha_max < c.alpha_min) bad("alpha-max below alpha-min");
}

CutResult lifted_sparsity(const EmbeddedPlanarGraph& g, const BridgeCore& core, const NormalizedInstance& ni,
                          VertexSet u) {
  const VertexSet side = core.lift(ni.lift(u));
  if (side.empty() || side == VertexSet::range(g.num_vertices())) return {};
  return sparsity(g, side);
}

constexpr int kMaxShrink = 8;

GuessRun run_guess(const EmbeddedPlanarGraph& g, const BridgeCore& core, const NormalizedInstance& ni, int gi, const PipelineConfig& cfg,
                   StageTimes& times) {
  GuessRun gr;
  gr.edge = ni.guess_edge;
  gr.u = ni.guess_u;
  gr.v = ni.guess_v;
  gr.identity = ni.identity;
  const auto gkey = static_cast<std::uint64_t>(gi);

  std::vector<double> grid = alpha_grid(total_demand(ni.graph), g.num_vertices(), cfg.epsilon);
  std::erase_if(grid, [&](double a) { return a < cfg.alpha_min || (cfg.alpha_max > 0 && a > cfg.alpha_max); });
  if (grid.empty()) {
    gr.note = "empty alpha grid";
    return gr;
  }

  // A tree whose profiles or LP overrun a cap is rebuilt from the same
  // streams with half the nodes and one kappa subset fewer.
  const DualGraph d = DualGraph::build(ni.graph);
  NdhcTree t;
  ProfileTable prof;
  LpModel m;
  std::string cap_note;
  for (int shrink = 0;; ++shrink) {
    const std::size_t max_nodes = std::max<std::size_t>(1, cfg.max_nodes >> shrink);
    const std::size_t max_kappa = cfg.max_kappa > static_cast<std::size_t>(shrink) ? cfg.max_kappa - shrink : 1;
    auto t0 = Clock::now();
    t = NdhcTree::build(d, {.epsilon = cfg.epsilon,
                            .z = cfg.z,
                            .a = cfg.a,
                            .n = g.num_vertices(),
                            .max_kappa = max_kappa,
                            .max_nodes = max_nodes,
                            .seed = StreamRng::derive(cfg.seed, "ndhc", {gkey})});
    times.ndhc += since(t0);
    gr.tree_nodes = t.size();
    gr.tree_height = t.height();
    gr.z = t.z();
    gr.shrink = shrink;
    const bool last = shrink >= kMaxShrink || (max_nodes == 1 && max_kappa == 1);
    try {
      t0 = Clock::now();
      prof = enumerate_all_profiles(t, cfg.cycle_budget);
      times.profiles += since(t0);
      t0 = Clock::now();
      m = LpModel::build(t, prof, grid.front(), {.max_vars = cfg.max_lp_vars});
      times.lp += since(t0);
      if (dense_entries(m) > cfg.max_dense_entries) {
        throw Error(ErrorCode::CapExceeded, "dense LP of " + std::to_string(dense_entries(m)) + " entries");
      }
    } catch (const Error& e) {
      const bool cap = e.code() == ErrorCode::CapExceeded || e.code() == ErrorCode::CycleBudgetExceeded;
      if (!cap || last) {
        gr.note = cap_note + e.what();
        return gr;
      }
      cap_note = e.what() + std::string(" at ") + std::to_string(max_nodes) + " nodes, kappa " +
                 std::to_string(max_kappa) + "; ";
      continue;
    }
    if (shrink > 0) {
      gr.note = cap_note + "tree rebuilt with at most " + std::to_string(max_nodes) + " nodes, kappa " +
                std::to_string(max_kappa);
    }
    break;
  }
  for (int p : t.partition_nodes()) gr.profiles += prof.at(p).size();
  gr.lp_vars = m.num_vars();
  gr.lp_rows = static_cast<int>(m.rows().size());

  auto t0 = Clock::now();
  for (std::size_t ai = 0; ai < grid.size(); ++ai) {
    AlphaRun ar;
    ar.alpha = grid[ai];
    m.set_alpha(ar.alpha);
    if (!cfg.export_lp.empty()) {
      std::ofstream(cfg.export_lp + "_g" + std::to_string(gi) + "_a" + std::to_string(ai) + ".lp") << m.to_lp_format();
    }
    t0 = Clock::now();
    LpSolution sol;
    try {
      sol = solve_lp(m, {.tol = cfg.lp_tol, .exact = cfg.exact_lp, .max_dense_entries = cfg.max_dense_entries});
    } catch (const Error& e) {
      times.lp += since(t0);
      gr.note += (gr.note.empty() ? "" : "; ") + std::string(e.what());
      break;
    }
    times.lp += since(t0);
    ar.status = sol.status;
    ar.objective = sol.objective;
    ar.iterations = sol.iterations;
    ar.residual = sol.residual.max_abs;
    if (sol.status == LpStatus::Infeasible) {
      gr.alphas.push_back(ar);
      break;  // larger alpha only shrinks the feasible region
    }
    if (sol.status == LpStatus::Optimal) {
      t0 = Clock::now();
      try {
        const Rounder r(m, sol.x, cfg.lp_tol);
        const CutSampler sampler = [&](std::uint64_t key) { return lifted_sparsity(g, core, ni, r.sample_set(key)); };
        ar.rounding = amplify(sampler, cfg.samples, StreamRng::derive(cfg.seed, "round", {gkey, ai}));
        ar.rounded = true;
        if (gr.best.sparsity.is_infinite() || ar.rounding.best.sparsity < gr.best.sparsity) gr.best = ar.rounding.best;
      } catch (const Error& e) {
        if (gr.note.empty()) gr.note = e.what();
      }
      times.rounding += since(t0);
    }
    gr.alphas.push_back(ar);
  }
  return gr;
}

// Reported sides never contain vertex 0.
CutResult without_root(const EmbeddedPlanarGraph& g, CutResult c) {
  if (c.side.contains(0)) c.side = VertexSet::range(g.num_vertices()) - c.side;
  return c;
}

// A cut of cost 0 separating demand exists iff some demand pair lies in
// different components of the positive-cost subgraph.
std::optional<CutResult> zero_cost_cut(const EmbeddedPlanarGraph& g) {
  std::vector<int> comp(g.num_vertices(), -1);
  int k = 0;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<VertexId> stack{s};
    comp[s] = k;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.cost == 0 || (ed.u != v && ed.v != v)) continue;
        const VertexId w = ed.u == v ? ed.v : ed.u;
        if (comp[w] < 0) {
          comp[w] = k;
          stack.push_back(w);
        }
      }
    }
    ++k;
  }
  for (const Demand& d : g.demands()) {
    if (d.amount <= 0 || comp[d.u] == comp[d.v]) continue;
    VertexSet side;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (comp[v] == comp[d.u]) side.insert(v);
    }
    return without_root(g, best_simple_cut(g, side));
  }
  return std::nullopt;
}

}  // namespace

PipelineResult run_pipeline(const EmbeddedPlanarGraph& g, const PipelineConfig& cfg) {
  validate(cfg);
  if (total_demand(g) == 0) throw Error(ErrorCode::NoDemand, "no pair has positive demand");
  PipelineResult out;

  auto t0 = Clock::now();
  if (auto z = zero_cost_cut(g)) {
    out.cut = *z;
    out.zero_cost = true;
    out.times.reduce = since(t0);
    return out;
  }
  // Cuts through a bridge are single edges and are scored exactly; the LP
  // runs on the bridgeless core.
  const BridgeCore core = bridge_core(g);
  out.bridges = static_cast<int>(core.bridges.size());
  out.bridge_cut = best_bridge_cut(g, core.bridges);
  out.cut = out.bridge_cut;
  std::vector<NormalizedInstance> guesses;
  if (core.graph.num_vertices() > 1 && total_demand(core.graph) > 0) {
    const EmbeddedPlanarGraph& h = core.graph;
    switch (cfg.guesses) {
      case PipelineConfig::Guesses::Single: guesses.push_back(single_guess(h)); break;
      case PipelineConfig::Guesses::All: guesses = guess_iterator(h); break;
      case PipelineConfig::Guesses::Auto:
        if (auto id = identity_instance(h)) {
          guesses.push_back(std::move(*id));
        } else {
          guesses = guess_iterator(h);
        }
        break;
    }
  }
  out.times.reduce = since(t0);

  for (std::size_t gi = 0; gi < guesses.size(); ++gi) {
    GuessRun gr = run_guess(g, core, guesses[gi], static_cast<int>(gi), cfg, out.times);
    if (!gr.note.empty()) out.warnings.push_back("guess " + std::to_string(gi) + ": " + gr.note);
    if (!gr.best.sparsity.is_infinite() && (out.cut.sparsity.is_infinite() || gr.best.sparsity < out.cut.sparsity)) {
      out.cut = gr.best;
    }
    out.guesses.push_back(std::move(gr));
  }
  if (out.cut.sparsity.is_infinite()) {
    std::string why;
    for (const std::string& w : out.warnings) why += "; " + w;
    throw Error(ErrorCode::AllInfinite, "no bridge or guess produced a finite cut" + why);
  }
  out.cut = without_root(g, best_simple_cut(g, out.cut.side));
  return out;
}

std::string to_text(const PipelineResult& r) {
  std::ostringstream os;
  char buf[256];
  auto cut_line = [&](const CutResult& c) {
    std::snprintf(buf, sizeof buf, "side=%s cost=%lld demand=%lld sparsity=%s (%.9g)", c.side.to_string().c_str(),
                  static_cast<long long>(c.cost), static_cast<long long>(c.demand), c.sparsity.to_string().c_str(),
                  c.sparsity.is_infinite() ? INFINITY : c.sparsity.to_double());
    return std::string(buf);
  };
  os << "cut " << cut_line(r.cut) << "\n";
  if (r.zero_cost) os << "zero-cost cut found before the LP stages\n";
  os << "bridges " << r.bridges;
  if (!r.bridge_cut.sparsity.is_infinite()) os << " best " << cut_line(r.bridge_cut);
  os << "\n";
  os << "guesses " << r.guesses.size() << "\n";
  for (std::size_t gi = 0; gi < r.guesses.size(); ++gi) {
    const GuessRun& g = r.guesses[gi];
    os << "guess " << gi << " edge=" << g.edge << " pair=(" << g.u << "," << g.v << ")"
       << " identity=" << (g.identity ? 1 : 0) << " tree_nodes=" << g.tree_nodes << " height=" << g.tree_height
       << " z=" << g.z << " shrink=" << g.shrink << " profiles=" << g.profiles << " lp_vars=" << g.lp_vars << " lp_rows=" << g.lp_rows << "\n";
    for (const AlphaRun& a : g.alphas) {
      std::snprintf(buf, sizeof buf, "  alpha=%.6f status=%s objective=%.9f iterations=%ld residual=%.3g", a.alpha,
                    status_name(a.status), a.objective, a.iterations, a.residual);
      os << buf;
      if (a.rounded) {
        std::snprintf(buf, sizeof buf, " best=%s mean=%.6f var=%.6f finite=%d resampled=%d",
                      a.rounding.best.sparsity.to_string().c_str(), a.rounding.mean, a.rounding.variance,
                      a.rounding.finite, a.rounding.resampled);
        os << buf;
      }
      os << "\n";
    }
    if (!g.best.sparsity.is_infinite()) os << "  best " << cut_line(g.best) << "\n";
    if (!g.note.empty()) os << "  note " << g.note << "\n";
  }
  for (const std::string& w : r.warnings) os << "warning " << w << "\n";
  return os.str();
}

}  // namespace planarcut
