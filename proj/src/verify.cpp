#include "planarcut/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "planarcut/enumerate.hpp"
#include "planarcut/generators.hpp"
#include "planarcut/ldd.hpp"
#include "planarcut/oracle.hpp"
#include "planarcut/patch_verify.hpp"
#include "planarcut/profiles.hpp"
#include "planarcut/reductions.hpp"
#include "planarcut/rounding.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace planarcut {

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << "\n";
  for (const std::string& l : lines) os << l << "\n";
  os << "result " << (passed ? "pass" : "fail") << "\n";
  if (!passed) os << "failure " << failure << "\n";
  return os.str();
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Recorder {
 public:
  explicit Recorder(std::string suite) { r_.suite = std::move(suite); }
  void line(const std::string& key, const std::string& value) { r_.lines.push_back(key + " " + value); }
  void line(const std::string& key, long long value) { line(key, std::to_string(value)); }
  // Records the first violated invariant only.
  void fail(const std::string& what) {
    if (r_.failure.empty()) r_.failure = what;
  }
  SuiteReport done() {
    r_.passed = r_.failure.empty();
    return std::move(r_);
  }

 private:
  SuiteReport r_;
};

std::int64_t total_demand(const GraphSpec& s) {
  std::int64_t t = 0;
  for (const Demand& d : s.demands) t += d.amount;
  return t;
}

}  // namespace

SuiteReport verify_duality(const VerifyParams& p) {
  Recorder rec("duality");
  const auto fixtures = duality_fixtures(p.max_edges);
  long long cycles = 0, cuts = 0, objective_bad = 0, set_bad = 0;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto g = EmbeddedPlanarGraph::build(fixtures[i]);
    const auto d = DualGraph::build(g);
    std::set<std::vector<EdgeId>> from_cycles, from_cuts;
    for (const DualCycle& c : all_simple_cycles(d)) {
      ++cycles;
      from_cycles.insert(c.edge_set());
      if (cycle_objective(d, c) != sparsity(g, c.enclosed()).sparsity) {
        ++objective_bad;
        rec.fail("cycle objective differs from sparsity of the enclosed side (fixture " + std::to_string(i) + ")");
      }
    }
    const int n = g.num_vertices();
    for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << n); ++m) {
      const VertexSet u(m);
      if (u.contains(0) || !is_simple_cut(g, u)) continue;
      ++cuts;
      from_cuts.insert(cut_edges(g, u));
    }
    if (from_cuts != from_cycles) {
      ++set_bad;
      rec.fail("simple cut edge sets differ from simple dual cycle edge sets (fixture " + std::to_string(i) + ")");
    }
  }
  rec.line("fixtures", static_cast<long long>(fixtures.size()));
  rec.line("max_edges", p.max_edges);
  rec.line("cycles", cycles);
  rec.line("simple_cuts", cuts);
  rec.line("edge_set_mismatches", set_bad);
  rec.line("objective_mismatches", objective_bad);
  return rec.done();
}

SuiteReport verify_decoupling(const VerifyParams& p) {
  Recorder rec("decoupling");
  const double slack = decoupling_min_slack(p.decoupling_samples, StreamRng::derive(p.seed, "verify-decoupling"));
  rec.line("samples", static_cast<long long>(p.decoupling_samples));
  rec.line("min_slack", fmt("%.17g", slack));
  if (slack < -1e-12) rec.fail("L < (b+c)/2 - 1e-12 at some sample");
  return rec.done();
}

SuiteReport verify_ldd(const VerifyParams& p) {
  Recorder rec("ldd");
  GraphSpec s = make_grid(5, 5);
  randomize_weights(s, 1, 4, 1, StreamRng::derive(p.seed, "verify-ldd-grid"));
  const WeightedGraph h = WeightedGraph::of_primal(EmbeddedPlanarGraph::build(s));
  rec.line("graph", "grid5x5 costs=1..4");
  rec.line("samples_per_run", static_cast<long long>(p.ldd_samples));
  for (std::size_t bi = 0; bi < p.ldd_bounds.size(); ++bi) {
    const double bound = p.ldd_bounds[bi];
    std::vector<LddStats> runs;
    for (int k = 0; k < p.ldd_seeds; ++k) {
      runs.push_back(ldd_monte_carlo(h, bound, p.ldd_samples,
                                     StreamRng::derive(p.seed, "verify-ldd", {bi, static_cast<std::uint64_t>(k)})));
    }
    const std::string tag = "D=" + fmt("%g", bound);
    double mean = 0;
    std::string betas;
    std::uint64_t unbounded = 0;
    for (const LddStats& r : runs) {
      mean += r.beta_hat / runs.size();
      betas += (betas.empty() ? "" : ",") + fmt("%.4f", r.beta_hat);
      unbounded += r.unbounded;
    }
    // Fit on the first seed, validate on the others.
    const double fitted = runs.front().beta_hat;
    std::size_t violations = 0;
    for (std::size_t k = 1; k < runs.size(); ++k) violations += ldd_violations(h, runs[k], bound, fitted).size();
    double spread = 0;
    for (const LddStats& r : runs) spread = std::max(spread, std::abs(r.beta_hat / mean - 1));
    rec.line(tag + " beta_hat", betas);
    rec.line(tag + " beta_fitted", fmt("%.4f", fitted));
    rec.line(tag + " beta_spread", fmt("%.4f", spread));
    rec.line(tag + " unbounded", static_cast<long long>(unbounded));
    rec.line(tag + " edge_violations", static_cast<long long>(violations));
    if (unbounded) rec.fail("a sampled partition is not " + tag + "-bounded");
    if (violations) rec.fail("edge cut frequency above fitted beta*cost/D at " + tag);
    if (spread > 0.2) rec.fail("beta_hat varies more than 20% across seeds at " + tag);
  }
  return rec.done();
}

std::vector<GraphSpec> patch_fixtures(int count, std::uint64_t seed) {
  std::vector<GraphSpec> out;
  for (int i = 0; i < count; ++i) {
    const auto variant = static_cast<std::uint64_t>(i / 16);
    const std::uint64_t rseed = StreamRng::derive(seed, "patch-fixture", {static_cast<std::uint64_t>(i)});
    GraphSpec s;
    switch (i % 16) {
      case 0: s = make_grid(2, 3); break;
      case 1: s = make_grid(2, 4); break;
      case 2: s = make_grid(3, 3); break;
      case 3: s = make_grid(2, 5); break;
      case 4: s = make_grid(3, 4); break;
      case 5: s = make_grid(2, 6); break;
      case 6: s = make_wheel(4); break;
      case 7: s = make_wheel(5); break;
      case 8: s = make_wheel(6); break;
      case 9: s = make_wheel(7); break;
      case 10: s = make_wheel(9); break;
      case 11: s = make_wheel(11); break;
      case 12: s = make_random_planar(3, 3, 0.8, rseed); break;
      case 13: s = make_random_planar(3, 4, 0.75, rseed); break;
      case 14: s = make_random_planar(2, 5, 0.8, rseed); break;
      default: s = make_random_planar(2, 6, 0.8, rseed); break;
    }
    randomize_weights(s, 3 + static_cast<int>(variant), 4, 5, rseed);
    out.push_back(std::move(s));
  }
  return out;
}

SuiteReport verify_patch(const VerifyParams& p) {
  Recorder rec("patch");
  const auto fixtures = patch_fixtures(p.patch_fixtures, p.seed);
  long long runs = 0, patched_runs = 0, small_runs = 0, small_failures = 0;
  double worst_ratio_slack = 1e300;
  int max_n = 0;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto g = EmbeddedPlanarGraph::build(fixtures[i]);
    const DualGraph d = DualGraph::build(g);
    max_n = std::max(max_n, g.num_vertices());
    const DualCycle c0 = cycle_of_cut(d, best_simple_cut(g, brute_force_sparsest(g).best.side).side);
    std::vector<int> zs{0};
    zs.insert(zs.end(), p.patch_small_z.begin(), p.patch_small_z.end());
    for (int z : zs) {
      const VirtualRun vr = run_virtual_guided(
          d, c0,
          {.epsilon = p.epsilon, .z = z, .n = g.num_vertices(),
           .seed = StreamRng::derive(p.seed, "verify-patch", {i, static_cast<std::uint64_t>(z)})});
      const VirtualRunReport& r = vr.report;
      const std::string tag = " (fixture " + std::to_string(i) + ", Z=" + std::to_string(vr.tree.z()) + ")";
      const double bound = 1.0 + 12.0 * r.levels_run / vr.tree.z();
      worst_ratio_slack = std::min(worst_ratio_slack, bound - r.cost_ratio());
      if (r.patched) ++patched_runs;
      if (!r.parity_ok) rec.fail("patch broke edge parity" + tag);
      if (!r.separation_ok) rec.fail("final cycles do not cover the separated demand" + tag);
      if (r.cost_ratio() > bound) rec.fail("cost ratio above 1 + 12*levels/Z" + tag);
      if (z == 0) {
        ++runs;
        if (!r.forcing_ok()) rec.fail(std::string("no forcing with at most Z crossings: ") + to_string(r.failure) + tag);
      } else {
        ++small_runs;
        if (r.failure != VirtualFailure::None) ++small_failures;
      }
    }
  }
  rec.line("fixtures", static_cast<long long>(fixtures.size()));
  rec.line("max_n", max_n);
  rec.line("default_z_runs", runs);
  rec.line("small_z_runs", small_runs);
  rec.line("small_z_failure_frequency", fmt("%.4f", small_runs ? static_cast<double>(small_failures) / small_runs : 0.0));
  rec.line("patched_runs", patched_runs);
  rec.line("min_ratio_slack", fmt("%.6f", worst_ratio_slack));
  return rec.done();
}

SuiteReport verify_lp_marginals(const VerifyParams& p) {
  Recorder rec("lp-marginals");
  GraphSpec s = make_wheel(6);
  randomize_weights(s, 3, 5, 5, StreamRng::derive(p.seed, "verify-marginals"));
  const auto g = EmbeddedPlanarGraph::build(s);
  const DualGraph d = DualGraph::build(g);
  const NdhcTree t = NdhcTree::build(d, {.epsilon = p.epsilon, .n = g.num_vertices(), .max_kappa = 6,
                                         .max_nodes = 2000, .seed = StreamRng::derive(p.seed, "verify-marginals-tree")});
  const ProfileTable prof = enumerate_all_profiles(t);
  const LpModel m = LpModel::build(t, prof, 0.5 * static_cast<double>(total_demand(s)));
  const LpSolution sol = solve_lp(m);
  rec.line("fixture", "wheel6");
  rec.line("lp_vars", m.num_vars());
  rec.line("lp_status", sol.status == LpStatus::Optimal ? "optimal" : "not-optimal");
  if (sol.status != LpStatus::Optimal) {
    rec.fail("fixture LP not solved");
    return rec.done();
  }
  rec.line("lp_objective", fmt("%.9f", sol.objective));

  // Second point: the optimum mixed with integral encodings of amenable
  // cycles. It has many more fractional entries than a basic solution.
  std::vector<std::vector<double>> parts;
  double alpha_mix = m.alpha();
  for (const DualCycle& c : all_simple_cycles(d)) {
    if (parts.size() == 8) break;
    try {
      const Forcing phi = find_amenable_forcing(t, c.walk());
      parts.push_back(encode_integral(m, c, phi));
      alpha_mix = std::min(alpha_mix, static_cast<double>(separated_demand(g, c.enclosed())));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAmenable) throw;
    }
  }
  std::vector<double> mix(sol.x.size(), 0.0);
  for (std::size_t k = 0; k < mix.size(); ++k) {
    mix[k] = 0.5 * sol.x[k];
    for (const auto& q : parts) mix[k] += 0.5 * q[k] / static_cast<double>(parts.size());
  }
  LpModel mixed = m;
  mixed.set_alpha(alpha_mix);
  const Residuals mix_res = residuals(mixed, mix);
  rec.line("mixture_cycles", static_cast<long long>(parts.size()));
  rec.line("mixture_feasible", mix_res.violated ? 0 : 1);
  if (parts.empty()) rec.fail("no amenable cycle for the mixture point");
  if (mix_res.violated) rec.fail("mixture point violates the LP rows");

  const int n_samples = p.marginal_samples;
  rec.line("samples", n_samples);
  auto check = [&](const std::vector<double>& x, const std::string& name, std::uint64_t stream) {
    const Rounder rounder(m, x);
    const int nx = m.num_single();
    const std::size_t npairs = m.pairs().size();
    std::vector<long long> cx(nx, 0), cy(npairs, 0);
    long long inconsistent = 0;
    const std::uint64_t key = StreamRng::derive(p.seed, "verify-marginals-draw", {stream});
#pragma omp parallel
    {
      std::vector<long long> lx(nx, 0), ly(npairs, 0);
      long long li = 0;
#pragma omp for schedule(static)
      for (int i = 0; i < n_samples; ++i) {
        const RoundingTrace tr = rounder.sample(StreamRng::derive(key, "sample", {static_cast<std::uint64_t>(i)}));
        if (!trace_consistent(m, tr)) ++li;
        for (int q : t.partition_nodes()) {
          if (tr.relevant(q)) ++lx[m.first_x(q) + tr.profile[q]];
        }
        for (std::size_t j = 0; j < npairs; ++j) {
          const LpPair& pr = m.pairs()[j];
          if (tr.u.contains(pr.s) != tr.u.contains(pr.t)) ++ly[j];
        }
      }
#pragma omp critical
      {
        for (int k = 0; k < nx; ++k) cx[k] += lx[k];
        for (std::size_t j = 0; j < npairs; ++j) cy[j] += ly[j];
        inconsistent += li;
      }
    }
    const double nn = n_samples;
    // Band: three binomial standard deviations plus the LP tolerance.
    auto z_of = [&](double expect, double observed) {
      const double sigma = std::sqrt(std::max(expect * (1 - expect), 0.0) / nn);
      return std::make_pair(std::abs(observed - expect) <= 3 * sigma + 1e-6,
                            sigma > 0 ? (observed - expect) / sigma : 0.0);
    };
    double wx = 0, we = 0, wd = 0;
    long long bx = 0, be = 0, bd = 0, ne = 0, nd = 0, frac = 0;
    for (int k = 0; k < nx; ++k) {
      const double v = std::clamp(x[k], 0.0, 1.0);
      if (v > 1e-6 && v < 1 - 1e-6) ++frac;
      const auto [ok, z] = z_of(v, cx[k] / nn);
      wx = std::max(wx, std::abs(z));
      if (!ok) ++bx;
    }
    const std::vector<double> y = pair_values(m, x);
    for (std::size_t j = 0; j < npairs; ++j) {
      const LpPair& pr = m.pairs()[j];
      const double f = cy[j] / nn;
      if (pr.edge) {
        ++ne;
        const auto [ok, z] = z_of(std::clamp(y[j], 0.0, 1.0), f);
        we = std::max(we, std::abs(z));
        if (!ok) ++be;
      }
      if (pr.demand > 0) {
        ++nd;
        const double half = std::clamp(y[j], 0.0, 1.0) / 2;
        const auto [ok, z] = z_of(half, f);
        if (z < 0) wd = std::max(wd, -z);
        if (!ok && f < half) ++bd;
      }
    }
    rec.line(name + " inconsistent_traces", inconsistent);
    rec.line(name + " x_entries", nx);
    rec.line(name + " x_fractional", frac);
    rec.line(name + " x_outside_3sigma", bx);
    rec.line(name + " x_worst_sigma", fmt("%.3f", wx));
    rec.line(name + " edge_pairs", ne);
    rec.line(name + " edge_outside_3sigma", be);
    rec.line(name + " edge_worst_sigma", fmt("%.3f", we));
    rec.line(name + " demand_pairs", nd);
    rec.line(name + " demand_below_half_y", bd);
    rec.line(name + " demand_worst_shortfall_sigma", fmt("%.3f", wd));
    if (inconsistent) rec.fail(name + ": a rounding trace disagrees with its chosen profiles");
    if (bx) rec.fail(name + ": x({p},S) frequency outside 3 sigma");
    if (be) rec.fail(name + ": edge separation frequency outside 3 sigma of y");
    if (bd) rec.fail(name + ": demand pair separated less than y/2 beyond 3 sigma");
  };
  check(sol.x, "optimum", 0);
  if (!parts.empty() && !mix_res.violated) check(mix, "mixture", 1);
  return rec.done();
}

std::vector<std::string> suite_names() { return {"duality", "decoupling", "ldd", "patch", "lp-marginals"}; }

SuiteReport run_suite(const std::string& name, const VerifyParams& p) {
  if (name == "duality") return verify_duality(p);
  if (name == "decoupling") return verify_decoupling(p);
  if (name == "ldd") return verify_ldd(p);
  if (name == "patch") return verify_patch(p);
  if (name == "lp-marginals") return verify_lp_marginals(p);
  throw Error(ErrorCode::InvalidParams, "unknown suite: " + name);
}

}  // namespace planarcut
