#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "planarcut/lp.hpp"
#include "planarcut/reductions.hpp"
#include "planarcut/rng.hpp"
#include "planarcut/sparsity.hpp"

namespace planarcut {

/// One top-down descent. choice[c] is the partition node picked at cluster
/// c (-1 when c was not reached); profile[p] indexes LpModel::profiles(p)
/// for relevant p and is -1 elsewhere.
struct RoundingTrace {
  std::vector<int> choice;
  std::vector<int> profile;
  VertexSet u;
  std::uint64_t key = 0;

  bool relevant(int p) const { return profile[p] >= 0; }
};

/// Conditional tables for rounding one LP solution. At cluster c whose
/// parent p took profile W, the pair (p_i, S) with S restricted to
/// boundary_plus(p) equal to W is drawn with probability x({p_i},S)/x({p},W).
class Rounder {
 public:
  /// Tables whose mass deviates from x({p},W) by at most 10*tol are
  /// renormalized; larger deviations raise DegenerateMass when reached.
  Rounder(const LpModel& m, const std::vector<double>& x, double tol = 1e-7);

  RoundingTrace sample(std::uint64_t key) const;
  VertexSet sample_set(std::uint64_t key) const { return sample(key).u; }

  const LpModel& model() const { return *m_; }

 private:
  struct Table {
    std::vector<int> child;    // partition node
    std::vector<int> profile;  // index into the child's profiles
    std::vector<double> cdf;
    bool degenerate = false;
    double mass = 0, target = 0;
  };
  const LpModel* m_;
  // table_[c][w] for cluster c and parent profile index w.
  std::vector<std::vector<Table>> table_;
};

/// U ∩ boundary_plus(p) equals the chosen profile at every relevant p.
bool trace_consistent(const LpModel& m, const RoundingTrace& tr);

/// (a+b)(b+d) + (a+c)(c+d). Throws NotOnSimplex unless a..d >= 0 and
/// they sum to 1 within 1e-9.
double decoupling_lhs(double a, double b, double c, double d);

/// Worst value of L - (b+c)/2 over `samples` uniform points of the
/// 3-simplex drawn from the given seed (non-negative when the inequality
/// holds).
double decoupling_min_slack(std::size_t samples, std::uint64_t seed);
double decoupling_min_slack_serial(std::size_t samples, std::uint64_t seed);

/// Produces one cut from the stream key it is given.
using CutSampler = std::function<CutResult(std::uint64_t key)>;

struct AmplifyResult {
  CutResult best;
  int best_index = -1;
  int finite = 0;         // samples with finite sparsity
  int resampled = 0;      // infinite draws replaced
  double mean = 0;        // over finite sample sparsities
  double variance = 0;
  std::int64_t total_cost = 0, total_demand = 0;
};

/// Draws N cuts with keys derived from (seed, "amplify", i); an infinite
/// draw is retried up to `retries` times with (seed, "amplify", i, r).
/// Returns the sparsest (lowest index on ties). Throws AllInfinite when
/// every draw separated no demand. Results do not depend on the number
/// of threads.
AmplifyResult amplify(const CutSampler& sampler, int n, std::uint64_t seed, int retries = 20);
AmplifyResult amplify_serial(const CutSampler& sampler, int n, std::uint64_t seed, int retries = 20);

struct PipelineConfig {
  double epsilon = 0.5;
  int z = 0;                      // 0: default for n and epsilon
  double a = 2.0;
  std::size_t max_kappa = 6;      // kappa subsets per sampled partition
  std::size_t max_nodes = 2000;   // NDHC node cap
  std::size_t cycle_budget = 200000;
  std::size_t max_lp_vars = 400000;
  std::size_t max_dense_entries = 40'000'000;
  double alpha_min = 1;
  double alpha_max = 0;           // 0: min(n^5, total demand)
  int samples = 200;              // amplification N
  enum class Guesses { Auto, Single, All } guesses = Guesses::Auto;
  bool exact_lp = false;
  double lp_tol = 1e-7;
  std::uint64_t seed = 1;
  std::string export_lp;          // write each LP here (suffix _g<guess>_a<alpha>.lp)
};

struct AlphaRun {
  double alpha = 0;
  LpStatus status = LpStatus::NumericalFailure;
  double objective = 0;
  long iterations = 0;
  double residual = 0;
  AmplifyResult rounding;  // meaningful when status is Optimal
  bool rounded = false;
};

struct GuessRun {
  EdgeId edge = -1;
  VertexId u = -1, v = -1;
  bool identity = false;
  int tree_nodes = 0;
  int tree_height = 0;
  int z = 0;
  int shrink = 0;  // times the tree was rebuilt smaller to fit the caps
  std::size_t profiles = 0;
  int lp_vars = 0;
  int lp_rows = 0;
  std::vector<AlphaRun> alphas;
  CutResult best;  // in the original instance
  std::string note;  // cap or failure diagnostics
};

struct StageTimes {
  double reduce = 0, ndhc = 0, profiles = 0, lp = 0, rounding = 0;
};

struct PipelineResult {
  CutResult cut;  // simple cut in the original instance; side excludes vertex 0
  bool zero_cost = false;  // a cost-0 cut separating demand was found directly
  int bridges = 0;
  CutResult bridge_cut;    // sparsest single-bridge cut
  std::vector<GuessRun> guesses;
  std::vector<std::string> warnings;
  StageTimes times;
};

/// A cost-0 cut separating demand, when one exists, is returned at once.
/// Otherwise every bridge cut is scored exactly and, on the graph with
/// bridges contracted: reduction guesses -> dual -> NDHC -> profiles -> one LP per alpha ->
/// amplified rounding; the sparsest cut found, made simple, in the
/// original graph. Throws NoDemand, and AllInfinite when no guess produced
/// a finite cut. Cap overruns in a guess are recorded and skipped.
PipelineResult run_pipeline(const EmbeddedPlanarGraph& g, const PipelineConfig& cfg);

/// Deterministic plain-text report (no timings).
std::string to_text(const PipelineResult& r);

}  // namespace planarcut
