#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "planarcut/profiles.hpp"

namespace planarcut {

using Rational = boost::multiprecision::cpp_rational;

/// Sparse integer-coefficient linear form over LP variables.
using Expr = std::vector<std::pair<int, std::int64_t>>;

/// x({p},S) when q < 0; otherwise the lifted x({p,q},S) with p on the s
/// side and q on the t side of some demand pair (p, q incomparable).
struct LpVar {
  int p = -1;
  int q = -1;
  VertexSet set;
};

enum class RowKind { Consis1, Assign, MarginalS, MarginalT, Xfw, Alpha };
enum class Sense { Eq, Ge };

const char* to_string(RowKind k);

struct LpRow {
  RowKind kind = RowKind::Assign;
  Sense sense = Sense::Eq;
  Expr terms;
  double rhs = 0;
  /// Implied by the assign rows (pairs whose nodes are all comparable);
  /// kept for residual checks, skipped by the solver.
  bool implied = false;
  std::array<int, 4> key{};  // kind-specific ids for reporting
};

/// A face pair carried by the LP: a primal edge (cost > 0 or a shared dual
/// edge), a demand pair, or both.
struct LpPair {
  VertexId s = 0, t = 0;
  std::int64_t cost = 0;
  std::int64_t demand = 0;
  bool edge = false;
  Expr y;  // y({s,t}) as a sum of x variables
};

struct LpBuildOptions {
  bool implied_rows = true;
  std::size_t max_vars = 400000;  // CapExceeded past this
};

class LpModel {
 public:
  /// Instantiates every row for the given alpha. Throws MissingProfiles
  /// when a partition node has no profiles and CapExceeded past max_vars.
  static LpModel build(const NdhcTree& t, const ProfileTable& profiles, double alpha, const LpBuildOptions& opt = {});

  const NdhcTree& tree() const { return *tree_; }
  const std::vector<LpVar>& vars() const { return vars_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  const std::vector<LpPair>& pairs() const { return pairs_; }
  const Expr& objective() const { return objective_; }
  double alpha() const { return alpha_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_single() const { return num_single_; }

  /// Index of x({p},S), or -1.
  int x_index(int p, VertexSet s) const;
  /// Index of the lifted x({p,q},S) (p on the s side), or -1.
  int lifted_index(int p, int q, VertexSet s) const;
  /// Profiles of partition node p in variable order.
  const std::vector<VertexSet>& profiles(int p) const { return profile_sets_[p]; }
  int first_x(int p) const { return first_x_[p]; }

  void set_alpha(double alpha);
  std::string row_label(int r) const;
  std::string summary() const;

  /// Same model in CPLEX LP text format (implied rows omitted).
  std::string to_lp_format() const;

 private:
  const NdhcTree* tree_ = nullptr;
  std::vector<LpVar> vars_;
  std::vector<LpRow> rows_;
  std::vector<LpPair> pairs_;
  Expr objective_;
  double alpha_ = 0;
  int num_single_ = 0;
  int alpha_row_ = -1;
  std::vector<int> first_x_;
  std::vector<std::vector<VertexSet>> profile_sets_;
  std::map<std::pair<int, int>, std::pair<int, int>> lifted_;  // (p, q) -> [first, count)
};

double evaluate(const Expr& e, const std::vector<double>& x);
Rational evaluate(const Expr& e, const std::vector<Rational>& x);

struct Residuals {
  double max_abs = 0;   // over all rows, bounds included
  int worst_row = -1;   // -1 for a bound violation
  int violated = 0;     // rows above the tolerance
};

Residuals residuals(const LpModel& m, const std::vector<double>& x, double tol = 1e-7);
/// Exact version; max_abs is the absolute residual converted to double.
Residuals residuals(const LpModel& m, const std::vector<Rational>& x);

/// 0/1 assignment encoding the cycle under the forcing: x({p},S)=1 exactly
/// for retained p with S = inside(C) ∩ ∂+(p), lifted variables likewise.
/// Throws NotAmenable when a retained node lacks the cycle's profile.
std::vector<double> encode_integral(const LpModel& m, const DualCycle& c, const Forcing& phi);

enum class LpStatus { Optimal, Infeasible, NumericalFailure };

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  std::vector<double> x;
  double objective = 0;
  Residuals residual;
  long iterations = 0;
};

struct SolveOptions {
  double tol = 1e-7;
  long max_iterations = 2000000;
  bool exact = false;  // rational arithmetic with Bland's rule
  std::size_t max_dense_entries = 40'000'000;  // rows x columns; CapExceeded past this
};

/// Rows x columns of the dense tableau solve_lp would allocate.
std::size_t dense_entries(const LpModel& m);

/// Minimizes the objective over the model's non-implied rows and 0 <= x <= 1.
LpSolution solve_lp(const LpModel& m, const SolveOptions& opt = {});

/// Powers of (1+eps) from 1 up to min(n^5, total demand).
std::vector<double> alpha_grid(std::int64_t total_demand, int n, double eps);

/// Value of y({s,t}) per pair under x.
std::vector<double> pair_values(const LpModel& m, const std::vector<double>& x);

}  // namespace planarcut
