#pragma once

#include <cstdint>
#include <vector>

namespace planarcut {

/// min c·x  s.t.  each row: a·x (= or >=) b,  0 <= x <= upper (upper < 0
/// means unbounded above). Rows are sparse with integer coefficients; the
/// right-hand sides are doubles converted exactly in rational mode.
struct SimplexProblem {
  struct Row {
    std::vector<std::pair<int, std::int64_t>> terms;
    bool ge = false;
    double rhs = 0;
  };
  int n = 0;
  std::vector<std::int64_t> cost;
  std::vector<Row> rows;
  std::vector<double> upper;
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <class T>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::IterationLimit;
  std::vector<T> x;
  T objective{};
  long iterations = 0;
  int redundant_rows = 0;
};

struct SimplexOptions {
  double tol = 1e-9;        // pivot and optimality tolerance (ignored when exact)
  long max_iterations = 2000000;
};

/// Dense bounded-variable two-phase primal simplex. The double version
/// prices by largest reduced cost and falls back to Bland's rule after a
/// run of degenerate pivots; the exact version (T = cpp_rational) always
/// uses Bland's rule. Redundant equality rows are detected after phase 1
/// and dropped.
template <class T>
SimplexResult<T> simplex_solve(const SimplexProblem& p, const SimplexOptions& opt = {});

}  // namespace planarcut
