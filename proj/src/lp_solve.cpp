#include <string>

#include "planarcut/lp.hpp"
#include "planarcut/simplex.hpp"

namespace planarcut {

namespace {

SimplexProblem to_simplex(const LpModel& m) {
  SimplexProblem p;
  p.n = m.num_vars();
  p.cost.assign(p.n, 0);
  for (auto [j, c] : m.objective()) p.cost[j] += c;
  p.upper.assign(p.n, 1.0);
  for (const LpRow& r : m.rows()) {
    if (r.implied) continue;
    p.rows.push_back({r.terms, r.sense == Sense::Ge, r.rhs});
  }
  return p;
}

}  // namespace

std::size_t dense_entries(const LpModel& m) {
  std::size_t rows = 0, cols = static_cast<std::size_t>(m.num_vars());
  for (const LpRow& r : m.rows()) {
    if (r.implied) continue;
    ++rows;
    if (r.sense == Sense::Ge) ++cols;
  }
  return rows * cols;
}

LpSolution solve_lp(const LpModel& m, const SolveOptions& opt) {
  const SimplexProblem p = to_simplex(m);
  std::size_t cols = p.n;
  for (const auto& r : p.rows) cols += r.ge ? 1 : 0;
  if (p.rows.size() * cols > opt.max_dense_entries) {
    throw Error(ErrorCode::CapExceeded, "LP tableau " + std::to_string(p.rows.size()) + " x " + std::to_string(cols) +
                                            " exceeds the dense limit");
  }
  LpSolution out;
  SimplexStatus st;
  if (opt.exact) {
    auto r = simplex_solve<Rational>(p, {.tol = 0, .max_iterations = opt.max_iterations});
    st = r.status;
    out.iterations = r.iterations;
    if (st == SimplexStatus::Optimal) {
      out.residual = residuals(m, r.x);
      out.x.reserve(r.x.size());
      for (const Rational& v : r.x) out.x.push_back(v.convert_to<double>());
      out.objective = r.objective.convert_to<double>();
    }
  } else {
    auto r = simplex_solve<double>(p, {.tol = std::min(1e-9, opt.tol * 1e-2), .max_iterations = opt.max_iterations});
    st = r.status;
    out.iterations = r.iterations;
    if (st == SimplexStatus::Optimal) {
      out.x = std::move(r.x);
      out.objective = r.objective;
      out.residual = residuals(m, out.x, opt.tol);
    }
  }
  switch (st) {
    case SimplexStatus::Optimal:
      out.status = out.residual.max_abs <= opt.tol ? LpStatus::Optimal : LpStatus::NumericalFailure;
      break;
    case SimplexStatus::Infeasible:
      out.status = LpStatus::Infeasible;
      break;
    default:
      out.status = LpStatus::NumericalFailure;
      break;
  }
  return out;
}

}  // namespace planarcut
