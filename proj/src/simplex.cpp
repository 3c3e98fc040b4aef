#include "planarcut/simplex.hpp"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace planarcut {

namespace {

using boost::multiprecision::cpp_rational;

template <class T>
constexpr bool kExact = !std::is_floating_point_v<T>;

template <class T>
T abs_of(const T& v) {
  return v < 0 ? T(-v) : v;
}

// Columns are the structural variables followed by one surplus per >= row.
// Artificial variables have no stored column: once one leaves the basis it
// never comes back.
template <class T>
class Tableau {
 public:
  Tableau(const SimplexProblem& p, const SimplexOptions& opt) : opt_(opt) {
    tol_ = kExact<T> ? T(0) : T(opt.tol);
    n_ = p.n;
    int surplus = 0;
    for (const auto& r : p.rows) surplus += r.ge ? 1 : 0;
    cols_ = n_ + surplus;
    m_ = static_cast<int>(p.rows.size());
    a_.assign(static_cast<std::size_t>(m_) * cols_, T(0));
    ub_.assign(cols_, T(0));
    finite_.assign(cols_, false);
    for (int j = 0; j < n_; ++j) {
      if (p.upper[j] >= 0) {
        finite_[j] = true;
        ub_[j] = T(p.upper[j]);
      }
    }
    cost_.assign(cols_, T(0));
    for (int j = 0; j < n_; ++j) cost_[j] = T(p.cost[j]);
    at_upper_.assign(cols_, false);
    row_of_.assign(cols_, -1);
    basis_.resize(m_);
    xb_.resize(m_);
    dead_.assign(m_, false);
    int s = n_;
    for (int i = 0; i < m_; ++i) {
      const auto& r = p.rows[i];
      const bool neg = r.rhs < 0;
      for (auto [j, c] : r.terms) at(i, j) += T(neg ? -c : c);
      if (r.ge) at(i, s++) = T(neg ? 1 : -1);
      xb_[i] = T(neg ? -r.rhs : r.rhs);
      basis_[i] = cols_ + i;  // artificial
    }
  }

  SimplexResult<T> run() {
    SimplexResult<T> out;
    // Phase 1: minimize the sum of artificials.
    d_.assign(cols_, T(0));
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (at(i, j) != 0) d_[j] -= at(i, j);
      }
    }
    SimplexStatus st = iterate(out.iterations);
    if (st == SimplexStatus::IterationLimit) return finish(out, st);
    T infeas(0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= cols_) infeas += xb_[i];
    }
    if (infeas > (kExact<T> ? T(0) : T(opt_.tol * std::max(1, m_)))) return finish(out, SimplexStatus::Infeasible);
    drive_out_artificials(out);

    // Phase 2.
    d_ = cost_;
    for (int i = 0; i < m_; ++i) {
      if (dead_[i]) continue;
      const T& cb = basis_[i] < cols_ ? cost_[basis_[i]] : zero_;
      if (cb == 0) continue;
      for (int j = 0; j < cols_; ++j) {
        if (at(i, j) != 0) d_[j] -= cb * at(i, j);
      }
    }
    st = iterate(out.iterations);
    return finish(out, st);
  }

 private:
  T& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool eligible(int j) const {
    if (row_of_[j] >= 0) return false;
    if (finite_[j] && ub_[j] == 0) return false;
    return at_upper_[j] ? d_[j] > tol_ : d_[j] < -tol_;
  }

  SimplexStatus iterate(long& iterations) {
    bool bland = kExact<T>;
    int degenerate = 0;
    const T ptol = kExact<T> ? T(0) : T(opt_.tol);
    while (true) {
      if (iterations >= opt_.max_iterations) return SimplexStatus::IterationLimit;
      int enter = -1;
      T best(0);
      for (int j = 0; j < cols_; ++j) {
        if (!eligible(j)) continue;
        if (bland) {
          enter = j;
          break;
        }
        const T score = abs_of(d_[j]);
        if (enter < 0 || score > best) {
          enter = j;
          best = score;
        }
      }
      if (enter < 0) return SimplexStatus::Optimal;
      ++iterations;
      const int dir = at_upper_[enter] ? -1 : 1;

      // Ratio test.
      int leave = -1;
      bool leave_upper = false;
      bool have = finite_[enter];
      T theta = finite_[enter] ? ub_[enter] : T(0);
      T leave_piv(0);
      for (int i = 0; i < m_; ++i) {
        if (dead_[i]) continue;
        const T rate = dir > 0 ? at(i, enter) : T(-at(i, enter));
        T lim;
        bool up = false;
        if (rate > ptol) {
          lim = xb_[i] / rate;
          if (lim < 0) lim = 0;
        } else if (rate < -ptol) {
          const int b = basis_[i];
          if (b >= cols_ || !finite_[b]) continue;
          lim = (ub_[b] - xb_[i]) / -rate;
          if (lim < 0) lim = 0;
          up = true;
        } else {
          continue;
        }
        bool take = !have || lim < theta;
        if (!take && lim == theta && leave >= 0) {
          take = bland ? basis_[i] < basis_[leave] : abs_of(rate) > leave_piv;
        }
        if (take) {
          have = true;
          theta = lim;
          leave = i;
          leave_upper = up;
          leave_piv = abs_of(rate);
        }
      }
      if (!have) return SimplexStatus::Unbounded;

      if (theta == 0) {
        if (++degenerate > 50 && !bland) bland = true;
      } else {
        degenerate = 0;
      }

      // Move the basic values.
      if (theta != 0) {
        for (int i = 0; i < m_; ++i) {
          if (dead_[i]) continue;
          const T& c = at(i, enter);
          if (c == 0) continue;
          if (dir > 0) {
            xb_[i] -= c * theta;
          } else {
            xb_[i] += c * theta;
          }
          if constexpr (!kExact<T>) {
            if (std::abs(xb_[i]) < 1e-13) xb_[i] = 0;
          }
        }
      }

      if (leave < 0) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }

      const T enter_value = (at_upper_[enter] ? ub_[enter] : T(0)) + (dir > 0 ? theta : T(-theta));
      const int out = basis_[leave];
      if (out < cols_) {
        row_of_[out] = -1;
        at_upper_[out] = leave_upper;
      }
      pivot(leave, enter);
      basis_[leave] = enter;
      row_of_[enter] = leave;
      at_upper_[enter] = false;
      xb_[leave] = enter_value;
    }
  }

  void pivot(int r, int j) {
    const T piv = at(r, j);
    std::vector<int> nz;
    for (int k = 0; k < cols_; ++k) {
      if (at(r, k) != 0) {
        at(r, k) /= piv;
        nz.push_back(k);
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r || dead_[i]) continue;
      const T f = at(i, j);
      if (f == 0) continue;
      for (int k : nz) {
        at(i, k) -= f * at(r, k);
        if constexpr (!kExact<T>) {
          if (std::abs(at(i, k)) < 1e-14) at(i, k) = 0;
        }
      }
      at(i, j) = 0;
    }
    const T f = d_[j];
    if (f != 0) {
      for (int k : nz) d_[k] -= f * at(r, k);
      d_[j] = 0;
    }
  }

  // Artificials still basic after phase 1 sit at zero. Pivot each out on
  // any usable column; a row with none is a combination of the others.
  void drive_out_artificials(SimplexResult<T>& out) {
    const T ptol = kExact<T> ? T(0) : T(opt_.tol);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < cols_) continue;
      int col = -1;
      T best(0);
      for (int j = 0; j < cols_; ++j) {
        if (row_of_[j] >= 0) continue;
        const T v = abs_of(at(i, j));
        if (v > ptol && v > best) {
          best = v;
          col = j;
          if constexpr (kExact<T>) break;
        }
      }
      if (col < 0) {
        dead_[i] = true;
        ++out.redundant_rows;
        continue;
      }
      // Degenerate pivot: the artificial is zero, so values do not move.
      const T value = at_upper_[col] ? ub_[col] : T(0);
      pivot(i, col);
      basis_[i] = col;
      row_of_[col] = i;
      at_upper_[col] = false;
      xb_[i] = value;
    }
  }

  SimplexResult<T>& finish(SimplexResult<T>& out, SimplexStatus st) {
    out.status = st;
    out.x.assign(n_, T(0));
    for (int j = 0; j < n_; ++j) {
      if (row_of_[j] >= 0) {
        out.x[j] = xb_[row_of_[j]];
      } else if (at_upper_[j]) {
        out.x[j] = ub_[j];
      }
    }
    out.objective = 0;
    for (int j = 0; j < n_; ++j) {
      if (cost_[j] != 0) out.objective += cost_[j] * out.x[j];
    }
    return out;
  }

  SimplexOptions opt_;
  T tol_;
  T zero_{0};
  int n_ = 0, m_ = 0, cols_ = 0;
  std::vector<T> a_;
  std::vector<T> ub_;
  std::vector<bool> finite_;
  std::vector<T> cost_;
  std::vector<T> d_;
  std::vector<bool> at_upper_;
  std::vector<int> row_of_;
  std::vector<int> basis_;
  std::vector<T> xb_;
  std::vector<bool> dead_;
};

}  // namespace

template <class T>
SimplexResult<T> simplex_solve(const SimplexProblem& p, const SimplexOptions& opt) {
  Tableau<T> tab(p, opt);
  return tab.run();
}

template SimplexResult<double> simplex_solve<double>(const SimplexProblem&, const SimplexOptions&);
template SimplexResult<cpp_rational> simplex_solve<cpp_rational>(const SimplexProblem&, const SimplexOptions&);

}  // namespace planarcut
