#include <algorithm>
#include <cmath>
#include <sstream>

#include "planarcut/lp.hpp"

namespace planarcut {

const char* to_string(RowKind k) {
  switch (k) {
    case RowKind::Consis1: return "consis1";
    case RowKind::Assign: return "assign";
    case RowKind::MarginalS: return "marginal-s";
    case RowKind::MarginalT: return "marginal-t";
    case RowKind::Xfw: return "xfW";
    case RowKind::Alpha: return "alpha";
  }
  return "unknown";
}

namespace {

void normalize(Expr& e) {
  std::sort(e.begin(), e.end());
  Expr out;
  for (const auto& [v, c] : e) {
    if (!out.empty() && out.back().first == v) {
      out.back().second += c;
    } else {
      out.push_back({v, c});
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  e = std::move(out);
}

// One term of a pair sum: variable and the face set it stands for.
struct Term {
  int var;
  VertexSet set;
};

}  // namespace

int LpModel::x_index(int p, VertexSet s) const {
  const auto& ps = profile_sets_[p];
  auto it = std::lower_bound(ps.begin(), ps.end(), s, [](VertexSet a, VertexSet b) { return a.bits() < b.bits(); });
  if (it == ps.end() || *it != s) return -1;
  return first_x_[p] + static_cast<int>(it - ps.begin());
}

int LpModel::lifted_index(int p, int q, VertexSet s) const {
  auto it = lifted_.find({std::min(p, q), std::max(p, q)});
  if (it == lifted_.end()) return -1;
  const auto [first, count] = it->second;
  auto lo = vars_.begin() + first, hi = lo + count;
  auto v = std::lower_bound(lo, hi, s, [](const LpVar& a, VertexSet b) { return a.set.bits() < b.bits(); });
  if (v == hi || v->set != s) return -1;
  return static_cast<int>(v - vars_.begin());
}

LpModel LpModel::build(const NdhcTree& t, const ProfileTable& table, double alpha, const LpBuildOptions& opt) {
  LpModel m;
  m.tree_ = &t;
  m.alpha_ = alpha;
  const DualGraph& d = t.dual();
  const EmbeddedPlanarGraph& g = d.primal();
  const int n = t.size();
  if (static_cast<int>(table.by_node.size()) != n) throw Error(ErrorCode::MissingProfiles, "profile table does not match the tree");
  if (table.at(0).profiles != std::vector<VertexSet>{VertexSet{}}) {
    throw Error(ErrorCode::MissingProfiles, "root profiles must be exactly the empty set");
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (d.is_loop(e)) throw Error(ErrorCode::PreconditionViolated, "primal has a bridge (contract bridges first)");
  }

  // x({p},S).
  m.first_x_.assign(n, -1);
  m.profile_sets_.assign(n, {});
  for (int p : t.partition_nodes()) {
    m.first_x_[p] = m.num_vars();
    m.profile_sets_[p] = table.at(p).profiles;
    for (VertexSet s : m.profile_sets_[p]) m.vars_.push_back({p, -1, s});
  }
  m.num_single_ = m.num_vars();
  auto check_cap = [&] {
    if (m.vars_.size() > opt.max_vars) throw Error(ErrorCode::CapExceeded, "LP variable cap exceeded");
  };
  check_cap();

  // consis1 and assign.
  m.rows_.push_back({RowKind::Consis1, Sense::Eq, {{m.x_index(0, VertexSet{}), 1}}, 1.0, false, {0, 0, 0, 0}});
  for (int c : t.cluster_nodes()) {
    const NdhcNode& node = t.node(c);
    if (node.children.empty()) continue;
    const int p = node.parent;
    const VertexSet bp = t.boundary_plus(p);
    const auto& wp = m.profile_sets_[p];
    std::vector<Expr> rows(wp.size());
    for (std::size_t w = 0; w < wp.size(); ++w) rows[w].push_back({m.first_x_[p] + static_cast<int>(w), 1});
    for (int pi : node.children) {
      for (std::size_t k = 0; k < m.profile_sets_[pi].size(); ++k) {
        const int w = m.x_index(p, m.profile_sets_[pi][k] & bp);
        if (w < 0) throw Error(ErrorCode::MissingProfiles, "child profile does not restrict to a parent profile");
        rows[w - m.first_x_[p]].push_back({m.first_x_[pi] + static_cast<int>(k), -1});
      }
    }
    for (std::size_t w = 0; w < wp.size(); ++w) {
      normalize(rows[w]);
      m.rows_.push_back({RowKind::Assign, Sense::Eq, std::move(rows[w]), 0.0, false, {c, static_cast<int>(w), 0, 0}});
    }
  }

  // Pairs: primal edges and demand pairs.
  std::map<std::pair<VertexId, VertexId>, LpPair> pairs;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.u == ed.v) continue;
    LpPair& lp = pairs[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}];
    lp.s = std::min(ed.u, ed.v);
    lp.t = std::max(ed.u, ed.v);
    lp.cost += ed.cost;
    lp.edge = true;
  }
  for (const Demand& q : g.demands()) {
    LpPair& lp = pairs[{q.u, q.v}];
    lp.s = q.u;
    lp.t = q.v;
    lp.demand += q.amount;
  }

  std::vector<std::vector<int>> with(g.num_vertices());
  for (int p : t.partition_nodes()) t.boundary(p).for_each([&](VertexId s) { with[s].push_back(p); });

  auto single_terms = [&](int p, std::vector<Term>& out) {
    for (std::size_t k = 0; k < m.profile_sets_[p].size(); ++k) {
      out.push_back({m.first_x_[p] + static_cast<int>(k), m.profile_sets_[p][k]});
    }
  };
  auto lifted_terms = [&](int a, int b, std::vector<Term>& out) {
    const auto key = std::pair{std::min(a, b), std::max(a, b)};
    auto it = m.lifted_.find(key);
    if (it == m.lifted_.end()) {
      // Consistent unions: the two profiles agree on ∂+(lca).
      const VertexSet shared = t.boundary_plus(t.lca(a, b));
      std::vector<VertexSet> sets;
      for (VertexSet x : m.profile_sets_[key.first]) {
        for (VertexSet y : m.profile_sets_[key.second]) {
          if ((x & shared) == (y & shared)) sets.push_back(x | y);
        }
      }
      std::sort(sets.begin(), sets.end(), [](VertexSet u, VertexSet v) { return u.bits() < v.bits(); });
      sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
      const int first = m.num_vars();
      for (VertexSet s : sets) m.vars_.push_back({key.first, key.second, s});
      check_cap();
      it = m.lifted_.emplace(key, std::pair{first, static_cast<int>(sets.size())}).first;
    }
    for (int v = it->second.first; v < it->second.first + it->second.second; ++v) out.push_back({v, m.vars_[v].set});
  };

  for (auto& [key, lp] : pairs) {
    const VertexId s = lp.s, tt = lp.t;
    const VertexSet st = VertexSet::single(s) | VertexSet::single(tt);
    for (int q : t.partition_nodes()) {
      const VertexSet bq = t.boundary(q);
      std::vector<int> ss, ts;
      for (int p : with[s]) {
        if (t.is_ancestor(q, p)) ss.push_back(p);
      }
      for (int p : with[tt]) {
        if (t.is_ancestor(q, p)) ts.push_back(p);
      }
      if (ss.empty() || ts.empty()) continue;
      std::vector<std::vector<Term>> pair_terms;
      bool lifted = false;
      if (bq.contains(s) || bq.contains(tt)) {
        // One side is q itself: every pair is comparable.
        if (bq.contains(s) && bq.contains(tt)) {
          pair_terms.emplace_back();
          single_terms(q, pair_terms.back());
        } else {
          for (int p : bq.contains(s) ? ts : ss) {
            pair_terms.emplace_back();
            single_terms(p, pair_terms.back());
          }
        }
      } else {
        // Both sides lie strictly below q; they meet at q only when they
        // sit in different parts of pi(q).
        const int c = t.node(q).parent;
        const VertexSet k = c >= 0 ? t.node(c).cluster : d.all_vertices();
        const auto& parts = t.node(q).parts;
        auto part_of = [&](VertexId f) {
          const VertexSet a = d.around(f);
          if (!a.subset_of(k)) return -1;
          for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
            if (a.subset_of(parts[i])) return i;
          }
          return -1;
        };
        const int ps = part_of(s), pt = part_of(tt);
        if (ps < 0 || pt < 0 || ps == pt) continue;
        if (lp.demand == 0) continue;  // edge pairs never split this way
        lifted = true;
        for (int a : ss) {
          for (int b : ts) {
            pair_terms.emplace_back();
            lifted_terms(a, b, pair_terms.back());
          }
        }
      }
      for (const auto& terms : pair_terms) {
        for (const Term& tm : terms) {
          if ((tm.set & st).size() == 1) lp.y.push_back({tm.var, 1});
        }
      }
      if (!lp.demand || (!lifted && !opt.implied_rows)) continue;

      // xfW and marginals for (q, {s,t}).
      const VertexSet bpq = t.boundary_plus(q);
      const auto& wq = m.profile_sets_[q];
      auto w_of = [&](VertexSet set) {
        const int w = m.x_index(q, set & bpq);
        if (w < 0) throw Error(ErrorCode::MissingProfiles, "pair profile does not restrict to a profile of the lca");
        return w - m.first_x_[q];
      };
      std::vector<Expr> xfw(wq.size()), ms(2 * wq.size()), mt(2 * wq.size());
      for (std::size_t w = 0; w < wq.size(); ++w) xfw[w].push_back({m.first_x_[q] + static_cast<int>(w), 1});
      for (const auto& terms : pair_terms) {
        for (const Term& tm : terms) {
          const int w = w_of(tm.set);
          xfw[w].push_back({tm.var, -1});
          ms[2 * w + (tm.set.contains(s) ? 1 : 0)].push_back({tm.var, -1});
          mt[2 * w + (tm.set.contains(tt) ? 1 : 0)].push_back({tm.var, -1});
        }
      }
      for (int p : ss) {
        for (std::size_t k2 = 0; k2 < m.profile_sets_[p].size(); ++k2) {
          const VertexSet set = m.profile_sets_[p][k2];
          ms[2 * w_of(set) + (set.contains(s) ? 1 : 0)].push_back({m.first_x_[p] + static_cast<int>(k2), 1});
        }
      }
      for (int p : ts) {
        for (std::size_t k2 = 0; k2 < m.profile_sets_[p].size(); ++k2) {
          const VertexSet set = m.profile_sets_[p][k2];
          mt[2 * w_of(set) + (set.contains(tt) ? 1 : 0)].push_back({m.first_x_[p] + static_cast<int>(k2), 1});
        }
      }
      const bool implied = !lifted;
      for (std::size_t w = 0; w < wq.size(); ++w) {
        normalize(xfw[w]);
        m.rows_.push_back({RowKind::Xfw, Sense::Eq, std::move(xfw[w]), 0.0, implied, {q, s, tt, static_cast<int>(w)}});
        for (int dsel = 0; dsel < 2; ++dsel) {
          Expr& a = ms[2 * w + dsel];
          normalize(a);
          m.rows_.push_back({RowKind::MarginalS, Sense::Eq, std::move(a), 0.0, implied,
                             {q, s, tt, static_cast<int>(2 * w) + dsel}});
          Expr& b = mt[2 * w + dsel];
          normalize(b);
          m.rows_.push_back({RowKind::MarginalT, Sense::Eq, std::move(b), 0.0, implied,
                             {q, s, tt, static_cast<int>(2 * w) + dsel}});
        }
      }
    }
    normalize(lp.y);
    m.pairs_.push_back(std::move(lp));
  }
  // Rows made only of a zero combination carry no information.
  std::erase_if(m.rows_, [](const LpRow& r) { return r.terms.empty() && r.rhs == 0; });

  Expr demand_row;
  for (const LpPair& lp : m.pairs_) {
    for (const auto& [v, c] : lp.y) {
      if (lp.cost) m.objective_.push_back({v, c * lp.cost});
      if (lp.demand) demand_row.push_back({v, c * lp.demand});
    }
  }
  normalize(m.objective_);
  normalize(demand_row);
  m.alpha_row_ = static_cast<int>(m.rows_.size());
  m.rows_.push_back({RowKind::Alpha, Sense::Ge, std::move(demand_row), alpha, false, {0, 0, 0, 0}});
  return m;
}

void LpModel::set_alpha(double alpha) {
  alpha_ = alpha;
  rows_[alpha_row_].rhs = alpha;
}

std::string LpModel::row_label(int r) const {
  const LpRow& row = rows_[r];
  std::ostringstream os;
  os << to_string(row.kind);
  switch (row.kind) {
    case RowKind::Consis1:
    case RowKind::Alpha: break;
    case RowKind::Assign: os << "(c=" << row.key[0] << ",W#" << row.key[1] << ")"; break;
    case RowKind::Xfw: os << "(q=" << row.key[0] << ",{" << row.key[1] << "," << row.key[2] << "},W#" << row.key[3] << ")"; break;
    case RowKind::MarginalS:
    case RowKind::MarginalT:
      os << "(q=" << row.key[0] << ",{" << row.key[1] << "," << row.key[2] << "},W#" << row.key[3] / 2
         << ",D=" << row.key[3] % 2 << ")";
      break;
  }
  if (row.implied) os << "[implied]";
  return os.str();
}

std::string LpModel::summary() const {
  std::size_t implied = 0, nnz = 0;
  for (const LpRow& r : rows_) {
    implied += r.implied;
    nnz += r.terms.size();
  }
  std::ostringstream os;
  os << "vars=" << vars_.size() << " single=" << num_single_ << " lifted=" << vars_.size() - num_single_
     << " rows=" << rows_.size() << " implied=" << implied << " nnz=" << nnz << " pairs=" << pairs_.size();
  return os.str();
}

std::string LpModel::to_lp_format() const {
  std::ostringstream os;
  auto put = [&](const Expr& e) {
    if (e.empty()) {
      os << " 0 x0";
      return;
    }
    for (const auto& [v, c] : e) os << (c < 0 ? " - " : " + ") << (c < 0 ? -c : c) << " x" << v;
  };
  os << "Minimize\n obj:";
  put(objective_);
  os << "\nSubject To\n";
  for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
    const LpRow& row = rows_[r];
    if (row.implied) continue;
    os << " r" << r << ":";
    put(row.terms);
    os << (row.sense == Sense::Eq ? " = " : " >= ");
    os.precision(17);
    os << row.rhs << "\n";
  }
  os << "Bounds\n";
  for (int v = 0; v < num_vars(); ++v) os << " 0 <= x" << v << " <= 1\n";
  os << "End\n";
  return os.str();
}

double evaluate(const Expr& e, const std::vector<double>& x) {
  double s = 0;
  for (const auto& [v, c] : e) s += static_cast<double>(c) * x[v];
  return s;
}

Rational evaluate(const Expr& e, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [v, c] : e) s += Rational(c) * x[v];
  return s;
}

Residuals residuals(const LpModel& m, const std::vector<double>& x, double tol) {
  Residuals out;
  auto note = [&](double r, int row) {
    if (r > tol) ++out.violated;
    if (r > out.max_abs) {
      out.max_abs = r;
      out.worst_row = row;
    }
  };
  for (double v : x) note(std::max({0.0, -v, v - 1}), -1);
  for (int r = 0; r < static_cast<int>(m.rows().size()); ++r) {
    const LpRow& row = m.rows()[r];
    const double lhs = evaluate(row.terms, x);
    note(row.sense == Sense::Eq ? std::abs(lhs - row.rhs) : std::max(0.0, row.rhs - lhs), r);
  }
  return out;
}

Residuals residuals(const LpModel& m, const std::vector<Rational>& x) {
  Residuals out;
  Rational worst = 0;
  auto note = [&](const Rational& r, int row) {
    if (r > 0) ++out.violated;
    if (r > worst) {
      worst = r;
      out.worst_row = row;
    }
  };
  for (const Rational& v : x) {
    if (v < 0) note(-v, -1);
    if (v > 1) note(v - 1, -1);
  }
  for (int r = 0; r < static_cast<int>(m.rows().size()); ++r) {
    const LpRow& row = m.rows()[r];
    const Rational lhs = evaluate(row.terms, x);
    const Rational rhs(row.rhs);
    if (row.sense == Sense::Eq) {
      note(lhs > rhs ? Rational(lhs - rhs) : Rational(rhs - lhs), r);
    } else if (lhs < rhs) {
      note(rhs - lhs, r);
    }
  }
  out.max_abs = static_cast<double>(worst);
  return out;
}

std::vector<double> encode_integral(const LpModel& m, const DualCycle& c, const Forcing& phi) {
  const NdhcTree& t = m.tree();
  std::vector<double> x(m.num_vars(), 0.0);
  std::vector<char> kept(t.size(), 0);
  const VertexSet inside = c.enclosed();
  for (int p : t.retained(phi)) {
    kept[p] = 1;
    const int v = m.x_index(p, inside & t.boundary_plus(p));
    if (v < 0) throw Error(ErrorCode::NotAmenable, "retained node " + std::to_string(p) + " lacks the cycle's profile");
    x[v] = 1;
  }
  for (int v = m.num_single(); v < m.num_vars(); ++v) {
    const LpVar& lv = m.vars()[v];
    if (!kept[lv.p] || !kept[lv.q]) continue;
    if (lv.set == (inside & (t.boundary_plus(lv.p) | t.boundary_plus(lv.q)))) x[v] = 1;
  }
  return x;
}

std::vector<double> alpha_grid(std::int64_t total_demand, int n, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidParams, "epsilon must be positive");
  const double cap = std::min(std::pow(static_cast<double>(n), 5.0), static_cast<double>(total_demand));
  std::vector<double> out;
  for (double a = 1; a <= cap * (1 + 1e-12); a *= 1 + eps) out.push_back(a);
  return out;
}

std::vector<double> pair_values(const LpModel& m, const std::vector<double>& x) {
  std::vector<double> out;
  out.reserve(m.pairs().size());
  for (const LpPair& p : m.pairs()) out.push_back(evaluate(p.y, x));
  return out;
}

}  // namespace planarcut
