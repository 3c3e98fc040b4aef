#include "planarcut/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace planarcut {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EulerViolation: return "EulerViolation";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::EmptyOrFullSet: return "EmptyOrFullSet";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidGuess: return "InvalidGuess";
    case ErrorCode::NonpositiveBound: return "NonpositiveBound";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::EmptyKappa: return "EmptyKappa";
    case ErrorCode::CycleBudgetExceeded: return "CycleBudgetExceeded";
    case ErrorCode::MissingProfiles: return "MissingProfiles";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NotAmenable: return "NotAmenable";
    case ErrorCode::DegenerateMass: return "DegenerateMass";
    case ErrorCode::NotOnSimplex: return "NotOnSimplex";
    case ErrorCode::AllInfinite: return "AllInfinite";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoDemand: return "NoDemand";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::SuiteFailed: return "SuiteFailed";
  }
  return "Unknown";
}

std::string VertexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each([&](VertexId v) {
    if (!first) os << ',';
    os << v;
    first = false;
  });
  os << '}';
  return os.str();
}

namespace {

std::vector<Demand> aggregate_demands(int n, const std::vector<Demand>& raw) {
  std::map<std::pair<VertexId, VertexId>, std::int64_t> acc;
  for (const Demand& d : raw) {
    if (d.u < 0 || d.v < 0 || d.u >= n || d.v >= n) {
      throw Error(ErrorCode::ParseError, "demand endpoint out of range");
    }
    if (d.amount < 0) throw Error(ErrorCode::ParseError, "negative demand");
    if (d.u == d.v || d.amount == 0) continue;
    acc[{std::min(d.u, d.v), std::max(d.u, d.v)}] += d.amount;
  }
  std::vector<Demand> out;
  out.reserve(acc.size());
  for (const auto& [k, a] : acc) {
    if (a > 0) out.push_back({k.first, k.second, a});
  }
  return out;
}

}  // namespace

EmbeddedPlanarGraph EmbeddedPlanarGraph::build(const GraphSpec& spec) {
  const int n = spec.n;
  if (n <= 0) throw Error(ErrorCode::ParseError, "graph needs at least one vertex");
  if (static_cast<int>(spec.rotation.size()) != n) {
    throw Error(ErrorCode::ParseError, "rotation must list every vertex");
  }
  const int m = static_cast<int>(spec.edges.size());
  for (const Edge& e : spec.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error(ErrorCode::ParseError, "edge endpoint out of range");
    }
    if (e.cost < 0) throw Error(ErrorCode::ParseError, "negative edge cost");
  }
  std::vector<int> seen(static_cast<std::size_t>(2 * m), 0);
  std::vector<std::vector<int>> darts(n);
  for (VertexId v = 0; v < n; ++v) {
    for (EdgeId e : spec.rotation[v]) {
      if (e < 0 || e >= m) throw Error(ErrorCode::ParseError, "rotation references unknown edge");
      const Edge& ed = spec.edges[e];
      int dart = -1;
      if (ed.u == ed.v) {
        if (ed.u != v) throw Error(ErrorCode::ParseError, "rotation lists a non-incident edge");
        dart = seen[2 * e] ? 2 * e + 1 : 2 * e;
      } else if (ed.u == v) {
        dart = 2 * e;
      } else if (ed.v == v) {
        dart = 2 * e + 1;
      } else {
        throw Error(ErrorCode::ParseError, "rotation lists a non-incident edge");
      }
      if (seen[dart]) throw Error(ErrorCode::ParseError, "edge end listed twice in rotation");
      seen[dart] = 1;
      darts[v].push_back(dart);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorCode::ParseError, "rotation misses an edge end");
  }
  return build_from_darts(n, spec.edges, std::move(darts), spec.demands);
}

EmbeddedPlanarGraph EmbeddedPlanarGraph::build_from_darts(int n, std::vector<Edge> edges,
                                                          std::vector<std::vector<int>> dart_rotation,
                                                          std::vector<Demand> demands) {
  EmbeddedPlanarGraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.rotation_ = std::move(dart_rotation);
  const int m = g.num_edges();
  g.dart_pos_.assign(static_cast<std::size_t>(2 * m), -1);
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < g.rotation_[v].size(); ++i) {
      const int d = g.rotation_[v][i];
      if (d < 0 || d >= 2 * m || g.tail(d) != v || g.dart_pos_[d] != -1) {
        throw Error(ErrorCode::ParseError, "inconsistent dart rotation");
      }
      g.dart_pos_[d] = static_cast<int>(i);
    }
  }
  for (int d = 0; d < 2 * m; ++d) {
    if (g.dart_pos_[d] < 0) throw Error(ErrorCode::ParseError, "dart missing from rotation");
  }
  g.demands_ = aggregate_demands(n, demands);

  // Connectivity.
  std::vector<int> comp(n, -1);
  std::vector<VertexId> stack{0};
  comp[0] = 0;
  int reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (int d : g.rotation_[v]) {
      const VertexId w = g.head(d);
      if (comp[w] < 0) {
        comp[w] = 0;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw Error(ErrorCode::Disconnected, "graph is not connected");

  // Face tracing.
  g.dart_face_.assign(static_cast<std::size_t>(2 * m), -1);
  int faces = 0;
  for (int d0 = 0; d0 < 2 * m; ++d0) {
    if (g.dart_face_[d0] >= 0) continue;
    int d = d0;
    do {
      g.dart_face_[d] = faces;
      d = g.face_next(d);
    } while (d != d0);
    ++faces;
  }
  if (m == 0) faces = 1;
  g.num_faces_ = faces;
  if (n - m + faces != 2) {
    std::ostringstream os;
    os << "V - E + F = " << n << " - " << m << " + " << faces << " != 2";
    throw Error(ErrorCode::EulerViolation, os.str());
  }
  if (n > kMaxSetVertices || faces > kMaxSetVertices) {
    throw Error(ErrorCode::TooLarge, "vertex and face counts are limited to 64");
  }
  return g;
}

int EmbeddedPlanarGraph::face_next(int dart) const {
  const int t = twin(dart);
  const auto& rot = rotation_[tail(t)];
  return rot[(static_cast<std::size_t>(dart_pos_[t]) + 1) % rot.size()];
}

std::vector<FaceId> EmbeddedPlanarGraph::faces_around(VertexId v) const {
  if (rotation_[v].empty()) return {0};
  std::vector<FaceId> out;
  out.reserve(rotation_[v].size());
  for (int d : rotation_[v]) out.push_back(dart_face_[d]);
  return out;
}

std::vector<int> EmbeddedPlanarGraph::face_boundary(FaceId f) const {
  for (int d0 = 0; d0 < static_cast<int>(dart_face_.size()); ++d0) {
    if (dart_face_[d0] != f) continue;
    std::vector<int> walk;
    int d = d0;
    do {
      walk.push_back(d);
      d = face_next(d);
    } while (d != d0);
    return walk;
  }
  return {};
}

std::int64_t EmbeddedPlanarGraph::demand(VertexId a, VertexId b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(demands_.begin(), demands_.end(), std::pair{a, b},
                             [](const Demand& d, const std::pair<VertexId, VertexId>& k) {
                               return std::pair{d.u, d.v} < k;
                             });
  return (it != demands_.end() && it->u == a && it->v == b) ? it->amount : 0;
}

std::int64_t EmbeddedPlanarGraph::total_demand() const {
  std::int64_t s = 0;
  for (const Demand& d : demands_) s += d.amount;
  return s;
}

std::vector<std::vector<std::pair<VertexId, EdgeId>>> EmbeddedPlanarGraph::adjacency() const {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n_);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u == ed.v) continue;
    adj[ed.u].push_back({ed.v, e});
    adj[ed.v].push_back({ed.u, e});
  }
  return adj;
}

GraphSpec EmbeddedPlanarGraph::to_spec() const {
  GraphSpec s;
  s.n = n_;
  s.edges = edges_;
  s.demands = demands_;
  s.rotation.resize(n_);
  // A self-loop whose darts appear as 2e+1 before 2e comes back reversed,
  // which is the same embedding.
  for (VertexId v = 0; v < n_; ++v) {
    for (int d : rotation_[v]) s.rotation[v].push_back(edge_of(d));
  }
  return s;
}

std::vector<VertexSet> components(const EmbeddedPlanarGraph& g, VertexSet subset) {
  std::vector<VertexSet> out;
  VertexSet left = subset;
  while (!left.empty()) {
    VertexSet comp;
    std::vector<VertexId> stack{left.min()};
    comp.insert(stack.back());
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (int d : g.rotation(v)) {
        const VertexId w = g.head(d);
        if (subset.contains(w) && !comp.contains(w)) {
          comp.insert(w);
          stack.push_back(w);
        }
      }
    }
    out.push_back(comp);
    left = left - comp;
  }
  return out;
}

bool is_simple_cut(const EmbeddedPlanarGraph& g, VertexSet side) {
  const VertexSet all = VertexSet::range(g.num_vertices());
  if (side.empty() || side == all || !side.subset_of(all)) return false;
  return components(g, side).size() == 1 && components(g, all - side).size() == 1;
}

}  // namespace planarcut
