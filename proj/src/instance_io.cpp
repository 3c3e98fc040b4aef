#include "planarcut/instance_io.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace planarcut {

namespace {

using nlohmann::json;

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::array<std::int64_t, 3> triple(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::ParseError, std::string(what) + " entries must be [a, b, value]");
  }
  return {as_int(j[0], what), as_int(j[1], what), as_int(j[2], what)};
}

}  // namespace

GraphSpec parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "instance must be a JSON object");
  static const std::set<std::string> keys{"n", "edges", "rotation", "demands"};
  for (const auto& [k, v] : doc.items()) {
    if (!keys.count(k)) throw Error(ErrorCode::ParseError, "unknown field '" + k + "'");
  }
  for (const auto& k : keys) {
    if (!doc.contains(k)) throw Error(ErrorCode::ParseError, "missing field '" + k + "'");
  }
  GraphSpec spec;
  const std::int64_t n = as_int(doc["n"], "n");
  if (n <= 0 || n > kMaxSetVertices) throw Error(ErrorCode::ParseError, "n must be in 1..64");
  spec.n = static_cast<int>(n);
  if (!doc["edges"].is_array()) throw Error(ErrorCode::ParseError, "edges must be an array");
  for (const json& e : doc["edges"]) {
    const auto t = triple(e, "edges");
    spec.edges.push_back({static_cast<VertexId>(t[0]), static_cast<VertexId>(t[1]), t[2]});
  }
  if (!doc["demands"].is_array()) throw Error(ErrorCode::ParseError, "demands must be an array");
  for (const json& e : doc["demands"]) {
    const auto t = triple(e, "demands");
    spec.demands.push_back({static_cast<VertexId>(t[0]), static_cast<VertexId>(t[1]), t[2]});
  }
  const json& rot = doc["rotation"];
  if (!rot.is_object()) throw Error(ErrorCode::ParseError, "rotation must be an object");
  spec.rotation.assign(spec.n, {});
  std::vector<char> seen(spec.n, 0);
  for (const auto& [k, v] : rot.items()) {
    std::size_t used = 0;
    long vid = -1;
    try {
      vid = std::stol(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || vid < 0 || vid >= spec.n) {
      throw Error(ErrorCode::ParseError, "rotation key '" + k + "' is not a vertex id");
    }
    if (!v.is_array()) throw Error(ErrorCode::ParseError, "rotation entries must be arrays");
    seen[vid] = 1;
    for (const json& e : v) spec.rotation[vid].push_back(static_cast<EdgeId>(as_int(e, "rotation")));
  }
  for (int v = 0; v < spec.n; ++v) {
    if (!seen[v]) throw Error(ErrorCode::ParseError, "rotation misses vertex " + std::to_string(v));
  }
  return spec;
}

GraphSpec read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string write_instance(const GraphSpec& spec) {
  std::ostringstream os;
  os << "{\n  \"n\": " << spec.n << ",\n  \"edges\": [";
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    const Edge& e = spec.edges[i];
    os << (i ? ", " : "") << '[' << e.u << ", " << e.v << ", " << e.cost << ']';
  }
  os << "],\n  \"rotation\": {";
  for (int v = 0; v < spec.n; ++v) {
    os << (v ? ", " : "") << '"' << v << "\": [";
    for (std::size_t i = 0; i < spec.rotation[v].size(); ++i) os << (i ? ", " : "") << spec.rotation[v][i];
    os << ']';
  }
  os << "},\n  \"demands\": [";
  for (std::size_t i = 0; i < spec.demands.size(); ++i) {
    const Demand& d = spec.demands[i];
    os << (i ? ", " : "") << '[' << d.u << ", " << d.v << ", " << d.amount << ']';
  }
  os << "]\n}\n";
  return os.str();
}

void write_instance_file(const std::string& path, const GraphSpec& spec) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << write_instance(spec);
}

}  // namespace planarcut
