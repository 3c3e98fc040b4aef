#pragma once

#include <iosfwd>
#include <string>

#include "planarcut/graph.hpp"

namespace planarcut {

/// Instance documents are JSON objects with exactly the keys
///   "n"         number of vertices (0-based ids 0..n-1)
///   "edges"     [[u, v, cost], ...]; edge ids are positions in this list
///   "rotation"  {"v": [edge id, ...], ...}, one entry per vertex, cyclic order
///   "demands"   [[u, v, amount], ...]
/// Any other key, a missing key, or a malformed entry is a ParseError.
GraphSpec parse_instance(const std::string& text);
GraphSpec read_instance_file(const std::string& path);

/// Stable serialization; parse_instance(write_instance(s)) == s.
std::string write_instance(const GraphSpec& spec);
void write_instance_file(const std::string& path, const GraphSpec& spec);

}  // namespace planarcut
