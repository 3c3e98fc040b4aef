#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace planarcut {

using VertexId = int;
using EdgeId = int;
using FaceId = int;
using NodeId = int;

inline constexpr int kMaxSetVertices = 64;

enum class ErrorCode {
  ParseError,
  EulerViolation,
  Disconnected,
  NotSimple,
  EmptyOrFullSet,
  PreconditionViolated,
  InvalidGuess,
  NonpositiveBound,
  CapExceeded,
  EmptyKappa,
  CycleBudgetExceeded,
  MissingProfiles,
  Infeasible,
  NumericalFailure,
  NotAmenable,
  DegenerateMass,
  NotOnSimplex,
  AllInfinite,
  TooLarge,
  NoDemand,
  InvalidParams,
  SuiteFailed,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A subset of at most 64 vertices, stored as a bitmask.
///
/// Used for primal vertex sets (which are the faces of the dual), dual vertex
/// sets of clusters, and LP profiles. The mask is its own canonical form, so
/// equality and hashing are exact.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static VertexSet single(VertexId v) { return VertexSet(std::uint64_t{1} << v); }
  static VertexSet range(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static VertexSet of(const std::vector<VertexId>& vs) {
    VertexSet s;
    for (VertexId v : vs) s.insert(v);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  bool contains(VertexId v) const { return (bits_ >> v) & 1U; }
  void insert(VertexId v) { bits_ |= std::uint64_t{1} << v; }
  void erase(VertexId v) { bits_ &= ~(std::uint64_t{1} << v); }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  VertexId min() const { return std::countr_zero(bits_); }
  bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
  VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
  VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
  VertexSet& operator|=(VertexSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  VertexSet& operator&=(VertexSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  auto operator<=>(const VertexSet&) const = default;

  std::vector<VertexId> to_vector() const {
    std::vector<VertexId> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }
  std::string to_string() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<VertexId>(std::countr_zero(b)));
  }

 private:
  std::uint64_t bits_ = 0;
};

struct VertexSetHash {
  std::size_t operator()(VertexSet s) const noexcept {
    std::uint64_t x = s.bits() + 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

}  // namespace planarcut
