#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace planarcut {

/// Exact cost/demand quotient. A zero denominator is the infinite sentinel
/// (a cut that separates no demand).
class Ratio {
 public:
  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t num, std::int64_t den) : num_(num), den_(den) {}

  static constexpr Ratio infinite() { return Ratio(1, 0); }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_infinite() const { return den_ == 0; }
  double to_double() const;

  /// Orders by value; all infinite ratios compare equal and above every finite one.
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }

  /// Reduced "num/den" (or "inf").
  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.to_string(); }

}  // namespace planarcut
