#include "planarcut/ratio.hpp"

#include <limits>
#include <numeric>

namespace planarcut {

double Ratio::to_double() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Ratio::to_string() const {
  if (is_infinite()) return "inf";
  const std::int64_t g = std::gcd(num_, den_);
  const std::int64_t a = g ? num_ / g : num_;
  const std::int64_t b = g ? den_ / g : den_;
  return std::to_string(a) + "/" + std::to_string(b);
}

}  // namespace planarcut
