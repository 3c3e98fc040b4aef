#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace planarcut {

/// Counter-based generator: the i-th output is a pure function of (key, i),
/// so any stream can be replayed from its key and every parallel worker can
/// own an independent stream without shared state.
class StreamRng {
 public:
  constexpr explicit StreamRng(std::uint64_t key = 0) : key_(key) {}

  static constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  /// Key for the sub-stream named `label` with the given indices.
  static constexpr std::uint64_t derive(std::uint64_t seed, std::string_view label,
                                        std::initializer_list<std::uint64_t> idx = {}) {
    std::uint64_t k = mix(seed ^ hash_label(label));
    for (std::uint64_t i : idx) k = mix(k ^ mix(i + 0x632BE59BD9B4E019ULL));
    return k;
  }

  static StreamRng named(std::uint64_t seed, std::string_view label,
                         std::initializer_list<std::uint64_t> idx = {}) {
    return StreamRng(derive(seed, label, idx));
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

  std::uint64_t next() { return mix(key_ ^ mix(counter_++)); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection; unbiased.
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Exponential with the given rate.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace planarcut
