#pragma once

#include <cstdint>
#include <random>

namespace saca {

/// Portable generator: std::mt19937_64 (its output sequence is fixed by the
/// standard) with hand-rolled uniform and normal transforms, so a seed gives
/// the same stream with every standard library.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Uniform integer in [0, n). Uses rejection to stay unbiased.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace saca
