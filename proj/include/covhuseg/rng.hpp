#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace covhuseg {

/**
 * @brief Portable seeded generator.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The standard distributions are implementation-defined, so the
 * variates are derived here:
 *  - uniform01: top 53 bits scaled by 2^-53, in [0, 1);
 *  - below(n): rejection sampling on the raw 64-bit output, unbiased;
 *  - normal: Box-Muller, u1 in (0, 1], both variates of a pair used in
 *    order (cos branch first).
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi] (inclusive).
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform01() < p; }
  /// Standard normal variate.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// FNV-1a 64-bit hash, used to derive per-file seeds from file names.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace covhuseg
