#pragma once

#include "lipvec/rat.hpp"

#include <cstdint>
#include <random>

namespace lipvec {

/// Seeded source of random rationals. Draws are reduced with plain modulo
/// arithmetic on the raw engine output, so sequences are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return (engine_() & 1U) != 0; }

  /// Random rational in [lo, hi] with denominator at most max_den.
  Rat rational(const Rat& lo, const Rat& hi, std::int64_t max_den = 16) {
    const std::int64_t den = integer(1, max_den);
    const std::int64_t steps = 1 << 10;
    const Rat t(integer(0, steps), steps);
    Rat r = lo + (hi - lo) * t;
    // Snap to the chosen denominator where that stays in range.
    Rat snapped(Int(ceil(Rat(r * den))), Int(den));
    return snapped <= hi ? snapped : r;
  }

  /// Nonnegative weights summing exactly to `total`.
  Vec simplex_weights(std::size_t n, const Rat& total) {
    Vec w(n);
    std::int64_t sum = 0;
    std::vector<std::int64_t> raw(n);
    for (auto& v : raw) {
      v = integer(0, 12);
      sum += v;
    }
    if (sum == 0) {
      raw[index(n)] = 1;
      sum = 1;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] = total * Rat(raw[i], sum);
    return w;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lipvec
