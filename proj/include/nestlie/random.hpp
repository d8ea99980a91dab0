#pragma once

#include <cstdint>
#include <random>

#include "nestlie/exactla/gaussian_rational.hpp"

namespace nestlie {

/// Seeded generator: std::mt19937_64 (its output sequence is fixed by the
/// standard) with a rejection sampler of our own, so draws do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = engine_();
    while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  GaussianRational small_integer(std::int64_t bound = 5) {
    return GaussianRational(static_cast<long>(uniform(-bound, bound)));
  }

  GaussianRational small_gaussian(std::int64_t bound = 5) {
    const long re = static_cast<long>(uniform(-bound, bound));
    const long im = static_cast<long>(uniform(-bound, bound));
    return GaussianRational(Rational(re), Rational(im));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nestlie
