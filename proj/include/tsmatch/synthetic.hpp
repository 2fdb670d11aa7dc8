#pragma once

#include "tsmatch/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace tsmatch {

/// Box-Muller over explicitly constructed doubles so streams are identical
/// across standard libraries (std::normal_distribution is not portable).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  Scalar operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const Scalar u1 = next_unit();
    const Scalar u2 = next_unit();
    constexpr Scalar two_pi = 6.283185307179586;
    const Scalar r = std::sqrt(-2.0 * std::log(u1));
    const Scalar a = two_pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t raw() { return rng_(); }

  /// uniform in (0, 1]
  Scalar next_unit() { return static_cast<Scalar>((rng_() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
  Scalar spare_ = 0;
  bool have_spare_ = false;
};

/// `count` random walks of length `length`: cumulative sums of N(0,1) steps.
Dataset random_walk_dataset(int count, Eigen::Index length, std::uint64_t seed);

}  // namespace tsmatch
