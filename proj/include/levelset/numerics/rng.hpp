#pragma once

#include <array>
#include <cstdint>

namespace levelset {

/// Seedable xoshiro256** generator. The state is expanded from the 64-bit seed
/// with SplitMix64, so a seed fully determines the stream on every platform.
///
/// Instances are cheap to copy and must not be shared between threads; use
/// split() to hand each worker its own stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  double uniform(double lo, double hi);
  /// Uniform integer on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal draw (Marsaglia polar method).
  double normal();

  /// Child stream derived from (seed, index) only; it does not depend on how
  /// many draws the parent has made.
  Rng split(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace levelset
