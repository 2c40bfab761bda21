#pragma once

#include <cstdint>
#include <random>

#include "psr/types.hpp"

namespace psr {

/// Deterministic random stream. Wraps std::mt19937_64 (bit-exact by the
/// standard) and converts raw 64-bit draws to doubles itself, so the same
/// seed yields the same values on every platform. std::*_distribution is
/// deliberately avoided here.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Stream for one unit of parallel work, derived from (seed, index).
  /// Partitioning work differently cannot change which values a given
  /// index sees.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Draws an index in [0, probs.size()) by inverse CDF over `probs`.
  /// Entries must be non-negative; they are assumed to sum to ~1 and the
  /// last positive entry absorbs any rounding slack.
  int categorical(const Vector& probs);

 private:
  std::mt19937_64 engine_;
};

}  // namespace psr
