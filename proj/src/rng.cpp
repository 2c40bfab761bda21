#include "psr/rng.hpp"

namespace psr {

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  // SplitMix64 over seed ^ f(index): cheap, well-mixed, and fully
  // deterministic, unlike seeding mt19937_64 with seed + index directly
  // (nearby seeds produce correlated early output).
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return RandomStream(z);
}

int RandomStream::categorical(const Vector& probs) {
  const double u = uniform();
  double cumulative = 0.0;
  int last_positive = 0;
  for (int i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  // u fell into rounding slack past the accumulated sum.
  return last_positive;
}

}  // namespace psr
