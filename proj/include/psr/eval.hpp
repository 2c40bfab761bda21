#pragma once

#include <cstdint>
#include <string>

#include "psr/hmm.hpp"
#include "psr/learn.hpp"
#include "psr/types.hpp"

namespace psr {

// Enumeration guard: refuse tables with more than this many sequences.
inline constexpr std::int64_t kMaxEnumeration = 1'000'000;

/// Exhaustive probability table over all n^t sequences of length t, stored
/// in lexicographic order of the (0-based) symbols.
struct DistributionTable {
  int n = 0;
  int t = 0;
  std::vector<double> probs;

  std::size_t index_of(const Sequence& seq) const;
  Sequence sequence_at(std::size_t index) const;
  double sum() const;
};

/// Table of exact HMM probabilities Pr[x_{1:t}] via unnormalized forward
/// messages. Throws EnumerationTooLarge when n^t > kMaxEnumeration.
DistributionTable brute_force_distribution(const HmmParams& params, int t);

/// Table of raw PSR values binf . B[x_t] ... B[x_1] b1. No clamping: the
/// table sees the model as-is, negative values included.
DistributionTable brute_force_distribution(const PsrModel& model, int t);

/// Sum of entrywise absolute differences. Throws KeyMismatch when the
/// tables cover different key sets (different n or t).
double l1_error(const DistributionTable& p, const DistributionTable& q);

struct SweepRecord {
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
  double l1 = 0.0;          // NaN when the cell failed to produce a model
  bool degenerate = false;  // learning threw, or numerical rank < m
};

struct SweepSummary {
  std::int64_t sample_count = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
};

/// Per-(N, seed) L1 errors plus per-N quartiles. Bit-identical for
/// identical inputs; no timing metadata is recorded.
struct SweepReport {
  std::string hmm_descriptor;
  std::vector<std::int64_t> sample_counts;
  std::vector<SweepRecord> records;    // ordered by (N, seed) as configured
  std::vector<SweepSummary> summary;   // ordered by N as configured
};

struct SweepConfig {
  std::vector<std::int64_t> sample_counts;
  std::vector<std::uint64_t> seeds;
  int eval_len = 3;
  CountingMode mode = CountingMode::heads;
};

/// For each (N, seed): sample N sequences of length max(3, eval_len),
/// estimate moments, learn a PSR with the true m, and record the L1 error
/// of its length-eval_len table against the HMM's. Cells where learning
/// throws are recorded as degenerate, not raised. Quartiles aggregate the
/// cells that produced a model.
SweepReport convergence_sweep(const HmmParams& params,
                              const SweepConfig& config);

/// Interpolated quantile (same convention as numpy's default) of a sorted
/// ascending vector.
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace psr
