#pragma once

#include "psr/corpus.hpp"
#include "psr/types.hpp"

namespace psr {

/// How triples are extracted from a sequence.
///  - heads:   only (x1, x2, x3) of each sequence. Unbiased for the
///             moment definitions regardless of the chain's mixing.
///  - sliding: every window (x_t, x_{t+1}, x_{t+2}). Lower variance, but
///             unbiased only when the prior is stationary for T.
enum class CountingMode { heads, sliding };

const char* to_string(CountingMode mode);

/// Where a MomentStats came from.
struct MomentProvenance {
  enum class Kind { exact, empirical };
  Kind kind = Kind::exact;
  // Empirical only:
  CountingMode mode = CountingMode::heads;
  std::int64_t firsts = 0;
  std::int64_t pairs = 0;
  std::int64_t triples = 0;
};

/// The observable statistics the learner consumes.
///   P1[i]       = Pr[x1 = i]
///   P21(i, j)   = Pr[x2 = i, x1 = j]
///   P3[x](i, j) = Pr[x3 = i, x2 = x, x1 = j]
struct MomentStats {
  int n = 0;
  Vector P1;
  Matrix P21;
  std::vector<Matrix> P3;
  MomentProvenance provenance;
};

/// Integer sufficient statistics for the empirical moments. Counts are
/// accumulated exactly and normalized once, so any order of accumulation
/// produces identical results.
///
/// Each statistic carries its own total: in heads mode a sequence of
/// length 1 or 2 still contributes its available prefix to c1 and c21,
/// so the three effective sample sizes can differ.
struct TripleCounts {
  using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
  using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

  int n = 0;
  CountingMode mode = CountingMode::heads;
  CountVector c1;
  CountMatrix c21;                 // (i = second symbol, j = first symbol)
  std::vector<CountMatrix> c3;     // c3[x](i = third, j = first)
  std::int64_t total_firsts = 0;
  std::int64_t total_pairs = 0;
  std::int64_t total_triples = 0;
};

/// Tallies first-symbol, pair, and triple counts from a corpus.
/// Throws EmptyCorpus, or NoTriples when no sequence yields a triple.
TripleCounts count_triples(const SequenceCorpus& corpus, CountingMode mode);

/// Maximum-likelihood plug-in: each count block divided by its own total.
MomentStats normalize_counts(const TripleCounts& counts);

/// count_triples followed by normalize_counts.
MomentStats estimate_moments(const SequenceCorpus& corpus, CountingMode mode);

/// Entrywise sum of two count sets over the same alphabet.
TripleCounts merge_counts(const TripleCounts& a, const TripleCounts& b);

}  // namespace psr
