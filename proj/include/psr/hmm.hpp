#pragma once

#include <cstdint>

#include "psr/corpus.hpp"
#include "psr/moments.hpp"
#include "psr/types.hpp"

namespace psr {

/// Ground-truth HMM parameters. Construct through validate_hmm; a value of
/// this type always satisfies the stochasticity, positivity, and rank
/// invariants.
///
///   transition(i, j) = Pr[h_t = i | h_{t-1} = j]   (m x m, columns sum to 1)
///   emission(i, j)   = Pr[x_t = i | h_t = j]       (n x m, columns sum to 1)
///   prior[j]         = Pr[h_1 = j]                 (strictly positive)
struct HmmParams {
  int m = 0;
  int n = 0;
  Matrix transition;
  Matrix emission;
  Vector prior;
};

struct ValidationTolerances {
  double stochastic_sum = 1e-12;  // |column sum - 1| allowed
  // Full column rank means smallest singular value > rank_rel * largest.
  double rank_rel = 1e-10;
};

/// Checks shapes, stochasticity, prior positivity, and full column rank of
/// transition and emission. Throws ShapeMismatch, NotStochastic,
/// ZeroPriorEntry, or RankDeficient.
HmmParams validate_hmm(const Matrix& transition, const Matrix& emission,
                       const Vector& prior,
                       const ValidationTolerances& tol = {});

/// Samples `count` sequences of exactly `length` symbols. Sequence i is
/// drawn from RandomStream::substream(seed, i), so the corpus is
/// bit-identical for a given seed no matter how the work is partitioned.
SequenceCorpus sample_sequences(const HmmParams& params, int count, int length,
                                std::uint64_t seed);

struct ForwardResult {
  double log_prob = 0.0;           // log Pr[x_{1:t}]; -inf when !valid
  Vector next_belief;              // Pr[h_{t+1} | x_{1:t}], sums to 1
  bool valid = true;               // false once a step had probability 0
};

/// Scaled forward recursion: belief <- T diag(O_{x:}) belief / c with
/// c = O_{x:} . belief, accumulating log c. An impossible sequence yields
/// log_prob = -inf and valid = false instead of an error.
ForwardResult forward_loglikelihood(const HmmParams& params,
                                    const Sequence& seq);

/// Closed-form population moments:
///   P1  = O pi
///   P21 = O T diag(pi) O^T
///   P3[x] = O T diag(O_{x:}) T diag(pi) O^T
MomentStats exact_moments(const HmmParams& params);

}  // namespace psr
