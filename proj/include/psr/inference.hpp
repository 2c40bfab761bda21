#pragma once

#include "psr/learn.hpp"
#include "psr/types.hpp"

namespace psr {

// Normalizers at or below this invalidate the state instead of feeding log().
inline constexpr double kAlphaMin = 1e-300;

/// Streaming belief over a PsrModel. `b` is kept normalized so that
/// binf . b = 1; `log_scale` accumulates the log normalizers and therefore
/// equals log Pr[of the consumed prefix]. Invalid states stay invalid.
struct BeliefState {
  Vector b;
  double log_scale = 0.0;
  int t = 0;               // observations consumed
  bool valid = true;
  int failed_at = -1;      // step index (0-based) of the failing update
  double last_alpha = 0.0; // normalizer of the most recent step
};

/// State before any observation: b1 rescaled to binf . b = 1, log_scale =
/// log(binf . b1). Throws InvalidInit when binf . b1 <= 0.
BeliefState init_belief(const PsrModel& model);

struct Prediction {
  // raw[x] = binf . B[x] b. Empirical models can produce slightly negative
  // entries; they are reported as-is.
  Vector raw;
  // max(raw, 0) renormalized; uniform if everything clamps to zero. Always
  // a valid distribution.
  Vector clamped;
};

/// One-step next-observation prediction from a valid state.
/// Throws InvalidState.
Prediction predict_next_distribution(const PsrModel& model,
                                     const BeliefState& state);

/// Consumes one symbol: alpha = binf . B[x] b; if alpha > kAlphaMin the new
/// state is (B[x] b / alpha, log_scale + log alpha), otherwise the returned
/// state is marked invalid. Never throws on a zero-probability observation;
/// failure travels in the state.
BeliefState belief_update(const PsrModel& model, const BeliefState& state,
                          int symbol);

struct SequenceScore {
  double log_prob = 0.0;  // -inf when !valid
  bool valid = true;
};

/// log Pr[seq] = final log_scale after init_belief and one update per
/// symbol. Invalid (zero or degenerate probability) is reported in the
/// result, not thrown.
SequenceScore sequence_logprob(const PsrModel& model, const Sequence& seq);

/// Unnormalized evaluation binf . B[x_t] ... B[x_1] b1 in plain arithmetic.
/// Cross-check path for short sequences; underflows around t > 20 where the
/// normalized recursion does not.
double sequence_prob_direct(const PsrModel& model, const Sequence& seq);

/// U b: the predicted next-observation distribution in the standard basis
/// of R^n. Throws InvalidState.
Vector predicted_observation_vector(const PsrModel& model,
                                    const BeliefState& state);

}  // namespace psr
