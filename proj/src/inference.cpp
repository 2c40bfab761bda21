#include "psr/inference.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace psr {

namespace {

void require_valid(const BeliefState& state) {
  if (!state.valid) {
    throw Error(ErrorCode::InvalidState,
                "belief state was invalidated at step " +
                    std::to_string(state.failed_at));
  }
}

void check_symbol(const PsrModel& model, int symbol) {
  if (symbol < 0 || symbol >= model.n) {
    throw Error(ErrorCode::SymbolOutOfRange,
                "symbol " + std::to_string(symbol + 1) +
                    " outside alphabet of size " + std::to_string(model.n));
  }
}

}  // namespace

BeliefState init_belief(const PsrModel& model) {
  const double scale = model.binf.dot(model.b1);
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::InvalidInit,
                "binf . b1 = " + std::to_string(scale) +
                    " is not positive");
  }
  BeliefState state;
  state.b = model.b1 / scale;
  state.log_scale = std::log(scale);
  state.t = 0;
  state.valid = true;
  state.last_alpha = scale;
  return state;
}

Prediction predict_next_distribution(const PsrModel& model,
                                     const BeliefState& state) {
  require_valid(state);
  Prediction prediction;
  prediction.raw.resize(model.n);
  for (int x = 0; x < model.n; ++x) {
    prediction.raw[x] = model.binf.dot(model.B[x] * state.b);
  }
  Vector clamped = prediction.raw.cwiseMax(0.0);
  const double total = clamped.sum();
  prediction.clamped = total > 0.0
                           ? Vector(clamped / total)
                           : Vector(Vector::Constant(model.n, 1.0 / model.n));
  return prediction;
}

BeliefState belief_update(const PsrModel& model, const BeliefState& state,
                          int symbol) {
  require_valid(state);
  check_symbol(model, symbol);

  const Vector updated = model.B[symbol] * state.b;
  const double alpha = model.binf.dot(updated);

  BeliefState next = state;
  next.last_alpha = alpha;
  if (!(alpha > kAlphaMin)) {
    next.valid = false;
    next.failed_at = state.t;
    return next;
  }
  next.b = updated / alpha;
  next.log_scale += std::log(alpha);
  next.t += 1;
  return next;
}

SequenceScore sequence_logprob(const PsrModel& model, const Sequence& seq) {
  SequenceScore score;
  BeliefState state;
  try {
    state = init_belief(model);
  } catch (const Error&) {
    score.log_prob = -std::numeric_limits<double>::infinity();
    score.valid = false;
    return score;
  }
  for (int symbol : seq) {
    state = belief_update(model, state, symbol);
    if (!state.valid) {
      score.log_prob = -std::numeric_limits<double>::infinity();
      score.valid = false;
      return score;
    }
  }
  score.log_prob = state.log_scale;
  score.valid = true;
  return score;
}

double sequence_prob_direct(const PsrModel& model, const Sequence& seq) {
  Vector v = model.b1;
  for (int symbol : seq) {
    check_symbol(model, symbol);
    v = model.B[symbol] * v;
  }
  return model.binf.dot(v);
}

Vector predicted_observation_vector(const PsrModel& model,
                                    const BeliefState& state) {
  require_valid(state);
  return model.U * state.b;
}

}  // namespace psr
