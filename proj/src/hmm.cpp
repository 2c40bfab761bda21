#include "psr/hmm.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

#include "psr/rng.hpp"

namespace psr {

namespace {

void check_stochastic_columns(const Matrix& mat, const char* name,
                              double sum_tol) {
  for (Eigen::Index j = 0; j < mat.cols(); ++j) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
      const double v = mat(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::NotStochastic,
                    std::string(name) + " entry (" + std::to_string(i) + "," +
                        std::to_string(j) + ") = " + std::to_string(v) +
                        " outside [0,1]");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > sum_tol) {
      throw Error(ErrorCode::NotStochastic,
                  std::string(name) + " column " + std::to_string(j) +
                      " sums to " + std::to_string(sum));
    }
  }
}

void check_full_column_rank(const Matrix& mat, const char* name,
                            double rank_rel) {
  Eigen::JacobiSVD<Matrix> svd(mat);
  const Vector& sigma = svd.singularValues();
  const double largest = sigma[0];
  const double smallest = sigma[sigma.size() - 1];
  if (!(smallest > rank_rel * largest)) {
    throw Error(ErrorCode::RankDeficient,
                std::string(name) + " is rank deficient (sigma_min/sigma_max = " +
                    std::to_string(largest > 0.0 ? smallest / largest : 0.0) +
                    ")");
  }
}

}  // namespace

HmmParams validate_hmm(const Matrix& transition, const Matrix& emission,
                       const Vector& prior, const ValidationTolerances& tol) {
  const Eigen::Index m = transition.rows();
  const Eigen::Index n = emission.rows();
  if (m < 1) {
    throw Error(ErrorCode::ShapeMismatch, "transition matrix is empty");
  }
  if (transition.cols() != m) {
    throw Error(ErrorCode::ShapeMismatch,
                "transition must be square, got " + std::to_string(m) + "x" +
                    std::to_string(transition.cols()));
  }
  if (emission.cols() != m) {
    throw Error(ErrorCode::ShapeMismatch,
                "emission has " + std::to_string(emission.cols()) +
                    " columns, expected " + std::to_string(m));
  }
  if (prior.size() != m) {
    throw Error(ErrorCode::ShapeMismatch,
                "prior has length " + std::to_string(prior.size()) +
                    ", expected " + std::to_string(m));
  }
  if (n < m) {
    throw Error(ErrorCode::ShapeMismatch,
                "alphabet size " + std::to_string(n) +
                    " smaller than state count " + std::to_string(m));
  }

  check_stochastic_columns(transition, "transition", tol.stochastic_sum);
  check_stochastic_columns(emission, "emission", tol.stochastic_sum);

  double prior_sum = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!(prior[j] > 0.0)) {
      throw Error(ErrorCode::ZeroPriorEntry,
                  "prior[" + std::to_string(j) + "] = " +
                      std::to_string(prior[j]) + " is not strictly positive");
    }
    if (prior[j] > 1.0) {
      throw Error(ErrorCode::NotStochastic,
                  "prior[" + std::to_string(j) + "] exceeds 1");
    }
    prior_sum += prior[j];
  }
  if (std::abs(prior_sum - 1.0) > tol.stochastic_sum) {
    throw Error(ErrorCode::NotStochastic,
                "prior sums to " + std::to_string(prior_sum));
  }

  check_full_column_rank(transition, "transition", tol.rank_rel);
  check_full_column_rank(emission, "emission", tol.rank_rel);

  HmmParams params;
  params.m = static_cast<int>(m);
  params.n = static_cast<int>(n);
  params.transition = transition;
  params.emission = emission;
  params.prior = prior;
  return params;
}

SequenceCorpus sample_sequences(const HmmParams& params, int count, int length,
                                std::uint64_t seed) {
  if (count < 1 || length < 1) {
    throw Error(ErrorCode::ShapeMismatch,
                "count and length must be positive");
  }
  SequenceCorpus corpus;
  corpus.n = params.n;
  corpus.sequences.resize(count);
  for (int s = 0; s < count; ++s) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(s));
    Sequence& seq = corpus.sequences[s];
    seq.resize(length);
    int state = rng.categorical(params.prior);
    for (int t = 0; t < length; ++t) {
      seq[t] = rng.categorical(params.emission.col(state));
      if (t + 1 < length) {
        state = rng.categorical(params.transition.col(state));
      }
    }
  }
  return corpus;
}

ForwardResult forward_loglikelihood(const HmmParams& params,
                                    const Sequence& seq) {
  ForwardResult result;
  Vector belief = params.prior;
  double log_prob = 0.0;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const int x = seq[t];
    if (x < 0 || x >= params.n) {
      throw Error(ErrorCode::SymbolOutOfRange,
                  "symbol " + std::to_string(x + 1) +
                      " outside alphabet of size " + std::to_string(params.n));
    }
    const Vector emission_row = params.emission.row(x).transpose();
    const double step_prob = emission_row.dot(belief);
    if (!(step_prob > 0.0)) {
      result.log_prob = -std::numeric_limits<double>::infinity();
      result.next_belief = Vector::Zero(params.m);
      result.valid = false;
      return result;
    }
    belief = (params.transition * emission_row.cwiseProduct(belief)) / step_prob;
    log_prob += std::log(step_prob);
  }
  result.log_prob = log_prob;
  result.next_belief = belief;
  result.valid = true;
  return result;
}

MomentStats exact_moments(const HmmParams& params) {
  MomentStats moments;
  moments.n = params.n;
  moments.P1 = params.emission * params.prior;

  const Matrix transition_given_start =
      params.transition * params.prior.asDiagonal() * params.emission.transpose();
  moments.P21 = params.emission * transition_given_start;

  moments.P3.reserve(params.n);
  for (int x = 0; x < params.n; ++x) {
    const Vector emission_row = params.emission.row(x).transpose();
    moments.P3.push_back(params.emission * params.transition *
                         emission_row.asDiagonal() * transition_given_start);
  }
  moments.provenance.kind = MomentProvenance::Kind::exact;
  return moments;
}

}  // namespace psr
