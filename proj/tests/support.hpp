#pragma once

// Shared test fixtures and independent oracles. The oracles here are kept
// free of the library's inference code paths on purpose: the hidden-path
// oracle uses plain loops and scalar arithmetic only.

#include <cmath>
#include <random>
#include <vector>

#include "psr/hmm.hpp"

namespace psr::test {

// Pr[x_{1:t}] by summing over all m^t hidden paths. Exponential on purpose;
// use only for tiny instances.
inline double hidden_path_probability(const HmmParams& params,
                                      const Sequence& seq) {
  const int m = params.m;
  const std::size_t t = seq.size();
  if (t == 0) return 1.0;

  std::vector<int> path(t, 0);
  double total = 0.0;
  while (true) {
    double prob = params.prior[path[0]] * params.emission(seq[0], path[0]);
    for (std::size_t s = 1; s < t; ++s) {
      prob *= params.transition(path[s], path[s - 1]) *
              params.emission(seq[s], path[s]);
    }
    total += prob;

    std::size_t pos = 0;
    while (pos < t && ++path[pos] == m) {
      path[pos] = 0;
      ++pos;
    }
    if (pos == t) break;
  }
  return total;
}

// All n^t sequences of length t in lexicographic order.
inline std::vector<Sequence> all_sequences(int n, int t) {
  std::vector<Sequence> out;
  Sequence seq(t, 0);
  while (true) {
    out.push_back(seq);
    int pos = t - 1;
    while (pos >= 0 && ++seq[pos] == n) {
      seq[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

// The two-symbol fair coin: one hidden state, uniform emission.
inline HmmParams coin_hmm() {
  Matrix transition(1, 1);
  transition << 1.0;
  Matrix emission(2, 1);
  emission << 0.5, 0.5;
  Vector prior(1);
  prior << 1.0;
  return validate_hmm(transition, emission, prior);
}

// T = I, O = I, uniform prior: the chain repeats its first state forever.
inline HmmParams identity_hmm(int m) {
  return validate_hmm(Matrix::Identity(m, m), Matrix::Identity(m, m),
                      Vector::Constant(m, 1.0 / m));
}

// Random valid HMM with Dirichlet(1)-style columns. Rejection-samples until
// validate_hmm accepts (rank failures are measure-zero but guarded anyway).
inline HmmParams random_hmm(int m, int n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::exponential_distribution<double> expo(1.0);
  auto stochastic_column = [&](Eigen::Index rows) {
    Vector col(rows);
    for (Eigen::Index i = 0; i < rows; ++i) col[i] = expo(engine) + 1e-6;
    return Vector(col / col.sum());
  };
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix transition(m, m);
    Matrix emission(n, m);
    for (int j = 0; j < m; ++j) {
      transition.col(j) = stochastic_column(m);
      emission.col(j) = stochastic_column(n);
    }
    Vector prior = stochastic_column(m);
    try {
      return validate_hmm(transition, emission, prior);
    } catch (const Error&) {
      continue;
    }
  }
  throw std::runtime_error("random_hmm failed to produce a valid instance");
}

// Haar-ish random orthogonal matrix: QR of a Gaussian matrix with the R
// diagonal sign fixed.
inline Matrix random_orthogonal(int m, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = gauss(engine);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace psr::test
