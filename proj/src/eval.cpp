#include "psr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "psr/inference.hpp"

namespace psr {

namespace {

std::int64_t checked_table_size(int n, int t) {
  if (n < 1 || t < 1) {
    throw Error(ErrorCode::ShapeMismatch, "need n >= 1 and t >= 1");
  }
  std::int64_t size = 1;
  for (int k = 0; k < t; ++k) {
    size *= n;
    if (size > kMaxEnumeration) {
      throw Error(ErrorCode::EnumerationTooLarge,
                  std::to_string(n) + "^" + std::to_string(t) +
                      " sequences exceed the enumeration guard");
    }
  }
  return size;
}

}  // namespace

std::size_t DistributionTable::index_of(const Sequence& seq) const {
  std::size_t index = 0;
  for (int symbol : seq) index = index * n + static_cast<std::size_t>(symbol);
  return index;
}

Sequence DistributionTable::sequence_at(std::size_t index) const {
  Sequence seq(t);
  for (int k = t - 1; k >= 0; --k) {
    seq[k] = static_cast<int>(index % n);
    index /= n;
  }
  return seq;
}

double DistributionTable::sum() const {
  double total = 0.0;
  for (double p : probs) total += p;
  return total;
}

DistributionTable brute_force_distribution(const HmmParams& params, int t) {
  const std::int64_t size = checked_table_size(params.n, t);
  DistributionTable table;
  table.n = params.n;
  table.t = t;
  table.probs.resize(static_cast<std::size_t>(size));

  // Depth-first over prefixes, carrying the unnormalized forward message
  // alpha[j] = Pr[h_{depth+1} = j, x_{1:depth}]. Leaf value is its sum.
  std::vector<Vector> messages(t + 1, Vector(params.m));
  std::vector<int> prefix(t);
  messages[0] = params.prior;

  std::size_t next_index = 0;
  int depth = 0;
  prefix[0] = 0;
  while (depth >= 0) {
    if (prefix[depth] == params.n) {
      --depth;
      if (depth >= 0) ++prefix[depth];
      continue;
    }
    const int x = prefix[depth];
    const Vector emission_row = params.emission.row(x).transpose();
    const Vector weighted = emission_row.cwiseProduct(messages[depth]);
    if (depth + 1 == t) {
      table.probs[next_index++] = weighted.sum();
      ++prefix[depth];
    } else {
      messages[depth + 1] = params.transition * weighted;
      ++depth;
      prefix[depth] = 0;
    }
  }
  return table;
}

DistributionTable brute_force_distribution(const PsrModel& model, int t) {
  const std::int64_t size = checked_table_size(model.n, t);
  DistributionTable table;
  table.n = model.n;
  table.t = t;
  table.probs.resize(static_cast<std::size_t>(size));

  // Same traversal with v = B[x_depth] ... B[x_1] b1; leaf value binf . v.
  std::vector<Vector> partial(t + 1, Vector(model.m));
  std::vector<int> prefix(t);
  partial[0] = model.b1;

  std::size_t next_index = 0;
  int depth = 0;
  prefix[0] = 0;
  while (depth >= 0) {
    if (prefix[depth] == model.n) {
      --depth;
      if (depth >= 0) ++prefix[depth];
      continue;
    }
    const Vector updated = model.B[prefix[depth]] * partial[depth];
    if (depth + 1 == t) {
      table.probs[next_index++] = model.binf.dot(updated);
      ++prefix[depth];
    } else {
      partial[depth + 1] = updated;
      ++depth;
      prefix[depth] = 0;
    }
  }
  return table;
}

double l1_error(const DistributionTable& p, const DistributionTable& q) {
  if (p.n != q.n || p.t != q.t) {
    throw Error(ErrorCode::KeyMismatch,
                "tables cover different sequence sets");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    total += std::abs(p.probs[i] - q.probs[i]);
  }
  return total;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SweepReport convergence_sweep(const HmmParams& params,
                              const SweepConfig& config) {
  if (config.sample_counts.empty() || config.seeds.empty()) {
    throw Error(ErrorCode::ShapeMismatch,
                "sweep needs at least one sample size and one seed");
  }
  // Fail the guard up front rather than after hours of sampling.
  checked_table_size(params.n, config.eval_len);

  const DistributionTable truth =
      brute_force_distribution(params, config.eval_len);
  const int sample_length = std::max(3, config.eval_len);

  SweepReport report;
  report.hmm_descriptor = "hmm(m=" + std::to_string(params.m) +
                          ",n=" + std::to_string(params.n) + ")";
  report.sample_counts = config.sample_counts;

  for (std::int64_t count : config.sample_counts) {
    std::vector<double> cell_errors;
    for (std::uint64_t seed : config.seeds) {
      SweepRecord record;
      record.sample_count = count;
      record.seed = seed;
      try {
        const SequenceCorpus corpus = sample_sequences(
            params, static_cast<int>(count), sample_length, seed);
        const MomentStats moments = estimate_moments(corpus, config.mode);
        const PsrModel model = learn_psr(moments, RankSelection::fixed(params.m));
        record.l1 = l1_error(brute_force_distribution(model, config.eval_len),
                             truth);
        // A fixed m above the numerical rank means the learner could not
        // resolve the requested dimension from this sample.
        record.degenerate = model.rank_warning;
        cell_errors.push_back(record.l1);
      } catch (const Error&) {
        record.l1 = std::numeric_limits<double>::quiet_NaN();
        record.degenerate = true;
      }
      report.records.push_back(record);
    }
    std::sort(cell_errors.begin(), cell_errors.end());
    SweepSummary summary;
    summary.sample_count = count;
    summary.median = quantile_sorted(cell_errors, 0.5);
    summary.q25 = quantile_sorted(cell_errors, 0.25);
    summary.q75 = quantile_sorted(cell_errors, 0.75);
    report.summary.push_back(summary);
  }
  return report;
}

}  // namespace psr
