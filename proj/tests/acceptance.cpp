// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Every tolerance is pinned in the checks below.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "psr/commands.hpp"
#include "psr/eval.hpp"
#include "psr/inference.hpp"
#include "psr/io.hpp"
#include "support.hpp"

using namespace psr;
using test::all_sequences;
using test::hidden_path_probability;
using test::random_hmm;
using test::random_orthogonal;

namespace {

namespace fs = std::filesystem;

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& what) {
    if (ok) detail = what;  // keep the first failure
    ok = false;
  }
  void require(bool condition, const std::string& what) {
    if (!condition) fail(what);
  }
};

struct ModelFixture {
  HmmParams params;
  MomentStats moments;
  PsrModel model;
};

// 20 generating HMMs with m in 1..4 and n in m..8, fixed seeds.
std::vector<ModelFixture> acceptance_models() {
  std::vector<ModelFixture> fixtures;
  for (int k = 0; k < 20; ++k) {
    const int m = (k % 4) + 1;
    const int span = 8 - m;
    const int n = m + ((k * 5 + 3) % (span + 1));
    ModelFixture fixture;
    fixture.params = random_hmm(m, n, 1000 + k);
    fixture.moments = exact_moments(fixture.params);
    fixture.model = learn_psr(fixture.moments, RankSelection::fixed(m));
    fixtures.push_back(std::move(fixture));
  }
  return fixtures;
}

double psr_probability(const PsrModel& model, const Sequence& seq) {
  return std::exp(sequence_logprob(model, seq).log_prob);
}

// --------------------------------------------------------------------------

// Criterion 1: exact-moment models reproduce the forward algorithm on every
// sequence of length <= 4, within max(1e-12 absolute, 1e-9 relative).
Check criterion_exact_equivalence(const std::vector<ModelFixture>& fixtures) {
  Check check;
  for (const ModelFixture& fixture : fixtures) {
    for (int t = 1; t <= 4; ++t) {
      for (const Sequence& seq : all_sequences(fixture.params.n, t)) {
        const double truth =
            std::exp(forward_loglikelihood(fixture.params, seq).log_prob);
        const double learned = psr_probability(fixture.model, seq);
        const double tolerance = std::max(1e-12, 1e-9 * truth);
        check.require(std::abs(learned - truth) <= tolerance,
                      "probability mismatch " + std::to_string(learned) +
                          " vs " + std::to_string(truth) + " at m=" +
                          std::to_string(fixture.params.m) +
                          " n=" + std::to_string(fixture.params.n));
        if (!check.ok) return check;
      }
    }
  }
  return check;
}

// Criterion 2: length-4 PSR tables sum to 1 within 1e-8, and every one-step
// prediction from a reachable prefix state sums to 1 within 1e-9.
Check criterion_normalization(const std::vector<ModelFixture>& fixtures) {
  Check check;
  for (const ModelFixture& fixture : fixtures) {
    const PsrModel& model = fixture.model;
    const DistributionTable table = brute_force_distribution(model, 4);
    check.require(std::abs(table.sum() - 1.0) <= 1e-8,
                  "length-4 table sums to " + std::to_string(table.sum()));

    for (int len = 0; len <= 3; ++len) {
      const std::vector<Sequence> prefixes =
          len == 0 ? std::vector<Sequence>{Sequence{}}
                   : all_sequences(model.n, len);
      for (const Sequence& prefix : prefixes) {
        BeliefState state = init_belief(model);
        bool alive = true;
        for (int symbol : prefix) {
          state = belief_update(model, state, symbol);
          if (!state.valid) {
            alive = false;
            break;
          }
        }
        if (!alive) continue;
        const Prediction prediction = predict_next_distribution(model, state);
        check.require(std::abs(prediction.raw.sum() - 1.0) <= 1e-9,
                      "one-step prediction sums to " +
                          std::to_string(prediction.raw.sum()));
        if (!check.ok) return check;
      }
    }
  }
  return check;
}

// Criterion 3: rotating the basis changes no length-3 sequence probability
// by more than 1e-10.
Check criterion_basis_invariance(const std::vector<ModelFixture>& fixtures) {
  Check check;
  for (int f = 0; f < 5; ++f) {
    const ModelFixture& fixture = fixtures[f];
    const std::vector<Sequence> sequences = all_sequences(fixture.params.n, 3);
    for (int r = 0; r < 5; ++r) {
      const Matrix rotation =
          random_orthogonal(fixture.params.m, 500 + 10 * f + r);
      const PsrModel rotated = learn_psr_with_basis(
          fixture.moments, Matrix(fixture.model.U * rotation));
      for (const Sequence& seq : sequences) {
        const double base = sequence_prob_direct(fixture.model, seq);
        const double moved = sequence_prob_direct(rotated, seq);
        check.require(std::abs(base - moved) <= 1e-10,
                      "rotation moved a probability by " +
                          std::to_string(std::abs(base - moved)));
        if (!check.ok) return check;
      }
    }
  }
  return check;
}

// Criterion 4: the analytic construction and the moment construction agree
// on all length-3 probabilities within 1e-10 when they share U.
Check criterion_cross_path(const std::vector<ModelFixture>& fixtures) {
  Check check;
  for (const ModelFixture& fixture : fixtures) {
    const PsrModel analytic = psr_from_hmm(fixture.params, fixture.model.U);
    for (const Sequence& seq : all_sequences(fixture.params.n, 3)) {
      const double learned = sequence_prob_direct(fixture.model, seq);
      const double direct = sequence_prob_direct(analytic, seq);
      check.require(std::abs(learned - direct) <= 1e-10,
                    "routes differ by " +
                        std::to_string(std::abs(learned - direct)));
      if (!check.ok) return check;
    }
  }
  return check;
}

// Criterion 5: median L1 error strictly decreases over N in
// {1e2, 1e3, 1e4, 1e5} with 20 seeds, and ends below 0.02.
Check criterion_consistency() {
  Check check;
  const HmmParams params = random_hmm(2, 4, 31415);
  SweepConfig config;
  config.sample_counts = {100, 1000, 10000, 100000};
  config.seeds = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10,
                  11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  config.eval_len = 3;

  const SweepReport report = convergence_sweep(params, config);
  for (std::size_t i = 1; i < report.summary.size(); ++i) {
    check.require(report.summary[i].median < report.summary[i - 1].median,
                  "median not strictly decreasing: " +
                      std::to_string(report.summary[i - 1].median) + " -> " +
                      std::to_string(report.summary[i].median));
  }
  check.require(report.summary.back().median < 0.02,
                "median at N=1e5 is " +
                    std::to_string(report.summary.back().median));
  return check;
}

// Criterion 6: the forward oracle checks out against itself and against
// hidden-path enumeration on 10 small instances.
Check criterion_oracle_self_check() {
  Check check;
  const std::vector<std::pair<int, int>> shapes = {
      {1, 1}, {1, 2}, {1, 4}, {2, 2}, {2, 3},
      {2, 4}, {3, 3}, {3, 4}, {4, 4}, {4, 4}};
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    const HmmParams params =
        random_hmm(shapes[k].first, shapes[k].second, 9000 + k);
    for (int t = 1; t <= 5; ++t) {
      const DistributionTable table = brute_force_distribution(params, t);
      check.require(std::abs(table.sum() - 1.0) <= 1e-10,
                    "enumerated mass " + std::to_string(table.sum()));
      for (const Sequence& seq : all_sequences(params.n, t)) {
        const double enumerated = hidden_path_probability(params, seq);
        const double recursive =
            std::exp(forward_loglikelihood(params, seq).log_prob);
        check.require(std::abs(enumerated - recursive) <= 1e-12,
                      "oracle mismatch " + std::to_string(enumerated) +
                          " vs " + std::to_string(recursive));
        if (!check.ok) return check;
      }
    }
  }
  return check;
}

// Criterion 7: gen, learn, and sweep produce byte-identical outputs when
// rerun with identical inputs.
Check criterion_determinism() {
  Check check;
  const fs::path dir =
      fs::temp_directory_path() /
      fs::path("psr_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto file = [&](const std::string& name) { return (dir / name).string(); };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  std::ostringstream diag;

  save_hmm_json(random_hmm(2, 4, 2718), file("hmm.json"));

  GenConfig gen;
  gen.hmm_path = file("hmm.json");
  gen.count = 500;
  gen.length = 4;
  gen.seed = 99;
  gen.out_path = file("corpus_a.txt");
  check.require(cmd_gen(gen, diag) == 0, "cmd_gen failed");
  gen.out_path = file("corpus_b.txt");
  check.require(cmd_gen(gen, diag) == 0, "cmd_gen rerun failed");
  check.require(slurp(file("corpus_a.txt")) == slurp(file("corpus_b.txt")),
                "cmd_gen outputs differ");

  LearnConfig learn;
  learn.corpus_path = file("corpus_a.txt");
  learn.m = 2;
  learn.out_path = file("model_a.json");
  check.require(cmd_learn(learn, diag) == 0, "cmd_learn failed");
  learn.out_path = file("model_b.json");
  check.require(cmd_learn(learn, diag) == 0, "cmd_learn rerun failed");
  check.require(slurp(file("model_a.json")) == slurp(file("model_b.json")),
                "cmd_learn outputs differ");

  SweepCmdConfig sweep;
  sweep.hmm_path = file("hmm.json");
  sweep.sweep.sample_counts = {50, 100};
  sweep.sweep.seeds = {1, 2, 3};
  sweep.sweep.eval_len = 3;
  sweep.out_prefix = file("sweep_a");
  check.require(cmd_sweep(sweep, diag) == 0, "cmd_sweep failed");
  sweep.out_prefix = file("sweep_b");
  check.require(cmd_sweep(sweep, diag) == 0, "cmd_sweep rerun failed");
  check.require(
      slurp(file("sweep_a.detail.csv")) == slurp(file("sweep_b.detail.csv")) &&
          slurp(file("sweep_a.summary.csv")) ==
              slurp(file("sweep_b.summary.csv")),
      "cmd_sweep outputs differ");

  fs::remove_all(dir);
  return check;
}

// Criterion 8: unseen symbols yield zero-probability operators without
// crashes, and a dead stream never emits NaN.
Check criterion_degeneracy() {
  Check check;

  SequenceCorpus corpus;
  corpus.n = 3;  // symbol 3 (1-based) never occurs
  corpus.sequences = {{0, 1, 0}, {1, 0, 1}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}};
  const MomentStats moments = estimate_moments(corpus, CountingMode::heads);
  const PsrModel model = learn_psr(moments, RankSelection::fixed(2));

  check.require(model.B[2].norm() == 0.0, "unseen operator is not zero");
  const SequenceScore score = sequence_logprob(model, {0, 2, 1});
  check.require(!score.valid && std::isinf(score.log_prob),
                "unseen symbol did not zero the sequence");

  BeliefState state = init_belief(model);
  state = belief_update(model, state, 2);
  check.require(!state.valid, "alpha floor did not invalidate the state");
  check.require(!std::isnan(state.log_scale) && !std::isnan(state.last_alpha) &&
                    !state.b.hasNaN(),
                "invalidated state contains NaN");

  // Streaming protocol: the dead state is reported in-band, NaN-free.
  const fs::path dir =
      fs::temp_directory_path() /
      fs::path("psr_acceptance_deg_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string model_path = (dir / "model.json").string();
  save_model_json(model, model_path);
  PredictConfig predict{model_path};
  std::istringstream in("1\n3\n2\n");
  std::ostringstream out, diag;
  check.require(cmd_predict(predict, in, out, diag) == 0, "cmd_predict failed");
  check.require(out.str().find("nan") == std::string::npos,
                "stream emitted NaN");
  check.require(out.str().find("invalid") != std::string::npos,
                "stream never flagged the dead state");
  fs::remove_all(dir);
  return check;
}

}  // namespace

int main() {
  const std::vector<ModelFixture> fixtures = acceptance_models();

  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"exact-moment equivalence with the forward algorithm",
       [&] { return criterion_exact_equivalence(fixtures); }},
      {"normalization of brute-force tables and one-step predictions",
       [&] { return criterion_normalization(fixtures); }},
      {"basis invariance under orthogonal rotations",
       [&] { return criterion_basis_invariance(fixtures); }},
      {"analytic/spectral cross-path agreement",
       [&] { return criterion_cross_path(fixtures); }},
      {"statistical consistency over growing sample sizes",
       [] { return criterion_consistency(); }},
      {"forward-algorithm oracle self-check",
       [] { return criterion_oracle_self_check(); }},
      {"byte-identical reruns of gen/learn/sweep",
       [] { return criterion_determinism(); }},
      {"degeneracy handling without crashes or NaNs",
       [] { return criterion_degeneracy(); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Check check = criteria[i].second();
    if (check.ok) {
      std::printf("[PASS] criterion %zu: %s\n", i + 1, criteria[i].first.c_str());
    } else {
      ++failures;
      std::printf("[FAIL] criterion %zu: %s (%s)\n", i + 1,
                  criteria[i].first.c_str(), check.detail.c_str());
    }
  }
  return failures;
}
