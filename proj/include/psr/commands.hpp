#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "psr/eval.hpp"
#include "psr/moments.hpp"

// CLI commands as library functions so they can be tested in-process. Each
// returns a process exit code and reports errors as one machine-readable
// line `error: <Code>: <detail>` on the diagnostic stream.
//
// Exit codes: 0 success, 2 invalid input or config, 3 insufficient data,
// 4 numerical degeneracy.

namespace psr {

int exit_code_for(ErrorCode code);

struct GenConfig {
  std::string hmm_path;
  std::string out_path;
  int count = 0;
  int length = 0;
  std::uint64_t seed = 0;
};

struct LearnConfig {
  // Exactly one of corpus_path / moments_path / exact_hmm_path.
  std::string corpus_path;
  std::string moments_path;
  std::string exact_hmm_path;
  std::string out_path;
  std::string emit_moments_path;  // optional persisted intermediate
  std::optional<int> m;           // defaults to the HMM's m with exact_hmm_path
  std::optional<double> auto_rank_threshold;
  std::optional<int> expect_n;    // cross-check against the input's alphabet
  CountingMode mode = CountingMode::heads;
};

struct ScoreConfig {
  std::string model_path;
  std::string corpus_path;
  std::string out_path;  // empty: write to the provided stream
  std::optional<int> expect_n;
};

struct PredictConfig {
  std::string model_path;
};

struct SweepCmdConfig {
  std::string hmm_path;
  std::string out_prefix;  // writes <prefix>.detail.csv and <prefix>.summary.csv
  SweepConfig sweep;
};

int cmd_gen(const GenConfig& config, std::ostream& diag);
int cmd_learn(const LearnConfig& config, std::ostream& diag);
int cmd_score(const ScoreConfig& config, std::ostream& out, std::ostream& diag);
int cmd_predict(const PredictConfig& config, std::istream& in,
                std::ostream& out, std::ostream& diag);
int cmd_sweep(const SweepCmdConfig& config, std::ostream& diag);

}  // namespace psr
