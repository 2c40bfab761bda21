#include <CLI11.hpp>

#include <iostream>

#include "psr/commands.hpp"

// Command-line front end. All numeric behavior lives in the library; this
// file only parses flags into the command configs.

int main(int argc, char** argv) {
  CLI::App app{"Spectral learning and inference for HMM predictive-state "
               "representations"};
  app.require_subcommand(1);

  std::string hmm_path, corpus_path, model_path, moments_path, exact_path;
  std::string out_path, emit_moments_path, mode_name = "heads";
  int count = 0, length = 0, eval_len = 3;
  std::uint64_t seed = 0;
  int m = 0;
  double auto_threshold = 0.0;
  int expect_n = 0;
  std::vector<std::int64_t> sweep_ns;
  std::vector<std::uint64_t> sweep_seeds;

  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode_name, "Triple counting mode")
        ->check(CLI::IsMember({"heads", "sliding"}));
  };
  auto parse_mode = [&]() {
    return mode_name == "sliding" ? psr::CountingMode::sliding
                                  : psr::CountingMode::heads;
  };

  CLI::App* gen = app.add_subcommand("gen", "Sample a corpus from an HMM file");
  gen->add_option("--hmm", hmm_path, "HMM parameter file (JSON)")->required();
  gen->add_option("--count", count, "Number of sequences")->required();
  gen->add_option("--length", length, "Length of each sequence")->required();
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", out_path, "Corpus output path")->required();

  CLI::App* learn = app.add_subcommand("learn", "Learn a PSR model");
  learn->add_option("--corpus", corpus_path, "Corpus file");
  learn->add_option("--moments", moments_path, "Precomputed moments file (JSON)");
  learn->add_option("--exact", exact_path,
                    "HMM file; use its exact population moments");
  learn->add_option("--m", m, "PSR dimension");
  learn->add_option("--auto-rank-threshold", auto_threshold,
                    "Keep singular values above this fraction of the largest");
  learn->add_option("--n", expect_n, "Expected alphabet size (cross-check)");
  learn->add_option("--emit-moments", emit_moments_path,
                    "Also write the moments used (JSON)");
  add_mode(learn);
  learn->add_option("--out", out_path, "Model output path")->required();

  CLI::App* score = app.add_subcommand("score", "Log-probability per sequence");
  score->add_option("--model", model_path, "Model file (JSON)")->required();
  score->add_option("--corpus", corpus_path, "Corpus file")->required();
  score->add_option("--n", expect_n, "Expected alphabet size (cross-check)");
  score->add_option("--out", out_path, "Output path (default: stdout)");

  CLI::App* predict = app.add_subcommand(
      "predict", "Streaming next-observation prediction (stdin -> stdout)");
  predict->add_option("--model", model_path, "Model file (JSON)")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Sample-size convergence sweep against the generating HMM");
  sweep->add_option("--hmm", hmm_path, "HMM parameter file (JSON)")->required();
  sweep->add_option("--sweep-ns", sweep_ns, "Sample sizes (comma separated)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--sweep-seeds", sweep_seeds, "Seeds (comma separated)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--eval-len", eval_len, "Evaluation sequence length");
  add_mode(sweep);
  sweep->add_option("--out", out_path, "Output prefix for the CSVs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (gen->parsed()) {
    psr::GenConfig config{hmm_path, out_path, count, length, seed};
    return psr::cmd_gen(config, std::cerr);
  }
  if (learn->parsed()) {
    psr::LearnConfig config;
    config.corpus_path = corpus_path;
    config.moments_path = moments_path;
    config.exact_hmm_path = exact_path;
    config.out_path = out_path;
    config.emit_moments_path = emit_moments_path;
    if (learn->count("--m") > 0) config.m = m;
    if (learn->count("--auto-rank-threshold") > 0) {
      config.auto_rank_threshold = auto_threshold;
    }
    if (learn->count("--n") > 0) config.expect_n = expect_n;
    config.mode = parse_mode();
    return psr::cmd_learn(config, std::cerr);
  }
  if (score->parsed()) {
    psr::ScoreConfig config;
    config.model_path = model_path;
    config.corpus_path = corpus_path;
    config.out_path = out_path;
    if (score->count("--n") > 0) config.expect_n = expect_n;
    return psr::cmd_score(config, std::cout, std::cerr);
  }
  if (predict->parsed()) {
    psr::PredictConfig config{model_path};
    return psr::cmd_predict(config, std::cin, std::cout, std::cerr);
  }
  if (sweep->parsed()) {
    psr::SweepCmdConfig config;
    config.hmm_path = hmm_path;
    config.out_prefix = out_path;
    config.sweep.sample_counts = sweep_ns;
    config.sweep.seeds = sweep_seeds;
    config.sweep.eval_len = eval_len;
    config.sweep.mode = parse_mode();
    return psr::cmd_sweep(config, std::cerr);
  }
  return 2;
}
