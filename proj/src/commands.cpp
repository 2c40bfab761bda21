#include "psr/commands.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "psr/inference.hpp"
#include "psr/io.hpp"

namespace psr {

namespace {

int report(std::ostream& diag, const Error& error) {
  diag << "error: " << error.what() << '\n';
  return exit_code_for(error.code());
}

int report_config(std::ostream& diag, const std::string& message) {
  diag << "error: Config: " << message << '\n';
  return 2;
}

void print_prediction_line(std::ostream& out, const Vector& distribution,
                           double alpha, double log_prob, bool valid) {
  for (Eigen::Index i = 0; i < distribution.size(); ++i) {
    out << format_double(distribution[i]) << '\t';
  }
  out << format_double(alpha) << '\t' << format_double(log_prob) << '\t'
      << (valid ? "ok" : "invalid") << '\n';
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyCorpus:
    case ErrorCode::NoTriples:
      return 3;
    case ErrorCode::PinvDegenerate:
    case ErrorCode::ZeroMatrix:
      return 4;
    default:
      return 2;
  }
}

int cmd_gen(const GenConfig& config, std::ostream& diag) {
  try {
    if (config.count < 1 || config.length < 1) {
      return report_config(diag, "--count and --length must be positive");
    }
    const HmmParams params = load_hmm_json(config.hmm_path);
    const SequenceCorpus corpus =
        sample_sequences(params, config.count, config.length, config.seed);
    save_corpus(corpus, config.out_path);
    return 0;
  } catch (const Error& error) {
    return report(diag, error);
  }
}

int cmd_learn(const LearnConfig& config, std::ostream& diag) {
  try {
    const int inputs = (config.corpus_path.empty() ? 0 : 1) +
                       (config.moments_path.empty() ? 0 : 1) +
                       (config.exact_hmm_path.empty() ? 0 : 1);
    if (inputs != 1) {
      return report_config(diag,
                           "need exactly one of --corpus, --moments, --exact");
    }
    if (config.m && config.auto_rank_threshold) {
      return report_config(diag, "--m and --auto-rank-threshold are exclusive");
    }

    MomentStats moments;
    std::optional<int> true_m;
    if (!config.corpus_path.empty()) {
      moments = estimate_moments(load_corpus(config.corpus_path), config.mode);
    } else if (!config.moments_path.empty()) {
      moments = load_moments_json(config.moments_path);
    } else {
      const HmmParams params = load_hmm_json(config.exact_hmm_path);
      moments = exact_moments(params);
      true_m = params.m;
    }
    if (config.expect_n && moments.n != *config.expect_n) {
      throw Error(ErrorCode::ShapeMismatch,
                  "input alphabet size " + std::to_string(moments.n) +
                      " does not match --n " + std::to_string(*config.expect_n));
    }
    if (!config.emit_moments_path.empty()) {
      save_moments_json(moments, config.emit_moments_path);
    }

    RankSelection rank = RankSelection::automatic();
    if (config.m) {
      rank = RankSelection::fixed(*config.m);
    } else if (config.auto_rank_threshold) {
      rank = RankSelection::automatic(*config.auto_rank_threshold);
    } else if (true_m) {
      rank = RankSelection::fixed(*true_m);
    } else {
      return report_config(diag, "need --m or --auto-rank-threshold");
    }

    const PsrModel model = learn_psr(moments, rank);

    diag << "singular values of P21:";
    for (Eigen::Index i = 0; i < model.singular_values.size(); ++i) {
      diag << ' ' << format_double(model.singular_values[i]);
    }
    diag << '\n';
    if (model.rank_warning) {
      diag << "warning: RankTooLarge: requested rank " << model.m
           << " exceeds the numerical rank of P21\n";
    }

    save_model_json(model, config.out_path);
    return 0;
  } catch (const Error& error) {
    return report(diag, error);
  }
}

int cmd_score(const ScoreConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    const PsrModel model = load_model_json(config.model_path);
    const SequenceCorpus corpus = load_corpus(config.corpus_path);
    if (model.n != corpus.n) {
      throw Error(ErrorCode::ShapeMismatch,
                  "model alphabet size " + std::to_string(model.n) +
                      " does not match corpus " + std::to_string(corpus.n));
    }
    if (config.expect_n && model.n != *config.expect_n) {
      throw Error(ErrorCode::ShapeMismatch,
                  "model alphabet size " + std::to_string(model.n) +
                      " does not match --n " + std::to_string(*config.expect_n));
    }

    std::ofstream file;
    if (!config.out_path.empty()) {
      file.open(config.out_path);
      if (!file) {
        throw Error(ErrorCode::ParseError, "cannot write " + config.out_path);
      }
    }
    std::ostream& sink = config.out_path.empty() ? out : file;
    for (const Sequence& seq : corpus.sequences) {
      const SequenceScore score = sequence_logprob(model, seq);
      sink << format_double(score.log_prob) << '\t'
           << (score.valid ? "ok" : "invalid") << '\n';
    }
    return 0;
  } catch (const Error& error) {
    return report(diag, error);
  }
}

int cmd_predict(const PredictConfig& config, std::istream& in,
                std::ostream& out, std::ostream& diag) {
  try {
    const PsrModel model = load_model_json(config.model_path);
    BeliefState state = init_belief(model);
    const Vector uniform = Vector::Constant(model.n, 1.0 / model.n);
    const double neg_inf = -std::numeric_limits<double>::infinity();

    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      int symbol = 0;
      try {
        symbol = std::stoi(line) - 1;  // stream protocol is 1-based
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad symbol line '" + line + "'");
      }
      if (symbol < 0 || symbol >= model.n) {
        throw Error(ErrorCode::SymbolOutOfRange,
                    "symbol " + std::to_string(symbol + 1) +
                        " outside alphabet of size " + std::to_string(model.n));
      }
      if (state.valid) {
        state = belief_update(model, state, symbol);
      }
      if (state.valid) {
        const Prediction prediction = predict_next_distribution(model, state);
        print_prediction_line(out, prediction.clamped, state.last_alpha,
                              state.log_scale, true);
      } else {
        // Stream stays alive; the dead state is reported in-band on every
        // subsequent line.
        print_prediction_line(out, uniform, state.last_alpha, neg_inf, false);
      }
    }
    return 0;
  } catch (const Error& error) {
    return report(diag, error);
  }
}

int cmd_sweep(const SweepCmdConfig& config, std::ostream& diag) {
  try {
    if (config.sweep.sample_counts.empty() || config.sweep.seeds.empty()) {
      return report_config(diag, "need --sweep-ns and --sweep-seeds");
    }
    if (config.sweep.eval_len < 1) {
      return report_config(diag, "--eval-len must be positive");
    }
    const HmmParams params = load_hmm_json(config.hmm_path);
    const SweepReport report_data = convergence_sweep(params, config.sweep);
    save_sweep_csv(report_data, config.out_prefix + ".detail.csv",
                   config.out_prefix + ".summary.csv");
    return 0;
  } catch (const Error& error) {
    return report(diag, error);
  }
}

}  // namespace psr
