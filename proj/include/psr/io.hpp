#pragma once

#include <iosfwd>
#include <string>

#include "psr/corpus.hpp"
#include "psr/eval.hpp"
#include "psr/hmm.hpp"
#include "psr/learn.hpp"
#include "psr/moments.hpp"

// File formats. JSON documents hold the HMM parameters, moment statistics,
// and learned models; corpora are plain text (one sequence per line,
// 1-based symbols, `#n=<alphabet>` header); sweep reports are CSV.
// Doubles in text/CSV output are printed with 17 significant digits.

namespace psr {

std::string format_double(double value);  // %.17g; infinities as [-]inf

HmmParams read_hmm_json(std::istream& in);
HmmParams load_hmm_json(const std::string& path);
void write_hmm_json(const HmmParams& params, std::ostream& out);
void save_hmm_json(const HmmParams& params, const std::string& path);

SequenceCorpus read_corpus(std::istream& in);
SequenceCorpus load_corpus(const std::string& path);
void write_corpus(const SequenceCorpus& corpus, std::ostream& out);
void save_corpus(const SequenceCorpus& corpus, const std::string& path);

MomentStats read_moments_json(std::istream& in);
MomentStats load_moments_json(const std::string& path);
void write_moments_json(const MomentStats& moments, std::ostream& out);
void save_moments_json(const MomentStats& moments, const std::string& path);

PsrModel read_model_json(std::istream& in);
PsrModel load_model_json(const std::string& path);
void write_model_json(const PsrModel& model, std::ostream& out);
void save_model_json(const PsrModel& model, const std::string& path);

void write_sweep_detail_csv(const SweepReport& report, std::ostream& out);
void write_sweep_summary_csv(const SweepReport& report, std::ostream& out);
void save_sweep_csv(const SweepReport& report, const std::string& detail_path,
                    const std::string& summary_path);

}  // namespace psr
