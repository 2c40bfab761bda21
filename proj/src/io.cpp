#include "psr/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace psr {

using nlohmann::json;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open " + path);
  }
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::ParseError, "cannot write " + path);
  }
  return out;
}

json parse_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json require_field(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

Vector vector_from_json(const json& array, const char* key) {
  if (!array.is_array()) {
    throw Error(ErrorCode::ParseError, std::string(key) + " must be an array");
  }
  Vector v(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) {
    if (!array[i].is_number()) {
      throw Error(ErrorCode::ParseError,
                  std::string(key) + " must contain only numbers");
    }
    v[static_cast<Eigen::Index>(i)] = array[i].get<double>();
  }
  return v;
}

// Row-major: a list of `rows` rows, each with `cols` numbers.
Matrix matrix_from_json(const json& array, Eigen::Index rows,
                        Eigen::Index cols, const char* key) {
  if (!array.is_array() || static_cast<Eigen::Index>(array.size()) != rows) {
    throw Error(ErrorCode::ParseError,
                std::string(key) + " must be a list of " +
                    std::to_string(rows) + " rows");
  }
  Matrix mat(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = array[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::ParseError,
                  std::string(key) + " row " + std::to_string(i) +
                      " must have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        throw Error(ErrorCode::ParseError,
                    std::string(key) + " must contain only numbers");
      }
      mat(i, j) = cell.get<double>();
    }
  }
  return mat;
}

json vector_to_json(const Vector& v) {
  json array = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) array.push_back(v[i]);
  return array;
}

json matrix_to_json(const Matrix& mat) {
  json array = json::array();
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < mat.cols(); ++j) row.push_back(mat(i, j));
    array.push_back(row);
  }
  return array;
}

int int_field(const json& doc, const char* key) {
  const json value = require_field(doc, key);
  if (!value.is_number_integer()) {
    throw Error(ErrorCode::ParseError, std::string(key) + " must be an integer");
  }
  return value.get<int>();
}

CountingMode mode_from_string(const std::string& text) {
  if (text == "heads") return CountingMode::heads;
  if (text == "sliding") return CountingMode::sliding;
  throw Error(ErrorCode::ParseError, "unknown counting mode '" + text + "'");
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// ---------------------------------------------------------------------------
// HMM parameter files

HmmParams read_hmm_json(std::istream& in) {
  const json doc = parse_json(in);
  const int m = int_field(doc, "m");
  const int n = int_field(doc, "n");
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::ParseError, "m and n must be positive");
  }
  const Matrix transition = matrix_from_json(require_field(doc, "T"), m, m, "T");
  const Matrix emission = matrix_from_json(require_field(doc, "O"), n, m, "O");
  const Vector prior = vector_from_json(require_field(doc, "pi"), "pi");
  return validate_hmm(transition, emission, prior);
}

void write_hmm_json(const HmmParams& params, std::ostream& out) {
  json doc;
  doc["m"] = params.m;
  doc["n"] = params.n;
  doc["T"] = matrix_to_json(params.transition);
  doc["O"] = matrix_to_json(params.emission);
  doc["pi"] = vector_to_json(params.prior);
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Corpus files: `#n=<alphabet>` header, one sequence of space-separated
// 1-based symbols per line.

SequenceCorpus read_corpus(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::ParseError, "corpus file is empty");
  }
  if (line.rfind("#n=", 0) != 0) {
    throw Error(ErrorCode::ParseError, "first line must be '#n=<alphabet size>'");
  }
  SequenceCorpus corpus;
  try {
    corpus.n = std::stoi(line.substr(3));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad alphabet size in '" + line + "'");
  }

  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream tokens(line);
    Sequence seq;
    int symbol = 0;
    while (tokens >> symbol) {
      seq.push_back(symbol - 1);  // file is 1-based
    }
    if (!tokens.eof()) {
      throw Error(ErrorCode::ParseError,
                  "bad token on line " + std::to_string(line_number));
    }
    if (!seq.empty()) corpus.sequences.push_back(std::move(seq));
  }
  validate_corpus(corpus);
  return corpus;
}

void write_corpus(const SequenceCorpus& corpus, std::ostream& out) {
  out << "#n=" << corpus.n << '\n';
  for (const Sequence& seq : corpus.sequences) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i > 0) out << ' ';
      out << seq[i] + 1;
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Moment files

namespace {

json moment_provenance_to_json(const MomentProvenance& provenance) {
  json doc;
  if (provenance.kind == MomentProvenance::Kind::exact) {
    doc["kind"] = "exact";
  } else {
    doc["kind"] = "empirical";
    doc["mode"] = to_string(provenance.mode);
    doc["firsts"] = provenance.firsts;
    doc["pairs"] = provenance.pairs;
    doc["triples"] = provenance.triples;
  }
  return doc;
}

MomentProvenance moment_provenance_from_json(const json& doc) {
  MomentProvenance provenance;
  const std::string kind = require_field(doc, "kind").get<std::string>();
  if (kind == "exact") {
    provenance.kind = MomentProvenance::Kind::exact;
  } else if (kind == "empirical") {
    provenance.kind = MomentProvenance::Kind::empirical;
    provenance.mode = mode_from_string(require_field(doc, "mode").get<std::string>());
    provenance.firsts = require_field(doc, "firsts").get<std::int64_t>();
    provenance.pairs = require_field(doc, "pairs").get<std::int64_t>();
    provenance.triples = require_field(doc, "triples").get<std::int64_t>();
  } else {
    throw Error(ErrorCode::ParseError, "unknown provenance kind '" + kind + "'");
  }
  return provenance;
}

}  // namespace

MomentStats read_moments_json(std::istream& in) {
  const json doc = parse_json(in);
  const int n = int_field(doc, "n");
  if (n < 1) throw Error(ErrorCode::ParseError, "n must be positive");

  MomentStats moments;
  moments.n = n;
  moments.P1 = vector_from_json(require_field(doc, "P1"), "P1");
  if (moments.P1.size() != n) {
    throw Error(ErrorCode::ParseError, "P1 must have length n");
  }
  moments.P21 = matrix_from_json(require_field(doc, "P21"), n, n, "P21");
  const json slabs = require_field(doc, "P3");
  if (!slabs.is_array() || static_cast<int>(slabs.size()) != n) {
    throw Error(ErrorCode::ParseError, "P3 must be a list of n matrices");
  }
  moments.P3.reserve(n);
  for (int x = 0; x < n; ++x) {
    moments.P3.push_back(matrix_from_json(slabs[x], n, n, "P3"));
  }
  moments.provenance = moment_provenance_from_json(require_field(doc, "provenance"));
  return moments;
}

void write_moments_json(const MomentStats& moments, std::ostream& out) {
  json doc;
  doc["n"] = moments.n;
  doc["P1"] = vector_to_json(moments.P1);
  doc["P21"] = matrix_to_json(moments.P21);
  json slabs = json::array();
  for (const Matrix& slab : moments.P3) slabs.push_back(matrix_to_json(slab));
  doc["P3"] = slabs;
  doc["provenance"] = moment_provenance_to_json(moments.provenance);
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Model files

namespace {

json model_provenance_to_json(const ModelProvenance& provenance) {
  json doc;
  switch (provenance.kind) {
    case ModelProvenance::Kind::from_exact_moments:
      doc["kind"] = "from_exact_moments";
      break;
    case ModelProvenance::Kind::analytic_from_hmm:
      doc["kind"] = "analytic_from_hmm";
      break;
    case ModelProvenance::Kind::from_empirical_moments:
      doc["kind"] = "from_empirical_moments";
      doc["mode"] = to_string(provenance.mode);
      doc["firsts"] = provenance.firsts;
      doc["pairs"] = provenance.pairs;
      doc["triples"] = provenance.triples;
      break;
  }
  return doc;
}

ModelProvenance model_provenance_from_json(const json& doc) {
  ModelProvenance provenance;
  const std::string kind = require_field(doc, "kind").get<std::string>();
  if (kind == "from_exact_moments") {
    provenance.kind = ModelProvenance::Kind::from_exact_moments;
  } else if (kind == "analytic_from_hmm") {
    provenance.kind = ModelProvenance::Kind::analytic_from_hmm;
  } else if (kind == "from_empirical_moments") {
    provenance.kind = ModelProvenance::Kind::from_empirical_moments;
    provenance.mode = mode_from_string(require_field(doc, "mode").get<std::string>());
    provenance.firsts = require_field(doc, "firsts").get<std::int64_t>();
    provenance.pairs = require_field(doc, "pairs").get<std::int64_t>();
    provenance.triples = require_field(doc, "triples").get<std::int64_t>();
  } else {
    throw Error(ErrorCode::ParseError, "unknown provenance kind '" + kind + "'");
  }
  return provenance;
}

}  // namespace

PsrModel read_model_json(std::istream& in) {
  const json doc = parse_json(in);
  const int n = int_field(doc, "n");
  const int m = int_field(doc, "m");
  if (n < 1 || m < 1 || m > n) {
    throw Error(ErrorCode::ParseError, "need 1 <= m <= n");
  }

  PsrModel model;
  model.n = n;
  model.m = m;
  model.U = matrix_from_json(require_field(doc, "U"), n, m, "U");
  model.b1 = vector_from_json(require_field(doc, "b1"), "b1");
  model.binf = vector_from_json(require_field(doc, "binf"), "binf");
  if (model.b1.size() != m || model.binf.size() != m) {
    throw Error(ErrorCode::ParseError, "b1 and binf must have length m");
  }
  const json operators = require_field(doc, "B");
  if (!operators.is_array() || static_cast<int>(operators.size()) != n) {
    throw Error(ErrorCode::ParseError, "B must be a list of n matrices");
  }
  model.B.reserve(n);
  for (int x = 0; x < n; ++x) {
    model.B.push_back(matrix_from_json(operators[x], m, m, "B"));
  }
  model.singular_values =
      vector_from_json(require_field(doc, "singular_values"), "singular_values");
  model.provenance = model_provenance_from_json(require_field(doc, "provenance"));
  if (doc.contains("rank_warning")) {
    model.rank_warning = doc.at("rank_warning").get<bool>();
  }
  return model;
}

void write_model_json(const PsrModel& model, std::ostream& out) {
  json doc;
  doc["n"] = model.n;
  doc["m"] = model.m;
  doc["U"] = matrix_to_json(model.U);
  doc["b1"] = vector_to_json(model.b1);
  doc["binf"] = vector_to_json(model.binf);
  json operators = json::array();
  for (const Matrix& B : model.B) operators.push_back(matrix_to_json(B));
  doc["B"] = operators;
  doc["singular_values"] = vector_to_json(model.singular_values);
  doc["rank_warning"] = model.rank_warning;
  doc["provenance"] = model_provenance_to_json(model.provenance);
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Sweep CSVs

void write_sweep_detail_csv(const SweepReport& report, std::ostream& out) {
  out << "N,seed,l1_error,degenerate_flag\n";
  for (const SweepRecord& record : report.records) {
    out << record.sample_count << ',' << record.seed << ','
        << format_double(record.l1) << ',' << (record.degenerate ? 1 : 0)
        << '\n';
  }
}

void write_sweep_summary_csv(const SweepReport& report, std::ostream& out) {
  out << "N,median_l1,q25,q75\n";
  for (const SweepSummary& summary : report.summary) {
    out << summary.sample_count << ',' << format_double(summary.median) << ','
        << format_double(summary.q25) << ',' << format_double(summary.q75)
        << '\n';
  }
}

// ---------------------------------------------------------------------------
// Path wrappers

HmmParams load_hmm_json(const std::string& path) {
  auto in = open_input(path);
  return read_hmm_json(in);
}

void save_hmm_json(const HmmParams& params, const std::string& path) {
  auto out = open_output(path);
  write_hmm_json(params, out);
}

SequenceCorpus load_corpus(const std::string& path) {
  auto in = open_input(path);
  return read_corpus(in);
}

void save_corpus(const SequenceCorpus& corpus, const std::string& path) {
  auto out = open_output(path);
  write_corpus(corpus, out);
}

MomentStats load_moments_json(const std::string& path) {
  auto in = open_input(path);
  return read_moments_json(in);
}

void save_moments_json(const MomentStats& moments, const std::string& path) {
  auto out = open_output(path);
  write_moments_json(moments, out);
}

PsrModel load_model_json(const std::string& path) {
  auto in = open_input(path);
  return read_model_json(in);
}

void save_model_json(const PsrModel& model, const std::string& path) {
  auto out = open_output(path);
  write_model_json(model, out);
}

void save_sweep_csv(const SweepReport& report, const std::string& detail_path,
                    const std::string& summary_path) {
  auto detail = open_output(detail_path);
  write_sweep_detail_csv(report, detail);
  auto summary = open_output(summary_path);
  write_sweep_summary_csv(report, summary);
}

}  // namespace psr
