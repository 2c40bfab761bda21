#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace psr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Observation symbols are 0-based everywhere in the API. User-facing file
// formats are 1-based; the parsers and serializers in io.hpp own that
// boundary.
using Sequence = std::vector<int>;

enum class ErrorCode {
  ShapeMismatch,
  NotStochastic,
  ZeroPriorEntry,
  RankDeficient,
  EmptyCorpus,
  NoTriples,
  SymbolOutOfRange,
  DivisionByZeroGuard,
  RankTooLarge,
  ZeroMatrix,
  PinvDegenerate,
  BasisMismatch,
  SingularUO,
  InvalidInit,
  InvalidState,
  KeyMismatch,
  EnumerationTooLarge,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace psr
