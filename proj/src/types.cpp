#include "psr/types.hpp"

namespace psr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::ZeroPriorEntry: return "ZeroPriorEntry";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::NoTriples: return "NoTriples";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::DivisionByZeroGuard: return "DivisionByZeroGuard";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::PinvDegenerate: return "PinvDegenerate";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::SingularUO: return "SingularUO";
    case ErrorCode::InvalidInit: return "InvalidInit";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace psr
