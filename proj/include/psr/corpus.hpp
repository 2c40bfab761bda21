#pragma once

#include "psr/types.hpp"

namespace psr {

/// A collection of finite observation sequences over the alphabet
/// {0, ..., n-1}. Every sequence has length >= 1.
struct SequenceCorpus {
  int n = 0;
  std::vector<Sequence> sequences;

  std::size_t size() const { return sequences.size(); }
};

/// Throws SymbolOutOfRange / ShapeMismatch if any sequence is empty or
/// contains a symbol outside [0, n).
void validate_corpus(const SequenceCorpus& corpus);

}  // namespace psr
