#include "psr/corpus.hpp"

#include <string>

namespace psr {

void validate_corpus(const SequenceCorpus& corpus) {
  if (corpus.n <= 0) {
    throw Error(ErrorCode::ShapeMismatch,
                "alphabet size must be positive, got " +
                    std::to_string(corpus.n));
  }
  for (std::size_t s = 0; s < corpus.sequences.size(); ++s) {
    const Sequence& seq = corpus.sequences[s];
    if (seq.empty()) {
      throw Error(ErrorCode::ShapeMismatch,
                  "sequence " + std::to_string(s) + " is empty");
    }
    for (int symbol : seq) {
      if (symbol < 0 || symbol >= corpus.n) {
        throw Error(ErrorCode::SymbolOutOfRange,
                    "symbol " + std::to_string(symbol + 1) +
                        " outside alphabet of size " +
                        std::to_string(corpus.n) + " in sequence " +
                        std::to_string(s));
      }
    }
  }
}

}  // namespace psr
