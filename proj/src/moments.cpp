#include "psr/moments.hpp"

#include <string>

namespace psr {

const char* to_string(CountingMode mode) {
  return mode == CountingMode::heads ? "heads" : "sliding";
}

namespace {

TripleCounts zero_counts(int n) {
  TripleCounts counts;
  counts.n = n;
  counts.c1 = TripleCounts::CountVector::Zero(n);
  counts.c21 = TripleCounts::CountMatrix::Zero(n, n);
  counts.c3.assign(n, TripleCounts::CountMatrix::Zero(n, n));
  return counts;
}

}  // namespace

TripleCounts count_triples(const SequenceCorpus& corpus, CountingMode mode) {
  if (corpus.sequences.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "no sequences to count");
  }
  validate_corpus(corpus);

  TripleCounts counts = zero_counts(corpus.n);
  counts.mode = mode;
  for (const Sequence& seq : corpus.sequences) {
    const std::size_t len = seq.size();
    if (mode == CountingMode::heads) {
      // Positions 1..3 only; shorter sequences still contribute their
      // available prefix to c1 and c21.
      counts.c1[seq[0]] += 1;
      counts.total_firsts += 1;
      if (len >= 2) {
        counts.c21(seq[1], seq[0]) += 1;
        counts.total_pairs += 1;
      }
      if (len >= 3) {
        counts.c3[seq[1]](seq[2], seq[0]) += 1;
        counts.total_triples += 1;
      }
    } else {
      for (std::size_t t = 0; t < len; ++t) {
        counts.c1[seq[t]] += 1;
        counts.total_firsts += 1;
        if (t + 1 < len) {
          counts.c21(seq[t + 1], seq[t]) += 1;
          counts.total_pairs += 1;
        }
        if (t + 2 < len) {
          counts.c3[seq[t + 1]](seq[t + 2], seq[t]) += 1;
          counts.total_triples += 1;
        }
      }
    }
  }

  if (counts.total_triples == 0) {
    throw Error(ErrorCode::NoTriples,
                "no sequence is long enough to produce a triple");
  }
  return counts;
}

MomentStats normalize_counts(const TripleCounts& counts) {
  if (counts.total_firsts <= 0 || counts.total_pairs <= 0 ||
      counts.total_triples <= 0) {
    throw Error(ErrorCode::DivisionByZeroGuard,
                "cannot normalize counts with a zero total");
  }

  MomentStats moments;
  moments.n = counts.n;
  moments.P1 = counts.c1.cast<double>() / static_cast<double>(counts.total_firsts);
  moments.P21 =
      counts.c21.cast<double>() / static_cast<double>(counts.total_pairs);
  moments.P3.reserve(counts.n);
  for (int x = 0; x < counts.n; ++x) {
    moments.P3.push_back(counts.c3[x].cast<double>() /
                         static_cast<double>(counts.total_triples));
  }
  moments.provenance.kind = MomentProvenance::Kind::empirical;
  moments.provenance.mode = counts.mode;
  moments.provenance.firsts = counts.total_firsts;
  moments.provenance.pairs = counts.total_pairs;
  moments.provenance.triples = counts.total_triples;
  return moments;
}

MomentStats estimate_moments(const SequenceCorpus& corpus, CountingMode mode) {
  return normalize_counts(count_triples(corpus, mode));
}

TripleCounts merge_counts(const TripleCounts& a, const TripleCounts& b) {
  if (a.n != b.n || a.mode != b.mode) {
    throw Error(ErrorCode::ShapeMismatch,
                "cannot merge counts with different alphabets or modes");
  }
  TripleCounts merged = a;
  merged.c1 += b.c1;
  merged.c21 += b.c21;
  for (int x = 0; x < merged.n; ++x) merged.c3[x] += b.c3[x];
  merged.total_firsts += b.total_firsts;
  merged.total_pairs += b.total_pairs;
  merged.total_triples += b.total_triples;
  return merged;
}

}  // namespace psr
