#pragma once

#include "psr/hmm.hpp"
#include "psr/moments.hpp"
#include "psr/types.hpp"

namespace psr {

/// Rank choice for the thin SVD. Either a fixed dimension m, or the
/// largest k with sigma_k > rel_threshold * sigma_1 (exploration only;
/// empirical learning should fix m).
struct RankSelection {
  static RankSelection fixed(int m) { return {true, m, kDefaultAutoThreshold}; }
  static RankSelection automatic(double rel_threshold = kDefaultAutoThreshold) {
    return {false, 0, rel_threshold};
  }

  static constexpr double kDefaultAutoThreshold = 1e-6;

  bool is_fixed = true;
  int m = 0;
  double rel_threshold = kDefaultAutoThreshold;
};

struct ThinSvdResult {
  Matrix basis;            // U, n x m, orthonormal columns
  Vector singular_values;  // all n of them, decreasing
  int rank = 0;            // number of columns kept
  // True when a fixed m exceeds the numerical rank (sigma_m at or below
  // the auto threshold). The basis is still returned.
  bool rank_warning = false;
};

/// Top-m left singular vectors of P21 with a deterministic sign convention:
/// each column is flipped so its largest-magnitude entry (first on ties) is
/// positive. Throws ZeroMatrix, or RankTooLarge when a fixed m exceeds n.
ThinSvdResult thin_svd_basis(const Matrix& P21, const RankSelection& rank);

struct ModelProvenance {
  enum class Kind { from_exact_moments, from_empirical_moments, analytic_from_hmm };
  Kind kind = Kind::from_exact_moments;
  // from_empirical_moments only: the sample info of the source moments.
  CountingMode mode = CountingMode::heads;
  std::int64_t firsts = 0;
  std::int64_t pairs = 0;
  std::int64_t triples = 0;
};

/// Learned predictive-state representation of an HMM: everything needed to
/// score sequences and run recursive predictions, and nothing else. The
/// hidden-state parameters are never recovered.
struct PsrModel {
  int n = 0;
  int m = 0;
  Matrix U;                // n x m, orthonormal columns spanning range(P21)
  Vector b1;               // U^T P1
  Vector binf;             // U^T 1
  std::vector<Matrix> B;   // B[x] = U^T P3[x] pinv(U^T P21), m x m
  Vector singular_values;  // of the moment matrix the basis came from
  bool rank_warning = false;
  ModelProvenance provenance;
};

struct LearnOptions {
  // Singular values at or below pinv_rel_cutoff * sigma_1 are treated as
  // zero when inverting U^T P21.
  double pinv_rel_cutoff = 1e-12;
};

/// Moore-Penrose pseudoinverse via SVD with a relative cutoff. Throws
/// PinvDegenerate when A has no singular value above zero.
Matrix pseudo_inverse(const Matrix& A, double rel_cutoff);

/// The moment-based construction:
///   U    = thin_svd_basis(P21)
///   b1   = U^T P1
///   B[x] = U^T P3[x] (U^T P21)^+
///   binf = U^T 1
PsrModel learn_psr(const MomentStats& moments, const RankSelection& rank,
                   const LearnOptions& options = {});

/// Same construction with a caller-supplied orthonormal basis instead of
/// the SVD of P21. Used to share or rotate bases across models.
PsrModel learn_psr_with_basis(const MomentStats& moments, const Matrix& U,
                              const LearnOptions& options = {});

/// Analytic construction from known HMM parameters:
///   b1 = U^T O pi,  B[x] = (U^T O) T diag(O_{x:}) (U^T O)^{-1},  binf = U^T 1.
/// U must be orthonormal with range(U) = range(O); throws BasisMismatch or
/// SingularUO otherwise.
PsrModel psr_from_hmm(const HmmParams& params, const Matrix& U);

}  // namespace psr
