#include "psr/learn.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace psr {

namespace {

// Flip each column so its largest-magnitude entry (first on ties) is
// positive. Makes serialized bases reproducible; sequence probabilities
// are invariant to the choice.
void apply_sign_convention(Matrix& basis) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Eigen::Index pivot = 0;
    basis.col(j).cwiseAbs().maxCoeff(&pivot);
    if (basis(pivot, j) < 0.0) basis.col(j) = -basis.col(j);
  }
}

void check_moment_shapes(const MomentStats& moments) {
  const int n = moments.n;
  if (n <= 0 || moments.P1.size() != n || moments.P21.rows() != n ||
      moments.P21.cols() != n || static_cast<int>(moments.P3.size()) != n) {
    throw Error(ErrorCode::ShapeMismatch, "inconsistent moment dimensions");
  }
  for (const Matrix& slab : moments.P3) {
    if (slab.rows() != n || slab.cols() != n) {
      throw Error(ErrorCode::ShapeMismatch, "inconsistent P3 slab dimensions");
    }
  }
}

ModelProvenance provenance_from_moments(const MomentStats& moments) {
  ModelProvenance provenance;
  if (moments.provenance.kind == MomentProvenance::Kind::exact) {
    provenance.kind = ModelProvenance::Kind::from_exact_moments;
  } else {
    provenance.kind = ModelProvenance::Kind::from_empirical_moments;
    provenance.mode = moments.provenance.mode;
    provenance.firsts = moments.provenance.firsts;
    provenance.pairs = moments.provenance.pairs;
    provenance.triples = moments.provenance.triples;
  }
  return provenance;
}

PsrModel learn_from_basis(const MomentStats& moments, const Matrix& basis,
                          const LearnOptions& options) {
  const int n = moments.n;
  const int m = static_cast<int>(basis.cols());

  PsrModel model;
  model.n = n;
  model.m = m;
  model.U = basis;
  model.b1 = basis.transpose() * moments.P1;
  model.binf = basis.transpose() * Vector::Ones(n);

  const Matrix compressed_pairs = basis.transpose() * moments.P21;  // m x n
  const Matrix pinv = pseudo_inverse(compressed_pairs, options.pinv_rel_cutoff);

  model.B.reserve(n);
  for (int x = 0; x < n; ++x) {
    model.B.push_back(basis.transpose() * moments.P3[x] * pinv);
  }
  model.provenance = provenance_from_moments(moments);
  return model;
}

}  // namespace

ThinSvdResult thin_svd_basis(const Matrix& P21, const RankSelection& rank) {
  const Eigen::Index n = P21.rows();
  if (n < 1 || P21.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch,
                "P21 must be square, got " + std::to_string(n) + "x" +
                    std::to_string(P21.cols()));
  }
  if (rank.is_fixed && (rank.m < 1 || rank.m > n)) {
    throw Error(ErrorCode::RankTooLarge,
                "requested rank " + std::to_string(rank.m) +
                    " not in [1, " + std::to_string(n) + "]");
  }

  Eigen::JacobiSVD<Matrix> svd(P21, Eigen::ComputeThinU);
  ThinSvdResult result;
  result.singular_values = svd.singularValues();

  const double sigma1 = result.singular_values[0];
  if (!(sigma1 > 0.0)) {
    throw Error(ErrorCode::ZeroMatrix, "P21 has no nonzero singular value");
  }

  int numerical_rank = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (result.singular_values[k] > rank.rel_threshold * sigma1) {
      numerical_rank = static_cast<int>(k) + 1;
    }
  }

  if (rank.is_fixed) {
    result.rank = rank.m;
    result.rank_warning = rank.m > numerical_rank;
  } else {
    result.rank = numerical_rank;
  }

  result.basis = svd.matrixU().leftCols(result.rank);
  apply_sign_convention(result.basis);
  return result;
}

Matrix pseudo_inverse(const Matrix& A, double rel_cutoff) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  const double sigma1 = sigma.size() > 0 ? sigma[0] : 0.0;
  if (!(sigma1 > 0.0)) {
    throw Error(ErrorCode::PinvDegenerate,
                "matrix has no singular value above zero");
  }
  Vector inverted = Vector::Zero(sigma.size());
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma[k] > rel_cutoff * sigma1) inverted[k] = 1.0 / sigma[k];
  }
  return svd.matrixV() * inverted.asDiagonal() * svd.matrixU().transpose();
}

PsrModel learn_psr(const MomentStats& moments, const RankSelection& rank,
                   const LearnOptions& options) {
  check_moment_shapes(moments);
  ThinSvdResult svd = thin_svd_basis(moments.P21, rank);
  PsrModel model = learn_from_basis(moments, svd.basis, options);
  model.singular_values = svd.singular_values;
  model.rank_warning = svd.rank_warning;
  return model;
}

PsrModel learn_psr_with_basis(const MomentStats& moments, const Matrix& U,
                              const LearnOptions& options) {
  check_moment_shapes(moments);
  if (U.rows() != moments.n || U.cols() < 1 || U.cols() > moments.n) {
    throw Error(ErrorCode::ShapeMismatch,
                "basis must be n x m with 1 <= m <= n");
  }
  const Matrix gram = U.transpose() * U;
  if ((gram - Matrix::Identity(U.cols(), U.cols())).norm() > 1e-8) {
    throw Error(ErrorCode::BasisMismatch, "basis columns are not orthonormal");
  }
  PsrModel model = learn_from_basis(moments, U, options);
  Eigen::JacobiSVD<Matrix> svd(moments.P21);
  model.singular_values = svd.singularValues();
  return model;
}

PsrModel psr_from_hmm(const HmmParams& params, const Matrix& U) {
  if (U.rows() != params.n || U.cols() != params.m) {
    throw Error(ErrorCode::ShapeMismatch,
                "basis must be " + std::to_string(params.n) + "x" +
                    std::to_string(params.m));
  }
  const Matrix gram = U.transpose() * U;
  if ((gram - Matrix::Identity(params.m, params.m)).norm() > 1e-8) {
    throw Error(ErrorCode::BasisMismatch, "basis columns are not orthonormal");
  }
  // range(U) must equal range(O): the emission matrix must project onto
  // itself under U U^T.
  const double residual = (params.emission - U * (U.transpose() * params.emission)).norm();
  if (residual >= 1e-8) {
    throw Error(ErrorCode::BasisMismatch,
                "basis does not span the emission range (residual " +
                    std::to_string(residual) + ")");
  }

  const Matrix compressed_emission = U.transpose() * params.emission;  // m x m
  Eigen::JacobiSVD<Matrix> svd(compressed_emission);
  const Vector& sigma = svd.singularValues();
  if (!(sigma[sigma.size() - 1] > 1e-12 * sigma[0])) {
    throw Error(ErrorCode::SingularUO,
                "U^T O is numerically singular");
  }

  const Matrix inverse_compressed = compressed_emission.inverse();

  PsrModel model;
  model.n = params.n;
  model.m = params.m;
  model.U = U;
  model.b1 = compressed_emission * params.prior;
  model.binf = U.transpose() * Vector::Ones(params.n);
  model.B.reserve(params.n);
  for (int x = 0; x < params.n; ++x) {
    const Vector emission_row = params.emission.row(x).transpose();
    model.B.push_back(compressed_emission * params.transition *
                      emission_row.asDiagonal() * inverse_compressed);
  }
  model.provenance.kind = ModelProvenance::Kind::analytic_from_hmm;
  return model;
}

}  // namespace psr
