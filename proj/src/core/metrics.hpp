#pragma once

#include "core/types.hpp"

namespace corrspec {

// Alignment and error metrics for comparing embeddings.
//
// An embedding is identified only up to an orthogonal transformation of its
// coordinate axes, so all comparisons first solve the orthogonal Procrustes
// problem.  An n x d estimate is compared against an n x p target with
// d <= p by implicitly padding the estimate with p - d zero columns:
// minimize ||[Y | 0] W - target||_F over orthogonal p x p W.  The minimizer
// is W = U V^T from an SVD of [Y | 0]^T target, whose nonzero block is the
// d x p matrix Y^T target.

/// Result of a Procrustes alignment.
struct Alignment {
  Matrix rotation;      ///< p x p orthogonal matrix applied on the right
  double residual_2inf = 0.0;  ///< max row norm of [Y|0] W - target
  double residual_fro = 0.0;   ///< Frobenius norm of [Y|0] W - target
};

/// Solves the padded orthogonal Procrustes problem described above.
/// Requires Y.rows() == target.rows() and Y.cols() <= target.cols()
/// (DomainError otherwise).  The reported residuals are evaluated at the
/// Frobenius-optimal rotation.
Alignment procrustes_align(const Matrix& Y, const Matrix& target);

/// The (2, infinity) norm: the largest Euclidean row norm.
double two_inf_norm(const Matrix& M);

/// Procrustes-aligned (2, infinity) error of an estimate against a target,
/// i.e. min over orthogonal W (Frobenius-optimal) of the max row norm of
/// [estimate | 0] W - target.  Same preconditions as procrustes_align.
double embedding_error(const Matrix& estimate, const Matrix& target);

/// Largest principal angle distance ||(I - U U^T) Ustar||_2 between the
/// column spaces of two n x d orthonormal frames, clamped to [0, 1].
/// DomainError if shapes differ or either frame is not orthonormal within
/// 1e-8 in max-abs.
double sin_theta_distance(const Matrix& U, const Matrix& Ustar);

/// Worst relative distortion of per-row empirical signal power between an
/// observed matrix and the clean signals: with r_i the ratio of observed to
/// clean standard deviation, returns max_i max(|r_i - 1|, |1/r_i - 1|).
/// DomainError on shape mismatch; DegenerateSeriesError if any row of either
/// matrix has nonpositive power.
double sigma_ratio_diagnostic(const Matrix& Z, const Matrix& Zstar);

}  // namespace corrspec
