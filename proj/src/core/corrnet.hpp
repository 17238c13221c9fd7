#pragma once

#include "core/types.hpp"

namespace corrspec {

// Construction of correlation networks from multivariate time series.
//
// A series matrix Z is n x T: one row per series, one column per time point.
// The standardized matrix Ztilde has rows (z_i - mean(z_i)) / ||z_i - mean||,
// so the correlation network is exactly R = Ztilde * Ztilde^T, the matrix of
// pairwise Pearson correlations.

/// Subtracts each row's mean from the row.
Matrix center_rows(const Matrix& Z);

/// Per-row empirical signal power: sigma2_i = ||z_i - mean(z_i)||^2 / T.
/// Exactly zero for constant rows.
Vector signal_power(const Matrix& Z);

/// Rows centered and scaled to unit Euclidean norm.
///
/// A row whose centered norm is at most 1e-12 * max(1, ||row||) carries no
/// usable variation and raises DegenerateSeriesError with its row index.
Matrix standardize(const Matrix& Z);

/// The n x n Pearson correlation matrix of the rows of Z.
///
/// Postconditions: R is exactly symmetric, every entry lies in [-1, 1], and
/// the diagonal is exactly 1.  Entries that numerically overshoot the unit
/// interval by at most 1e-9 are clamped; larger overshoots raise
/// IntegrityError.  Degenerate rows raise DegenerateSeriesError.
Matrix correlation_matrix(const Matrix& Z);

/// Signal-to-noise floor: gamma = min_i sigma2[i] / nu[i].
/// Sizes must match and every nu[i] must be positive (DomainError).
double compute_gamma(const Vector& sigma2, const Vector& nu);

/// Leading part of the spectrum of a symmetric matrix.
struct SpectrumSummary {
  Vector eigenvalues;  ///< top d eigenvalues, descending by value
  double kappa = 0.0;  ///< eigenvalues(0) / eigenvalues(d-1)
};

/// Top-d eigenvalues (by signed value, descending) of symmetric R and their
/// condition number kappa = lambda_1 / lambda_d.
///
/// Requires 1 <= d <= n (DomainError) and lambda_d > 1e-10
/// (RankDeficientError otherwise, since kappa would be meaningless).
SpectrumSummary spectrum_summary(const Matrix& R, int d);

}  // namespace corrspec
