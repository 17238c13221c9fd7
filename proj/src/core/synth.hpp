#pragma once

#include <cstdint>
#include <vector>

#include "core/types.hpp"

namespace corrspec {

// Synthetic data generation: band-sparse random signals plus additive noise.
//
// Signals are built in the frequency domain.  A support of d0 distinct
// frequency indices is drawn uniformly without replacement from
// {2, ..., floor(T/2)}; each supported coefficient gets independent standard
// normal real and imaginary parts per row, the conjugate partner column is
// filled to keep the series real, and the rows are mapped back to the time
// domain with the inverse DFT.  Index 1 (the constant component) is never in
// the support, so every signal row has exactly zero mean.

/// How the signal matrix is scaled after synthesis.
enum class Normalization {
  FrobeniusSqrtN,    ///< scale the whole matrix so ||Z||_F = sqrt(n)
  RowsStandardized,  ///< standardize rows (mean 0, unit norm) per series
};

/// Noise distribution family.
enum class NoiseFamily { Gaussian, Laplacian };

/// How per-row noise variances are assigned.
enum class RowScaling {
  ScaledByRowNorm,  ///< nu_i = nu * ||z*_i||^2
  Constant,         ///< nu_i = nu
};

struct SignalSpec {
  int n = 0;          ///< number of series (rows)
  int T = 0;          ///< series length; at least 4
  int d0 = 0;         ///< number of signal frequencies; 1 <= d0 <= floor(T/2)-1
  Normalization normalization = Normalization::FrobeniusSqrtN;
  std::uint64_t seed = 0;
};

struct Signals {
  Matrix Z;                  ///< n x T real signal matrix
  std::vector<int> support;  ///< sorted 1-based frequency indices, size d0
  int rank = 0;              ///< rank of Z implied by the support (<= n)
};

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::Gaussian;
  double nu = 0.0;      ///< base variance; nonnegative
  RowScaling row_scaling = RowScaling::ScaledByRowNorm;
  double alpha = 1.0;   ///< variance inflation factor for one random row; >= 1
  std::uint64_t seed = 0;
};

struct Noise {
  Matrix N;           ///< n x T noise matrix
  Vector nu_vec;      ///< realized per-row variances (after inflation)
  long inflated_row = -1;  ///< row whose variance was inflated, or -1
};

/// Rank of a signal matrix with the given frequency support: 2 per
/// conjugate pair plus 1 per self-paired frequency, capped at n.
int structural_rank(const std::vector<int>& support, int T, int n);

/// Draws a band-sparse signal matrix.
///
/// Determinism: identical specs produce bit-identical results.  The draw
/// order is: support indices first, then for each supported frequency in
/// ascending order, one (real, imaginary) normal pair per row.
///
/// With RowsStandardized normalization the standardized matrix must have a
/// correlation spectrum with condition number kappa <= 5 at its structural
/// rank; the draw is repeated (continuing the same stream) up to 100 times
/// until this holds, and NumericError is raised if it never does.
///
/// Errors: DomainError for n < 1, T < 4, or d0 outside 1..floor(T/2)-1;
/// IntegrityError if the synthesized series fail to be real within 1e-10.
Signals generate_signals(const SignalSpec& spec);

/// Draws additive noise for the signal matrix Zstar.
///
/// Per-row variances follow the row-scaling rule; if alpha > 1, one row index
/// is drawn uniformly (before any entry noise) and its variance is multiplied
/// by alpha.  Entries are drawn row-major: Gaussian rows use
/// sqrt(nu_i) * N(0,1); Laplacian rows use scale b = sqrt(nu_i / 2) so the
/// variance is also nu_i.  When nu == 0 the noise matrix is exactly zero and
/// no entry draws are consumed.
///
/// Errors: DomainError for nu < 0, alpha < 1, or empty Zstar.
Noise generate_noise(const Matrix& Zstar, const NoiseSpec& spec);

}  // namespace corrspec
