#pragma once

#include "core/types.hpp"

namespace corrspec {

// Discrete Fourier machinery for length-T real time series.
//
// Conventions (fixed throughout the library):
//  * Frequencies are indexed 1..T, matching the time index 1..T.
//  * Forward transform:  F_k = sum_{t=1..T} z_t exp(-2*pi*i*(k-1)*(t-1)/T),
//    with no normalization factor.
//  * Inverse transform carries the 1/T factor:
//    z_t = (1/T) sum_{k=1..T} F_k exp(+2*pi*i*(k-1)*(t-1)/T).
//  * For real input the coefficients satisfy F_k = conj(F_{pair(k)}) where
//    pair(1) = 1 and pair(k) = T - k + 2 for k >= 2.

/// Index of the conjugate frequency partner of `k` (both 1-based).
/// Throws DomainError unless 1 <= k <= T.
int pair_index(int k, int T);

/// The T x T symmetric DFT coefficient matrix W with
/// W(k,t) = exp(-2*pi*i*(k-1)*(t-1)/T).  Because W is symmetric, the forward
/// transform of the rows of a real matrix Z is simply Z * W.
CMatrix dft_matrix(int T);

/// Forward DFT of a single real series.
CVector dft(const Vector& series);

/// Forward DFT of every row of Z; returns an n x T complex matrix.
CMatrix dft_rows(const Matrix& Z);

/// Inverse DFT of a single coefficient vector (complex result).
CVector idft(const CVector& coeffs);

/// Inverse DFT of every row of F; returns an n x T complex matrix.
CMatrix idft_rows(const CMatrix& F);

/// The conjugation permutation: the T x T 0/1 matrix K with K(1,1) = 1 and
/// K(s,t) = 1 iff s + t = T + 2.  Applying K to a coefficient vector of a
/// real series is the same as conjugating it.  Stored implicitly.
struct ConjugationPermutation {
  int T = 0;

  /// 1-based image of frequency k under the permutation.
  int pair(int k) const { return pair_index(k, T); }

  /// Dense 0/1 matrix form.
  Matrix dense() const;
};

/// Builds the conjugation permutation for length T (T >= 1).
ConjugationPermutation build_K(int T);

/// The symmetric complex square root of the conjugation permutation.
///
/// K is an involution, so it has eigenvalues +1 and -1; the square root maps
/// the -1 eigenspace to +i and is assembled exactly from the eigenspace
/// projectors.  Nonzero pattern, with m = pair(k):
///  * fixed frequencies (m == k): diagonal entry 1
///  * paired frequencies (k < m): diagonal entries (1+i)/2 at k and m,
///    off-diagonal entries (1-i)/2 at (k,m) and (m,k).
/// The result S is symmetric and satisfies S * S = K exactly in floating
/// point (all entries are representable).
CMatrix sqrt_K(int T);

/// Multiplies coefficient rows by sqrt_K(T) and returns the real part.
///
/// For coefficients of real centered series the product is exactly real with
/// entries Re(F) - Im(F); an imaginary residual above 1e-8 in max-abs means
/// the input did not come from real series and raises IntegrityError.
Matrix real_fourier_representation(const CMatrix& F);

/// The latent position matrix of a standardized series matrix:
/// (1/sqrt(T)) * real_fourier_representation(dft_rows(Ztilde)).
///
/// Requires every row of Ztilde to have mean 0 and Euclidean norm 1 within
/// 1e-8 (DomainError otherwise).  The output X satisfies
/// X * X^T = Ztilde * Ztilde^T, i.e. it is an exact latent factorization of
/// the correlation network of the standardized series.
Matrix latent_target(const Matrix& Ztilde);

}  // namespace corrspec
