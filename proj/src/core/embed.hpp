#pragma once

#include "core/types.hpp"

namespace corrspec {

// Spectral embeddings of symmetric matrices and baselines.

/// Full eigendecomposition of a symmetric matrix in the library's canonical
/// order and sign convention.
struct EigenDecomposition {
  Vector values;   ///< eigenvalues, canonically ordered
  Matrix vectors;  ///< matching unit eigenvectors in the columns
};

/// Eigendecomposition with deterministic ordering and signs.
///
/// Ordering: descending |lambda|; exact |lambda| ties place the larger signed
/// value first; remaining ties (equal eigenvalues) are ordered by ascending
/// index of the eigenvector's largest-magnitude coordinate.  Signs: each
/// eigenvector is flipped so its largest-magnitude coordinate (lowest index
/// on magnitude ties) is positive.  Repeated calls on identical input return
/// identical bits.
///
/// Errors: DomainError if the input is not symmetric within 1e-10 in max-abs;
/// NumericError if the solver fails.
EigenDecomposition sym_eig(const Matrix& S);

/// A spectral embedding together with the spectrum it used.
struct Embedding {
  Matrix X;            ///< n x d coordinates
  Vector eigenvalues;  ///< the d signed eigenvalues that were used
  bool tie_warning = false;  ///< |lambda_d| and |lambda_{d+1}| nearly tied
};

/// Adjacency spectral embedding: with the top-d eigenpairs (by |lambda|)
/// of symmetric A, returns X = V_d * diag(sqrt(|lambda_1..d|)).
///
/// Sets tie_warning when d < n and the |lambda| gap at the cut is <= 1e-12,
/// meaning the selected subspace is not uniquely determined.
/// Errors: DomainError unless 1 <= d <= n and A is symmetric.
Embedding ase(const Matrix& A, int d);

/// PCA baseline: centers the rows of Z, takes the d leading left singular
/// vectors scaled by their singular values, then normalizes each row of the
/// result to unit norm (normalization happens after truncation).
///
/// Errors: DomainError unless 1 <= d <= min(n, T); DegenerateSeriesError if
/// a row of the truncated representation has zero norm.
Matrix pca_embed(const Matrix& Z, int d);

/// Naive baseline: the standardized series themselves, i.e. standardize(Z).
/// Satisfies naive_embed(Z) * naive_embed(Z)^T = correlation_matrix(Z).
Matrix naive_embed(const Matrix& Z);

}  // namespace corrspec
