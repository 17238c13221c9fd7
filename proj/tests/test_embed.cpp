#include <cmath>

#include <doctest.h>

#include "core/corrnet.hpp"
#include "core/embed.hpp"
#include "core/errors.hpp"
#include "core/fourier.hpp"
#include "core/metrics.hpp"
#include "core/rng.hpp"
#include "core/synth.hpp"
#include "core/types.hpp"

using namespace corrspec;

namespace {

Matrix random_matrix(int n, int T, std::uint64_t seed) {
  Rng rng(seed);
  Matrix Z(n, T);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < T; ++t) Z(i, t) = rng.normal();
  return Z;
}

Matrix random_symmetric(int n, std::uint64_t seed) {
  const Matrix A = random_matrix(n, n, seed);
  return 0.5 * (A + A.transpose());
}

}  // namespace

TEST_CASE("sym_eig solves a 2x2 by hand") {
  Matrix S(2, 2);
  S << 2, 1, 1, 2;  // eigenvalues 3 and 1, eigenvectors (1,1) and (1,-1)
  const EigenDecomposition e = sym_eig(S);
  CHECK(e.values(0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e.values(1) == doctest::Approx(1.0).epsilon(1e-14));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(e.vectors(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(e.vectors(1, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  // Sign convention: the anchor coordinate (lowest index on ties) is positive.
  CHECK(e.vectors(0, 1) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(e.vectors(1, 1) == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
}

TEST_CASE("sym_eig orders by magnitude with the signed value breaking ties") {
  Matrix D = Matrix::Zero(4, 4);
  D.diagonal() << 3.0, -5.0, 1.0, -3.0;
  const EigenDecomposition e = sym_eig(D);
  CHECK(e.values(0) == doctest::Approx(-5.0));
  CHECK(e.values(1) == doctest::Approx(3.0));   // +3 before -3 at equal |.|
  CHECK(e.values(2) == doctest::Approx(-3.0));
  CHECK(e.values(3) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig returns a true orthonormal eigenbasis") {
  const Matrix S = random_symmetric(15, 8);
  const EigenDecomposition e = sym_eig(S);
  CHECK((e.vectors.transpose() * e.vectors - Matrix::Identity(15, 15))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  for (int j = 0; j < 15; ++j) {
    CHECK((S * e.vectors.col(j) - e.values(j) * e.vectors.col(j))
              .cwiseAbs()
              .maxCoeff() < 1e-11);
  }
}

TEST_CASE("sym_eig is bit-deterministic across calls") {
  const Matrix S = random_symmetric(12, 9);
  const EigenDecomposition a = sym_eig(S);
  const EigenDecomposition b = sym_eig(S);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.vectors - b.vectors).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sym_eig rejects non-symmetric input") {
  Matrix S = random_matrix(5, 5, 10);
  CHECK_THROWS_AS(sym_eig(S), DomainError);
}

TEST_CASE("ase reconstructs a PSD rank-d gram matrix") {
  const Matrix B = random_matrix(10, 3, 11);
  const Matrix G = B * B.transpose();
  const Embedding e = ase(G, 3);
  REQUIRE(e.X.rows() == 10);
  REQUIRE(e.X.cols() == 3);
  CHECK((e.X * e.X.transpose() - G).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_FALSE(e.tie_warning);
}

TEST_CASE("ase picks eigenpairs by magnitude, not by signed value") {
  Matrix D = Matrix::Zero(5, 5);
  D.diagonal() << 4.0, -6.0, 1.0, 0.5, 0.1;
  const Embedding e = ase(D, 2);
  // |-6| and |4| dominate; scaling is sqrt(|lambda|).
  CHECK(e.eigenvalues(0) == doctest::Approx(-6.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(4.0));
  CHECK(e.X.col(0).cwiseAbs().maxCoeff() ==
        doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
  CHECK(e.X.col(1).cwiseAbs().maxCoeff() ==
        doctest::Approx(std::sqrt(4.0)).epsilon(1e-12));
}

TEST_CASE("ase of a rank-d gram matrix is Frobenius-optimal at rank d") {
  // Eckart-Young: no rank-d factorization can beat the truncated spectrum.
  const Matrix B = random_matrix(8, 5, 12);
  const Matrix G = B * B.transpose();  // rank 5
  const int d = 3;
  const Embedding e = ase(G, d);
  const double best = (G - e.X * e.X.transpose()).norm();
  for (int rep = 0; rep < 100; ++rep) {
    const Matrix Y = random_matrix(8, d, 1000 + rep);
    CHECK((G - Y * Y.transpose()).norm() >= best - 1e-9);
  }
}

TEST_CASE("ase flags magnitude ties at the cut") {
  Matrix D = Matrix::Zero(4, 4);
  D.diagonal() << 3.0, 1.0, 1.0, 0.2;
  CHECK(ase(D, 2).tie_warning);        // cut between the two exact 1s
  CHECK_FALSE(ase(D, 1).tie_warning);  // clear gap 3 vs 1
  CHECK_FALSE(ase(D, 4).tie_warning);  // full spectrum: nothing beyond the cut
  Matrix E = Matrix::Zero(3, 3);
  E.diagonal() << 2.0, 1.0, -1.0;      // tie in magnitude across signs
  CHECK(ase(E, 2).tie_warning);
}

TEST_CASE("ase validates its arguments") {
  const Matrix S = random_symmetric(6, 14);
  CHECK_THROWS_AS(ase(S, 0), DomainError);
  CHECK_THROWS_AS(ase(S, 7), DomainError);
  CHECK_THROWS_AS(ase(random_matrix(5, 5, 15), 2), DomainError);
}

TEST_CASE("ase of a clean correlation network recovers the latent target") {
  SignalSpec spec;
  spec.n = 25;
  spec.T = 40;
  spec.d0 = 4;
  spec.seed = 16;
  const Signals sig = generate_signals(spec);
  const Matrix Zt = standardize(sig.Z);
  const Matrix R = correlation_matrix(sig.Z);
  const Embedding e = ase(R, sig.rank);
  const Matrix target = latent_target(Zt);
  CHECK(embedding_error(e.X, target) < 1e-8);
}

TEST_CASE("pca_embed matches an SVD oracle up to sign convention") {
  const Matrix Z = random_matrix(9, 22, 17);
  const int d = 4;
  const Matrix X = pca_embed(Z, d);
  REQUIRE(X.rows() == 9);
  REQUIRE(X.cols() == d);
  for (int i = 0; i < 9; ++i) {
    CHECK(X.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Oracle: Jacobi SVD (different algorithm) of the centered rows.  Row
  // normalization and the gram product are both invariant to the per-vector
  // sign ambiguity, so compare grams.
  const Matrix C = center_rows(Z);
  Eigen::JacobiSVD<Matrix> svd(C, Eigen::ComputeThinU);
  Matrix Xo = svd.matrixU().leftCols(d) *
              svd.singularValues().head(d).asDiagonal();
  for (int i = 0; i < 9; ++i) Xo.row(i) /= Xo.row(i).norm();
  CHECK((X * X.transpose() - Xo * Xo.transpose()).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("pca_embed validates dimensions and flags degenerate rows") {
  const Matrix Z = random_matrix(6, 10, 19);
  CHECK_THROWS_AS(pca_embed(Z, 0), DomainError);
  CHECK_THROWS_AS(pca_embed(Z, 7), DomainError);

  Matrix flat = Z;
  flat.row(3).setConstant(2.0);  // centered to zero: no usable variation
  CHECK_THROWS_AS(pca_embed(flat, 2), DegenerateSeriesError);
}

TEST_CASE("naive_embed is the standardized series") {
  const Matrix Z = random_matrix(7, 18, 20);
  const Matrix X = naive_embed(Z);
  CHECK((X - standardize(Z)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((X * X.transpose() - correlation_matrix(Z)).cwiseAbs().maxCoeff() <
        1e-13);
}
