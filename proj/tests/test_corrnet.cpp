#include <cmath>
#include <vector>

#include <doctest.h>

#include "core/corrnet.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"
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

// Independent oracle: textbook two-pass Pearson correlation, scalar loops.
double pearson_oracle(const Matrix& Z, int i, int j) {
  const int T = static_cast<int>(Z.cols());
  double mi = 0, mj = 0;
  for (int t = 0; t < T; ++t) {
    mi += Z(i, t);
    mj += Z(j, t);
  }
  mi /= T;
  mj /= T;
  double num = 0, di = 0, dj = 0;
  for (int t = 0; t < T; ++t) {
    num += (Z(i, t) - mi) * (Z(j, t) - mj);
    di += (Z(i, t) - mi) * (Z(i, t) - mi);
    dj += (Z(j, t) - mj) * (Z(j, t) - mj);
  }
  return num / std::sqrt(di * dj);
}

}  // namespace

TEST_CASE("center_rows zeroes every row mean") {
  const Matrix Z = random_matrix(5, 17, 2);
  const Matrix C = center_rows(Z);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(C.row(i).mean()) < 1e-14);
  // Centering is idempotent up to rounding.
  CHECK((center_rows(C) - C).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("signal_power matches a hand computation") {
  Matrix Z(2, 4);
  Z << 1, 2, 3, 4,   // mean 2.5, squared deviations 2.25+.25+.25+2.25 = 5
      3, 3, 3, 3;    // constant: power exactly zero
  const Vector p = signal_power(Z);
  CHECK(p(0) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(p(1) == 0.0);
}

TEST_CASE("standardize produces centered unit-norm rows") {
  const Matrix Z = random_matrix(6, 29, 3);
  const Matrix S = standardize(Z);
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(S.row(i).mean()) < 1e-14);
    CHECK(S.row(i).norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("standardize rejects constant rows and names the offender") {
  Matrix Z = random_matrix(4, 10, 4);
  Z.row(2).setConstant(3.7);
  CHECK_THROWS_AS(standardize(Z), DegenerateSeriesError);
  try {
    standardize(Z);
  } catch (const DegenerateSeriesError& e) {
    CHECK(e.row() == 2);
  }
}

TEST_CASE("correlation_matrix matches the scalar Pearson oracle") {
  Rng shape(11);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(shape.below(19));   // up to 20
    const int T = 4 + static_cast<int>(shape.below(47));   // up to 50
    const Matrix Z = random_matrix(n, T, 500 + static_cast<std::uint64_t>(rep));
    const Matrix R = correlation_matrix(Z);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        worst = std::max(worst, std::abs(R(i, j) - pearson_oracle(Z, i, j)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("correlation_matrix postconditions") {
  const Matrix Z = random_matrix(8, 30, 12);
  const Matrix R = correlation_matrix(Z);
  // Exact symmetry and exact unit diagonal, not just approximate.
  CHECK((R - R.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 8; ++i) CHECK(R(i, i) == 1.0);
  CHECK(R.cwiseAbs().maxCoeff() <= 1.0);
}

TEST_CASE("affinely dependent rows correlate to exactly +/- 1") {
  Matrix Z = random_matrix(3, 25, 13);
  Z.row(1) = 2.0 * Z.row(0) + Vector::Constant(25, 3.0).transpose();
  Z.row(2) = -0.5 * Z.row(0) + Vector::Constant(25, 1.0).transpose();
  const Matrix R = correlation_matrix(Z);
  CHECK(R(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(R(0, 2) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(R.cwiseAbs().maxCoeff() <= 1.0);  // clamp keeps the unit interval
}

TEST_CASE("compute_gamma is the worst-case power-to-noise ratio") {
  Vector sigma2(3), nu(3);
  sigma2 << 4.0, 9.0, 1.0;
  nu << 2.0, 1.0, 4.0;
  CHECK(compute_gamma(sigma2, nu) == doctest::Approx(0.25).epsilon(1e-15));

  Vector bad = nu;
  bad(1) = 0.0;
  CHECK_THROWS_AS(compute_gamma(sigma2, bad), DomainError);
  Vector short_nu(2);
  short_nu << 1, 1;
  CHECK_THROWS_AS(compute_gamma(sigma2, short_nu), DomainError);
}

TEST_CASE("spectrum_summary returns the leading eigenvalues and kappa") {
  // Correlation-like matrix with known spectrum: diag in disguise.
  Matrix D = Matrix::Zero(4, 4);
  D.diagonal() << 5.0, 3.0, 2.0, 0.5;
  const SpectrumSummary s = spectrum_summary(D, 3);
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues(0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(s.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.eigenvalues(2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.kappa == doctest::Approx(2.5).epsilon(1e-12));

  CHECK_THROWS_AS(spectrum_summary(D, 0), DomainError);
  CHECK_THROWS_AS(spectrum_summary(D, 5), DomainError);
}

TEST_CASE("spectrum_summary flags vanishing eigenvalues") {
  // Rank-2 Gram matrix: asking for the top 3 must fail.
  const Matrix B = random_matrix(5, 2, 21);
  const Matrix G = B * B.transpose();
  CHECK_NOTHROW(spectrum_summary(G, 2));
  CHECK_THROWS_AS(spectrum_summary(G, 3), RankDeficientError);
}
