#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <doctest.h>

#include "core/corrnet.hpp"
#include "core/embed.hpp"
#include "core/errors.hpp"
#include "core/synth.hpp"
#include "core/types.hpp"

using namespace corrspec;

TEST_CASE("structural_rank counts conjugate pairs and fixed frequencies") {
  CHECK(structural_rank({2, 3}, 8, 100) == 4);
  CHECK(structural_rank({5}, 8, 100) == 1);      // 5 is self-paired for T = 8
  CHECK(structural_rank({2, 5}, 8, 100) == 3);
  CHECK(structural_rank({2, 3, 4}, 8, 5) == 5);  // capped at n
  CHECK(structural_rank({}, 8, 100) == 0);
}

TEST_CASE("generate_signals draws a valid band-sparse instance") {
  SignalSpec spec;
  spec.n = 12;
  spec.T = 32;
  spec.d0 = 5;
  spec.seed = 7;
  const Signals sig = generate_signals(spec);

  REQUIRE(sig.Z.rows() == 12);
  REQUIRE(sig.Z.cols() == 32);
  REQUIRE(sig.support.size() == 5);
  CHECK(std::is_sorted(sig.support.begin(), sig.support.end()));
  CHECK(std::set<int>(sig.support.begin(), sig.support.end()).size() == 5);
  for (int k : sig.support) {
    CHECK(k >= 2);
    CHECK(k <= 16);
  }
  CHECK(sig.rank == 10);

  // The constant frequency is excluded, so rows have exactly zero mean.
  for (int i = 0; i < 12; ++i) CHECK(std::abs(sig.Z.row(i).mean()) < 1e-13);
}

TEST_CASE("generate_signals is bit-deterministic in the spec") {
  SignalSpec spec;
  spec.n = 6;
  spec.T = 24;
  spec.d0 = 4;
  spec.seed = 99;
  const Signals a = generate_signals(spec);
  const Signals b = generate_signals(spec);
  CHECK(a.support == b.support);
  CHECK((a.Z - b.Z).cwiseAbs().maxCoeff() == 0.0);

  spec.seed = 100;
  const Signals c = generate_signals(spec);
  CHECK((a.Z - c.Z).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("frobenius normalization scales the whole matrix to sqrt(n)") {
  SignalSpec spec;
  spec.n = 9;
  spec.T = 40;
  spec.d0 = 6;
  spec.seed = 3;
  spec.normalization = Normalization::FrobeniusSqrtN;
  const Signals sig = generate_signals(spec);
  CHECK(sig.Z.norm() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("rows_standardized normalization yields well-conditioned rows") {
  SignalSpec spec;
  spec.n = 30;
  spec.T = 64;
  spec.d0 = 4;
  spec.seed = 17;
  spec.normalization = Normalization::RowsStandardized;
  const Signals sig = generate_signals(spec);
  for (int i = 0; i < spec.n; ++i) {
    CHECK(std::abs(sig.Z.row(i).mean()) < 1e-12);
    CHECK(sig.Z.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  const SpectrumSummary s =
      spectrum_summary(correlation_matrix(sig.Z), sig.rank);
  CHECK(s.kappa <= 5.0);
}

TEST_CASE("sampled supports always carry full even rank") {
  // The sampling pool {2..floor(T/2)} never contains the self-paired
  // frequency, so the structural rank of a drawn instance is exactly 2 d0.
  for (int T : {8, 10, 12, 20}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SignalSpec spec;
      spec.n = 40;
      spec.T = T;
      spec.d0 = 2;
      spec.seed = seed;
      const Signals sig = generate_signals(spec);
      CHECK(sig.rank == 4);
      // No drawn frequency may be its own conjugate partner.
      for (int k : sig.support) CHECK((T - k + 2) != k);
    }
  }
}

TEST_CASE("the drawn signal matrix has its structural rank numerically") {
  SignalSpec spec;
  spec.n = 20;
  spec.T = 30;
  spec.d0 = 3;
  spec.seed = 5;
  const Signals sig = generate_signals(spec);
  REQUIRE(sig.rank == 6);
  const Matrix R = correlation_matrix(sig.Z);
  const EigenDecomposition eig = sym_eig(R);
  // Eigenvalues are ordered by magnitude: position rank-1 is well above the
  // noise floor, position rank is at it.
  CHECK(std::abs(eig.values(5)) > 1e-6);
  CHECK(std::abs(eig.values(6)) < 1e-8);
}

TEST_CASE("generate_signals validates its specification") {
  SignalSpec spec;
  spec.n = 4;
  spec.T = 16;
  spec.d0 = 2;
  CHECK_NOTHROW(generate_signals(spec));
  spec.n = 0;
  CHECK_THROWS_AS(generate_signals(spec), DomainError);
  spec.n = 4;
  spec.T = 3;
  CHECK_THROWS_AS(generate_signals(spec), DomainError);
  spec.T = 16;
  spec.d0 = 0;
  CHECK_THROWS_AS(generate_signals(spec), DomainError);
  spec.d0 = 8;  // pool {2..8} has 7 entries; 8 exceeds floor(T/2) - 1 = 7
  CHECK_THROWS_AS(generate_signals(spec), DomainError);
  spec.d0 = 7;
  CHECK_NOTHROW(generate_signals(spec));
}

TEST_CASE("generate_noise draws the documented per-row variances") {
  SignalSpec sspec;
  sspec.n = 10;
  sspec.T = 50;
  sspec.d0 = 4;
  sspec.seed = 21;
  const Signals sig = generate_signals(sspec);

  NoiseSpec nspec;
  nspec.nu = 1e-3;
  nspec.seed = 31;

  SUBCASE("scaled by row norm") {
    nspec.row_scaling = RowScaling::ScaledByRowNorm;
    const Noise noise = generate_noise(sig.Z, nspec);
    REQUIRE(noise.nu_vec.size() == 10);
    for (int i = 0; i < 10; ++i) {
      // The row-norm reduction may sum in a different order than this row
      // expression, so allow ULP-level slack.
      CHECK(noise.nu_vec(i) ==
            doctest::Approx(1e-3 * sig.Z.row(i).squaredNorm())
                .epsilon(1e-14));
    }
    CHECK(noise.inflated_row == -1);
  }

  SUBCASE("constant") {
    nspec.row_scaling = RowScaling::Constant;
    const Noise noise = generate_noise(sig.Z, nspec);
    for (int i = 0; i < 10; ++i) CHECK(noise.nu_vec(i) == 1e-3);
  }

  SUBCASE("alpha inflates exactly one uniformly chosen row") {
    nspec.row_scaling = RowScaling::Constant;
    nspec.alpha = 50.0;
    const Noise noise = generate_noise(sig.Z, nspec);
    REQUIRE(noise.inflated_row >= 0);
    REQUIRE(noise.inflated_row < 10);
    int inflated_count = 0;
    for (int i = 0; i < 10; ++i) {
      if (noise.nu_vec(i) == 1e-3 * 50.0) {
        ++inflated_count;
        CHECK(i == noise.inflated_row);
      } else {
        CHECK(noise.nu_vec(i) == 1e-3);
      }
    }
    CHECK(inflated_count == 1);
  }

  SUBCASE("alpha exactly one is bitwise the same as no inflation") {
    nspec.alpha = 1.0;
    const Noise base = generate_noise(sig.Z, nspec);
    NoiseSpec unity = nspec;
    unity.alpha = 1.0;
    const Noise again = generate_noise(sig.Z, unity);
    CHECK((base.N - again.N).cwiseAbs().maxCoeff() == 0.0);
    CHECK(base.inflated_row == -1);
  }
}

TEST_CASE("nu of zero gives an exactly zero noise matrix") {
  Matrix Z = Matrix::Random(5, 20);
  NoiseSpec nspec;
  nspec.nu = 0.0;
  nspec.seed = 8;
  const Noise noise = generate_noise(Z, nspec);
  CHECK(noise.N.cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 5; ++i) CHECK(noise.nu_vec(i) == 0.0);
}

TEST_CASE("noise samples realize the requested variance") {
  Matrix Z = Matrix::Ones(2, 100000);
  NoiseSpec nspec;
  nspec.nu = 0.25;
  nspec.row_scaling = RowScaling::Constant;
  nspec.seed = 77;

  SUBCASE("gaussian") {
    nspec.family = NoiseFamily::Gaussian;
    const Noise noise = generate_noise(Z, nspec);
    for (int i = 0; i < 2; ++i) {
      const double var = noise.N.row(i).squaredNorm() / 100000.0;
      CHECK(std::abs(var - 0.25) < 0.01);
    }
  }
  SUBCASE("laplacian") {
    nspec.family = NoiseFamily::Laplacian;
    const Noise noise = generate_noise(Z, nspec);
    for (int i = 0; i < 2; ++i) {
      const double var = noise.N.row(i).squaredNorm() / 100000.0;
      CHECK(std::abs(var - 0.25) < 0.01);
      // Laplacian excess kurtosis is 3 (vs 0 for a Gaussian): check the
      // fourth moment to make sure the family actually differs.
      const double m4 =
          noise.N.row(i).array().pow(4).sum() / 100000.0 / (var * var);
      CHECK(m4 > 4.5);
    }
  }
}

TEST_CASE("generate_noise is deterministic and validates its spec") {
  Matrix Z = Matrix::Random(4, 30);
  NoiseSpec nspec;
  nspec.nu = 1e-2;
  nspec.seed = 5;
  const Noise a = generate_noise(Z, nspec);
  const Noise b = generate_noise(Z, nspec);
  CHECK((a.N - b.N).cwiseAbs().maxCoeff() == 0.0);

  nspec.nu = -1.0;
  CHECK_THROWS_AS(generate_noise(Z, nspec), DomainError);
  nspec.nu = 1e-2;
  nspec.alpha = 0.5;
  CHECK_THROWS_AS(generate_noise(Z, nspec), DomainError);
  nspec.alpha = 1.0;
  CHECK_THROWS_AS(generate_noise(Matrix(0, 0), nspec), DomainError);
}
