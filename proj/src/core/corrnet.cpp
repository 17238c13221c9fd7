#include "core/corrnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace corrspec {

namespace {

void check_nonempty(const Matrix& Z, const char* where) {
  if (Z.rows() < 1 || Z.cols() < 1) {
    throw DomainError(std::string(where) + ": matrix must be nonempty");
  }
}

}  // namespace

Matrix center_rows(const Matrix& Z) {
  check_nonempty(Z, "center_rows");
  return Z.colwise() - Z.rowwise().mean();
}

Vector signal_power(const Matrix& Z) {
  check_nonempty(Z, "signal_power");
  const Matrix C = center_rows(Z);
  return C.rowwise().squaredNorm() / static_cast<double>(Z.cols());
}

Matrix standardize(const Matrix& Z) {
  check_nonempty(Z, "standardize");
  Matrix C = center_rows(Z);
  for (Index i = 0; i < C.rows(); ++i) {
    const double cnorm = C.row(i).norm();
    const double rnorm = Z.row(i).norm();
    if (cnorm <= 1e-12 * std::max(1.0, rnorm)) {
      throw DegenerateSeriesError(
          static_cast<long>(i),
          "standardize: series " + std::to_string(i) +
              " has no variation (centered norm " + std::to_string(cnorm) +
              ")");
    }
    C.row(i) /= cnorm;
  }
  return C;
}

Matrix correlation_matrix(const Matrix& Z) {
  const Matrix Zt = standardize(Z);
  const Index n = Zt.rows();

  // Rank-update fills the lower triangle only; mirroring it afterwards makes
  // R exactly symmetric, which downstream spectral code relies on.
  Matrix R = Matrix::Zero(n, n);
  R.selfadjointView<Eigen::Lower>().rankUpdate(Zt);
  R.triangularView<Eigen::StrictlyUpper>() =
      R.triangularView<Eigen::StrictlyLower>().transpose();

  double worst = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(R(i, j));
      if (a > 1.0) {
        worst = std::max(worst, a - 1.0);
        if (a - 1.0 <= 1e-9) R(i, j) = R(i, j) > 0.0 ? 1.0 : -1.0;
      }
    }
  }
  if (worst > 1e-9) {
    throw IntegrityError(
        "correlation_matrix: entry exceeds unit interval by " +
        std::to_string(worst));
  }
  for (Index i = 0; i < n; ++i) {
    if (std::abs(R(i, i) - 1.0) > 1e-12) {
      throw IntegrityError("correlation_matrix: diagonal entry " +
                           std::to_string(i) + " deviates from 1 by " +
                           std::to_string(std::abs(R(i, i) - 1.0)));
    }
    R(i, i) = 1.0;
  }
  return R;
}

double compute_gamma(const Vector& sigma2, const Vector& nu) {
  if (sigma2.size() != nu.size()) {
    throw DomainError("compute_gamma: size mismatch");
  }
  if (sigma2.size() == 0) throw DomainError("compute_gamma: empty input");
  double gamma = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < nu.size(); ++i) {
    if (!(nu(i) > 0.0)) {
      throw DomainError("compute_gamma: noise variance at index " +
                        std::to_string(i) + " is not positive");
    }
    gamma = std::min(gamma, sigma2(i) / nu(i));
  }
  return gamma;
}

SpectrumSummary spectrum_summary(const Matrix& R, int d) {
  const Index n = R.rows();
  if (R.cols() != n) throw DomainError("spectrum_summary: matrix not square");
  if (d < 1 || d > n) {
    throw DomainError("spectrum_summary: d = " + std::to_string(d) +
                      " outside 1.." + std::to_string(n));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(R, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("spectrum_summary: eigensolver failed");
  }
  const Vector all = solver.eigenvalues();  // ascending
  Vector top(d);
  for (int k = 0; k < d; ++k) top(k) = all(n - 1 - k);
  if (!(top(d - 1) > 1e-10)) {
    throw RankDeficientError(
        "spectrum_summary: eigenvalue " + std::to_string(d) + " is " +
        std::to_string(top(d - 1)) + ", at or below the 1e-10 rank tolerance");
  }
  return SpectrumSummary{top, top(0) / top(d - 1)};
}

}  // namespace corrspec
