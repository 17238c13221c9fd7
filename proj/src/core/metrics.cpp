#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/corrnet.hpp"
#include "core/errors.hpp"

namespace corrspec {

namespace {

struct AlignCore {
  Matrix w_top;  ///< first d rows of the optimal p x p rotation (d x p)
  double residual_2inf = 0.0;
  double residual_fro = 0.0;
};

/// Solves the padded Procrustes problem without materializing the full
/// rotation.  Only the first d rows of W act on [Y | 0], and they are
/// U V^T from the thin SVD of the d x p matrix Y^T target.
AlignCore align_core(const Matrix& Y, const Matrix& target) {
  if (Y.rows() != target.rows()) {
    throw DomainError("procrustes: row count mismatch (" +
                      std::to_string(Y.rows()) + " vs " +
                      std::to_string(target.rows()) + ")");
  }
  if (Y.cols() < 1 || target.cols() < 1) {
    throw DomainError("procrustes: matrices must have at least one column");
  }
  if (Y.cols() > target.cols()) {
    throw DomainError("procrustes: estimate has more columns (" +
                      std::to_string(Y.cols()) + ") than target (" +
                      std::to_string(target.cols()) + ")");
  }
  const Matrix C = Y.transpose() * target;
  Eigen::BDCSVD<Matrix> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
  AlignCore out;
  out.w_top = svd.matrixU() * svd.matrixV().transpose();
  const Matrix diff = Y * out.w_top - target;
  out.residual_2inf = diff.rowwise().norm().maxCoeff();
  out.residual_fro = diff.norm();
  return out;
}

}  // namespace

Alignment procrustes_align(const Matrix& Y, const Matrix& target) {
  AlignCore core = align_core(Y, target);
  const Index d = Y.cols();
  const Index p = target.cols();

  Alignment out;
  out.residual_2inf = core.residual_2inf;
  out.residual_fro = core.residual_fro;
  if (d == p) {
    out.rotation = std::move(core.w_top);
    return out;
  }
  // Complete the d orthonormal rows to a full orthogonal matrix: the
  // trailing columns of a full QR of w_top^T span the orthogonal complement.
  Eigen::HouseholderQR<Matrix> qr(core.w_top.transpose());
  const Matrix Q = qr.householderQ();
  out.rotation.resize(p, p);
  out.rotation.topRows(d) = core.w_top;
  out.rotation.bottomRows(p - d) = Q.rightCols(p - d).transpose();
  return out;
}

double two_inf_norm(const Matrix& M) {
  if (M.rows() < 1 || M.cols() < 1) {
    throw DomainError("two_inf_norm: matrix must be nonempty");
  }
  return M.rowwise().norm().maxCoeff();
}

double embedding_error(const Matrix& estimate, const Matrix& target) {
  return align_core(estimate, target).residual_2inf;
}

double sin_theta_distance(const Matrix& U, const Matrix& Ustar) {
  if (U.rows() != Ustar.rows() || U.cols() != Ustar.cols()) {
    throw DomainError("sin_theta_distance: shape mismatch");
  }
  if (U.cols() < 1) throw DomainError("sin_theta_distance: empty frames");
  const auto check_frame = [](const Matrix& F, const char* name) {
    const Matrix G = F.transpose() * F;
    const double dev =
        (G - Matrix::Identity(F.cols(), F.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-8) {
      throw DomainError(std::string("sin_theta_distance: ") + name +
                        " is not orthonormal (deviation " +
                        std::to_string(dev) + ")");
    }
  };
  check_frame(U, "first frame");
  check_frame(Ustar, "second frame");

  // ||(I - U U^T) Ustar||_2 without forming the n x n projector.
  const Matrix M = Ustar - U * (U.transpose() * Ustar);
  Eigen::BDCSVD<Matrix> svd(M);
  const double s = svd.singularValues()(0);
  return std::clamp(s, 0.0, 1.0);
}

double sigma_ratio_diagnostic(const Matrix& Z, const Matrix& Zstar) {
  if (Z.rows() != Zstar.rows() || Z.cols() != Zstar.cols()) {
    throw DomainError("sigma_ratio_diagnostic: shape mismatch");
  }
  const Vector p_obs = signal_power(Z);
  const Vector p_true = signal_power(Zstar);
  double worst = 0.0;
  for (Index i = 0; i < p_obs.size(); ++i) {
    if (!(p_obs(i) > 0.0) || !(p_true(i) > 0.0)) {
      throw DegenerateSeriesError(
          static_cast<long>(i), "sigma_ratio_diagnostic: series " +
                                    std::to_string(i) +
                                    " has nonpositive power");
    }
    const double r = std::sqrt(p_obs(i) / p_true(i));
    worst = std::max({worst, std::abs(r - 1.0), std::abs(1.0 / r - 1.0)});
  }
  return worst;
}

}  // namespace corrspec
