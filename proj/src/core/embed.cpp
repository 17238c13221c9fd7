#include "core/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "core/corrnet.hpp"
#include "core/errors.hpp"

namespace corrspec {

namespace {

/// Index of the largest-magnitude coordinate; magnitude ties resolve to the
/// lowest index so the convention is deterministic.
Index anchor_coordinate(const Vector& v) {
  Index best = 0;
  double best_mag = std::abs(v(0));
  for (Index i = 1; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return best;
}

}  // namespace

EigenDecomposition sym_eig(const Matrix& S) {
  const Index n = S.rows();
  if (S.cols() != n || n < 1) throw DomainError("sym_eig: matrix not square");
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw DomainError("sym_eig: matrix is not symmetric (max asymmetry " +
                      std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(S);
  if (solver.info() != Eigen::Success) {
    throw NumericError("sym_eig: eigensolver failed to converge");
  }
  const Vector& vals = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();

  // Fix signs before ordering: the final tie-break depends on coordinates.
  Matrix V = vecs;
  std::vector<Index> anchors(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const Index a = anchor_coordinate(V.col(j));
    if (V(a, j) < 0.0) V.col(j) = -V.col(j);
    anchors[static_cast<std::size_t>(j)] = a;
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(vals(a)), mb = std::abs(vals(b));
    if (ma != mb) return ma > mb;
    if (vals(a) != vals(b)) return vals(a) > vals(b);
    return anchors[static_cast<std::size_t>(a)] <
           anchors[static_cast<std::size_t>(b)];
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    out.values(j) = vals(order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = V.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

Embedding ase(const Matrix& A, int d) {
  const Index n = A.rows();
  if (d < 1 || d > n) {
    throw DomainError("ase: embedding dimension " + std::to_string(d) +
                      " outside 1.." + std::to_string(n));
  }
  const EigenDecomposition eig = sym_eig(A);

  Embedding out;
  out.eigenvalues = eig.values.head(d);
  out.tie_warning =
      d < n &&
      std::abs(std::abs(eig.values(d - 1)) - std::abs(eig.values(d))) <= 1e-12;
  out.X = eig.vectors.leftCols(d);
  for (int j = 0; j < d; ++j) {
    out.X.col(j) *= std::sqrt(std::abs(eig.values(j)));
  }
  return out;
}

Matrix pca_embed(const Matrix& Z, int d) {
  const Index n = Z.rows();
  const Index T = Z.cols();
  if (d < 1 || d > std::min(n, T)) {
    throw DomainError("pca_embed: dimension " + std::to_string(d) +
                      " outside 1..min(n, T) = 1.." +
                      std::to_string(std::min(n, T)));
  }
  const Matrix C = center_rows(Z);
  Eigen::BDCSVD<Matrix> svd(C, Eigen::ComputeThinU);
  const double scale = std::max(1.0, svd.singularValues()(0));

  Matrix X = svd.matrixU().leftCols(d);
  for (int j = 0; j < d; ++j) X.col(j) *= svd.singularValues()(j);
  for (Index i = 0; i < n; ++i) {
    const double norm = X.row(i).norm();
    if (norm <= 1e-12 * scale) {
      throw DegenerateSeriesError(
          static_cast<long>(i),
          "pca_embed: series " + std::to_string(i) +
              " has no energy in the leading " + std::to_string(d) +
              " components");
    }
    X.row(i) /= norm;
  }
  return X;
}

Matrix naive_embed(const Matrix& Z) { return standardize(Z); }

}  // namespace corrspec
