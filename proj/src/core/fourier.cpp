#include "core/fourier.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace corrspec {

namespace {

using cd = std::complex<double>;

/// Twiddle table: tw[j] = exp(-2*pi*i*j/T) for j = 0..T-1.
std::vector<cd> twiddles(int T) {
  std::vector<cd> tw(static_cast<std::size_t>(T));
  for (int j = 0; j < T; ++j) {
    tw[static_cast<std::size_t>(j)] =
        std::polar(1.0, -2.0 * std::numbers::pi * j / T);
  }
  return tw;
}

void check_length(int T) {
  if (T < 1) throw DomainError("fourier: series length must be positive");
}

}  // namespace

int pair_index(int k, int T) {
  check_length(T);
  if (k < 1 || k > T) {
    throw DomainError("pair_index: frequency index " + std::to_string(k) +
                      " outside 1.." + std::to_string(T));
  }
  return k == 1 ? 1 : T - k + 2;
}

CMatrix dft_matrix(int T) {
  check_length(T);
  const auto tw = twiddles(T);
  CMatrix W(T, T);
  for (int k = 0; k < T; ++k) {
    for (int t = 0; t < T; ++t) {
      W(k, t) = tw[(static_cast<std::size_t>(k) * t) % T];
    }
  }
  return W;
}

CMatrix dft_rows(const Matrix& Z) {
  const int T = static_cast<int>(Z.cols());
  check_length(T);
  const CMatrix W = dft_matrix(T);
  // Two real GEMMs are cheaper than promoting Z to complex.
  CMatrix F(Z.rows(), T);
  F.real() = Z * W.real();
  F.imag() = Z * W.imag();
  return F;
}

CVector dft(const Vector& series) {
  Matrix Z(1, series.size());
  Z.row(0) = series.transpose();
  return dft_rows(Z).row(0).transpose();
}

CMatrix idft_rows(const CMatrix& F) {
  const int T = static_cast<int>(F.cols());
  check_length(T);
  const CMatrix Winv = dft_matrix(T).conjugate() / static_cast<double>(T);
  return F * Winv;
}

CVector idft(const CVector& coeffs) {
  CMatrix F(1, coeffs.size());
  F.row(0) = coeffs.transpose();
  return idft_rows(F).row(0).transpose();
}

Matrix ConjugationPermutation::dense() const {
  check_length(T);
  Matrix K = Matrix::Zero(T, T);
  for (int k = 1; k <= T; ++k) K(k - 1, pair_index(k, T) - 1) = 1.0;
  return K;
}

ConjugationPermutation build_K(int T) {
  check_length(T);
  return ConjugationPermutation{T};
}

CMatrix sqrt_K(int T) {
  check_length(T);
  const cd diag_paired(0.5, 0.5);   // (1+i)/2
  const cd off_paired(0.5, -0.5);   // (1-i)/2
  CMatrix S = CMatrix::Zero(T, T);
  for (int k = 1; k <= T; ++k) {
    const int m = pair_index(k, T);
    if (m == k) {
      S(k - 1, k - 1) = cd(1.0, 0.0);
    } else if (k < m) {
      S(k - 1, k - 1) = diag_paired;
      S(m - 1, m - 1) = diag_paired;
      S(k - 1, m - 1) = off_paired;
      S(m - 1, k - 1) = off_paired;
    }
  }
  return S;
}

Matrix real_fourier_representation(const CMatrix& F) {
  const int T = static_cast<int>(F.cols());
  check_length(T);
  const Index n = F.rows();
  const cd diag_paired(0.5, 0.5);
  const cd off_paired(0.5, -0.5);

  // G = F * sqrt_K(T), exploiting that sqrt_K has at most two nonzeros per
  // column.  Column m = pair(k) of G mixes only columns k and m of F.
  CMatrix G(n, T);
  for (int k = 1; k <= T; ++k) {
    const int m = pair_index(k, T);
    if (m == k) {
      G.col(k - 1) = F.col(k - 1);
    } else if (k < m) {
      G.col(k - 1) = F.col(k - 1) * diag_paired + F.col(m - 1) * off_paired;
      G.col(m - 1) = F.col(k - 1) * off_paired + F.col(m - 1) * diag_paired;
    }
  }

  const double im_residual = G.imag().cwiseAbs().maxCoeff();
  if (!(im_residual <= 1e-8)) {
    throw IntegrityError(
        "real_fourier_representation: imaginary residual " +
        std::to_string(im_residual) +
        " exceeds 1e-8; coefficients are not those of real series");
  }
  return G.real();
}

Matrix latent_target(const Matrix& Ztilde) {
  const Index n = Ztilde.rows();
  const int T = static_cast<int>(Ztilde.cols());
  check_length(T);
  for (Index i = 0; i < n; ++i) {
    const double mean = Ztilde.row(i).mean();
    const double norm = Ztilde.row(i).norm();
    if (std::abs(mean) > 1e-8 || std::abs(norm - 1.0) > 1e-8) {
      throw DomainError("latent_target: row " + std::to_string(i) +
                        " is not standardized (mean " + std::to_string(mean) +
                        ", norm " + std::to_string(norm) + ")");
    }
  }
  return real_fourier_representation(dft_rows(Ztilde)) /
         std::sqrt(static_cast<double>(T));
}

}  // namespace corrspec
