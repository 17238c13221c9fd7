#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/corrnet.hpp"
#include "core/errors.hpp"
#include "core/fourier.hpp"
#include "core/rng.hpp"

namespace corrspec {

namespace {

using cd = std::complex<double>;

void validate(const SignalSpec& spec) {
  if (spec.n < 1) throw DomainError("generate_signals: n must be >= 1");
  if (spec.T < 4) throw DomainError("generate_signals: T must be >= 4");
  const int pool = spec.T / 2 - 1;  // size of {2, ..., floor(T/2)}
  if (spec.d0 < 1 || spec.d0 > pool) {
    throw DomainError("generate_signals: d0 = " + std::to_string(spec.d0) +
                      " outside 1.." + std::to_string(pool) +
                      " (need d0 < T/2 distinct frequencies for T = " +
                      std::to_string(spec.T) + ")");
  }
}

std::vector<int> draw_support(Rng& rng, int T, int d0) {
  std::vector<int> pool(static_cast<std::size_t>(T / 2 - 1));
  std::iota(pool.begin(), pool.end(), 2);
  // Partial Fisher-Yates: after d0 steps the first d0 entries are a uniform
  // sample without replacement.
  for (int j = 0; j < d0; ++j) {
    const auto r = static_cast<std::size_t>(
        rng.below(static_cast<std::uint64_t>(pool.size() - j)));
    std::swap(pool[static_cast<std::size_t>(j)],
              pool[static_cast<std::size_t>(j) + r]);
  }
  std::vector<int> support(pool.begin(), pool.begin() + d0);
  std::sort(support.begin(), support.end());
  return support;
}

Matrix synthesize(Rng& rng, int n, int T, const std::vector<int>& support) {
  CMatrix F = CMatrix::Zero(n, T);
  for (int k : support) {
    const int m = pair_index(k, T);
    const bool self_paired = (m == k);
    for (int i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      // A frequency that is its own conjugate partner must carry a real
      // coefficient for the series to be real.  (The sampled pool
      // {2..floor(T/2)} cannot contain such an index, but direct
      // construction paths may.)
      F(i, k - 1) = self_paired ? cd(re, 0.0) : cd(re, im);
      if (!self_paired) F(i, m - 1) = std::conj(F(i, k - 1));
    }
  }
  const CMatrix Zc = idft_rows(F);
  const double im_residual = Zc.imag().cwiseAbs().maxCoeff();
  if (!(im_residual <= 1e-10)) {
    throw IntegrityError("generate_signals: imaginary residual " +
                         std::to_string(im_residual) +
                         " after inverse transform exceeds 1e-10");
  }
  return Zc.real();
}

}  // namespace

int structural_rank(const std::vector<int>& support, int T, int n) {
  int rank = 0;
  for (int k : support) rank += (pair_index(k, T) == k) ? 1 : 2;
  return std::min(rank, n);
}

Signals generate_signals(const SignalSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);

  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<int> support = draw_support(rng, spec.T, spec.d0);
    Matrix Z = synthesize(rng, spec.n, spec.T, support);
    const int rank = structural_rank(support, spec.T, spec.n);

    if (spec.normalization == Normalization::FrobeniusSqrtN) {
      Z *= std::sqrt(static_cast<double>(spec.n)) / Z.norm();
      return Signals{std::move(Z), std::move(support), rank};
    }

    // RowsStandardized: accept only draws whose correlation spectrum is
    // well conditioned at the structural rank, redrawing otherwise.
    Matrix Zs = standardize(Z);
    const Matrix R = correlation_matrix(Zs);
    const SpectrumSummary s = spectrum_summary(R, rank);
    if (s.kappa <= 5.0) {
      return Signals{std::move(Zs), std::move(support), rank};
    }
  }
  throw NumericError(
      "generate_signals: no draw with condition number <= 5 in " +
      std::to_string(kMaxAttempts) + " attempts");
}

Noise generate_noise(const Matrix& Zstar, const NoiseSpec& spec) {
  const Index n = Zstar.rows();
  const Index T = Zstar.cols();
  if (n < 1 || T < 1) throw DomainError("generate_noise: empty signal matrix");
  if (spec.nu < 0.0) throw DomainError("generate_noise: nu must be >= 0");
  if (spec.alpha < 1.0) throw DomainError("generate_noise: alpha must be >= 1");

  Rng rng(spec.seed);

  Vector nu_vec(n);
  if (spec.row_scaling == RowScaling::ScaledByRowNorm) {
    nu_vec = spec.nu * Zstar.rowwise().squaredNorm();
  } else {
    nu_vec.setConstant(spec.nu);
  }

  long inflated = -1;
  if (spec.alpha > 1.0) {
    inflated = static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
    nu_vec(inflated) *= spec.alpha;
  }

  Matrix N = Matrix::Zero(n, T);
  if (spec.nu > 0.0) {
    for (Index i = 0; i < n; ++i) {
      if (spec.family == NoiseFamily::Gaussian) {
        const double sd = std::sqrt(nu_vec(i));
        for (Index t = 0; t < T; ++t) N(i, t) = sd * rng.normal();
      } else {
        const double b = std::sqrt(nu_vec(i) / 2.0);
        for (Index t = 0; t < T; ++t) N(i, t) = rng.laplace(b);
      }
    }
  }
  return Noise{std::move(N), std::move(nu_vec), inflated};
}

}  // namespace corrspec
