// SPDX-License-Identifier: Apache-2.0
#include "wsr/rmt.hpp"

#include <cmath>

namespace wsr {

MatrixXcd sample_cue(int N, std::mt19937_64& rng) {
  if (N < 2) throw std::invalid_argument("sample_cue: N >= 2");
  std::normal_distribution<Real> gauss(0.0, 1.0);
  MatrixXd A(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) A(i, j) = gauss(rng);
  const MatrixXd sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym);
  std::uniform_real_distribution<Real> uphase(0.0, two_pi);
  MatrixXcd U = es.eigenvectors().cast<Complex>();
  for (int j = 0; j < N; ++j) U.col(j) *= std::exp(Complex(0, uphase(rng)));
  return U;
}

MatrixXcd embed_truncated(const MatrixXcd& W, int M) {
  const int N = W.rows();
  if (M < 1 || M >= N) throw std::invalid_argument("embed_truncated: need 1 <= M < N");
  MatrixXcd B = MatrixXcd::Zero(N + M, N + M);
  B.block(M, 0, N, N) = W;
  return B;
}

std::vector<Real> rmt_resonances(const RmtEnsembleConfig& cfg) {
  std::vector<Real> widths;
  widths.reserve(std::size_t(cfg.n_matrices) * (cfg.N - cfg.M));
  for (int m = 0; m < cfg.n_matrices; ++m) {
    std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ull * (m + 1));
    const MatrixXcd B = embed_truncated(sample_cue(cfg.N, rng), cfg.M);
    const VectorXcd ev = B.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
      const Real mod = std::abs(ev(i));
      // structural zeros are defective (Jordan pairs) and split numerically
      // to ~sqrt(machine eps)
      if (mod < 1e-6) continue;
      if (mod > 1.0 + 1e-10) throw NumericalError("rmt_resonances: eigenvalue outside unit disk");
      widths.push_back(cfg.N * (-std::log(std::min(mod, 1.0))));
    }
  }
  return widths;
}

Real width_distribution_theory(Real gamma_s, int M) {
  if (M < 1) throw std::invalid_argument("width_distribution_theory: M >= 1");
  if (!(gamma_s > 0)) return 0.0;
  const Real x = gamma_s;
  // f(x) = (1 - e^{-2x}) / 2x; the M-th derivative in closed form for
  // moderate/large x, by the alternating series for small x.
  Real fM;
  if (x > 1.0) {
    Real lead = 1.0;  // M! x^{-M-1} (-1)^M / 2, assembled below
    for (int j = 1; j <= M; ++j) lead *= j;
    lead *= 0.5 * std::pow(x, -Real(M + 1)) * ((M % 2) ? -1.0 : 1.0);
    Real corr = 0.0;
    Real binom = 1.0;
    for (int j = 0; j <= M; ++j) {
      Real jfact = 1.0;
      for (int i = 1; i <= j; ++i) jfact *= i;
      corr += binom * ((j % 2) ? -1.0 : 1.0) * jfact * std::pow(x, -Real(j + 1)) *
              std::pow(-2.0, Real(M - j));
      binom *= Real(M - j) / Real(j + 1);
    }
    fM = lead - 0.5 * std::exp(-2.0 * x) * corr;
  } else {
    // f(x) = sum_k (-1)^k (2x)^k / (k+1)!; term-wise M-th derivative.
    Real sum = 0.0;
    for (int k = M; k < M + 80; ++k) {
      Real term = ((k % 2) ? -1.0 : 1.0) * std::pow(2.0, k);
      for (int i = k - M + 1; i <= k; ++i) term *= i;     // k!/(k-M)!
      for (int i = 1; i <= k + 1; ++i) term /= i;         // 1/(k+1)!
      term *= std::pow(x, Real(k - M));
      sum += term;
      if (std::abs(term) < 1e-18 * std::max(std::abs(sum), 1e-30) && k > M + 8) break;
    }
    fM = sum;
  }
  Real prefactor = ((M % 2) ? -1.0 : 1.0);
  for (int i = 1; i <= M - 1; ++i) prefactor /= i;
  return prefactor * std::pow(x, Real(M - 1)) * fM;
}

Real partial_delay_distribution(Real tau_s, int M) {
  if (M < 1) throw std::invalid_argument("partial_delay_distribution: M >= 1");
  if (!(tau_s > 0)) return 0.0;
  Real mfact = 1.0;
  for (int i = 2; i <= M; ++i) mfact *= i;
  return std::pow(tau_s, -Real(M + 2)) * std::exp(-1.0 / tau_s) / mfact;
}

std::vector<Real> partial_delay_sum_distribution(const std::vector<Real>& tau_grid, int M) {
  if (tau_grid.size() < 2) throw std::invalid_argument("partial_delay_sum_distribution: bad grid");
  // Dense uniform work grid, M-1 direct convolutions, then sample.
  const Real hi = tau_grid.back() * 1.05;
  const int G = 4096;
  const Real d = hi / G;
  std::vector<Real> base(G), acc;
  for (int i = 0; i < G; ++i) base[i] = partial_delay_distribution((i + 0.5) * d, M);
  acc = base;
  for (int pass = 1; pass < M; ++pass) {
    std::vector<Real> next(G, 0.0);
    for (int i = 0; i < G; ++i) {
      Real s = 0.0;
      for (int j = 0; j <= i; ++j) s += acc[j] * base[i - j];
      next[i] = s * d;
    }
    acc.swap(next);
  }
  std::vector<Real> out(tau_grid.size());
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    const int idx = std::min(G - 1, std::max(0, int(tau_grid[i] / d)));
    out[i] = acc[idx];
  }
  return out;
}

Real rmt_delay_time(const MatrixXcd& B, Real E, int M) {
  const int dim = B.rows();
  MatrixXcd rhs = MatrixXcd::Zero(dim, M);
  rhs.block(0, 0, M, M) = MatrixXcd::Identity(M, M);
  const MatrixXcd A = B - std::exp(Complex(0, -E)) * MatrixXcd::Identity(dim, dim);
  Eigen::PartialPivLU<MatrixXcd> lu(A);
  const MatrixXcd Y = lu.solve(rhs);
  return Y.squaredNorm() / M;
}

std::vector<Real> rmt_delay_samples(const RmtEnsembleConfig& cfg, int n_energies,
                                    Real pole_guard) {
  std::vector<Real> taus;
  taus.reserve(std::size_t(cfg.n_matrices) * n_energies);
  for (int m = 0; m < cfg.n_matrices; ++m) {
    std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ull * (m + 1));
    const MatrixXcd B = embed_truncated(sample_cue(cfg.N, rng), cfg.M);
    const VectorXcd ev = B.eigenvalues();
    for (int e = 0; e < n_energies; ++e) {
      const Real E = two_pi * (e + 0.5) / n_energies;
      bool near_pole = false;
      const Complex z = std::exp(Complex(0, -E));
      for (int i = 0; i < ev.size() && !near_pole; ++i)
        near_pole = std::abs(ev(i) - z) < pole_guard;
      if (near_pole) continue;
      taus.push_back(rmt_delay_time(B, E, cfg.M) / cfg.N);
    }
  }
  return taus;
}

Real rmt_survival(Real t, Real gamma_w, Real q, Real hbar) {
  if (t < 0) throw std::invalid_argument("rmt_survival: t >= 0");
  if (q <= 0) throw std::invalid_argument("rmt_survival: q > 0");
  return std::exp(-q * std::log1p(gamma_w * t / (hbar * q)));
}

}  // namespace wsr
