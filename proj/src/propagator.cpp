// SPDX-License-Identifier: Apache-2.0
#include "wsr/propagator.hpp"

#include <cmath>

namespace wsr {

namespace {

// Exact drift exponent for plane wave with momentum hk over [t0, t1]:
// (1/hbar) * integral of (hk - F t)^2 / 2 dt.
Real drift_phase(Real hk, Real F, Real t0, Real t1, Real hbar) {
  const Real a = hk - F * t0;
  const Real b = hk - F * t1;
  return (a * a * a - b * b * b) / (6.0 * F * hbar);
}

Real drive_shift(const SystemParams& params, Real t) {
  return params.eps > 0 ? params.eps * std::cos(params.omega * t) : 0.0;
}

// Applies exp(-i/hbar * (Kbar + V(t_mid) dt)) to every column of M, where
// Kbar is the exact drift integral over [t0, t1].
void apply_slice_eigen(MatrixXcd& M, const SystemParams& params, const PeriodicPotential& V,
                       Real kappa, int N, Real t0, Real t1) {
  const int dim = 2 * N + 1;
  const Real dt = t1 - t0;
  MatrixXcd gen = V.toeplitz_block(N, drive_shift(params, 0.5 * (t0 + t1))) * dt;
  for (int i = 0; i < dim; ++i) {
    const Real hk = params.hbar * (i - N + kappa);
    gen(i, i) += drift_phase(hk, params.F, t0, t1, params.hbar) * params.hbar;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gen);
  const VectorXcd phases =
      (Complex(0, -1) / params.hbar * es.eigenvalues().array()).exp().matrix();
  M = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * M;
}

// Strang split: exact half drift, Galerkin kick, exact half drift.  The
// kick exponential is computed once: a drive shift s conjugates the
// potential block by diag(e^{i n s}), so
//   exp(-i V(.+s) dt / hbar) = D_s exp(-i V dt / hbar) D_s^dag.
struct SplitKick {
  MatrixXcd K0;  // exp(-i V_toeplitz dt / hbar)
  bool driven = false;

  SplitKick(const PeriodicPotential& V, const SystemParams& params, int N, Real dt) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(V.toeplitz_block(N));
    const VectorXcd phases =
        (Complex(0, -dt / params.hbar) * es.eigenvalues().array()).exp().matrix();
    K0 = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    driven = params.eps > 0;
  }

  void apply(MatrixXcd& M, const SystemParams& params, Real kappa, int N, Real t0,
             Real t1) const {
    const int dim = 2 * N + 1;
    const Real tm = 0.5 * (t0 + t1);
    VectorXcd drift1(dim), drift2(dim);
    for (int i = 0; i < dim; ++i) {
      const Real hk = params.hbar * (i - N + kappa);
      drift1(i) = std::exp(Complex(0, -drift_phase(hk, params.F, t0, tm, params.hbar)));
      drift2(i) = std::exp(Complex(0, -drift_phase(hk, params.F, tm, t1, params.hbar)));
    }
    M = drift1.asDiagonal() * M;
    if (driven) {
      const Real s = drive_shift(params, tm);
      VectorXcd D(dim);
      for (int i = 0; i < dim; ++i) D(i) = std::exp(Complex(0, (i - N) * s));
      M = D.conjugate().asDiagonal() * M;
      M = K0 * M;
      M = D.asDiagonal() * M;
    } else {
      M = K0 * M;
    }
    M = drift2.asDiagonal() * M;
  }
};

void run_slices(MatrixXcd& M, const SystemParams& params, const PeriodicPotential& V, Real kappa,
                int N, Real t0, Real t1, int steps, SliceMode mode) {
  const Real dt = (t1 - t0) / steps;
  if (mode == SliceMode::midpoint_eigen) {
    for (int j = 0; j < steps; ++j) {
      const Real a = t0 + j * dt;
      apply_slice_eigen(M, params, V, kappa, N, a, a + dt);
    }
    return;
  }
  const SplitKick kick(V, params, N, dt);
  for (int j = 0; j < steps; ++j) {
    const Real a = t0 + j * dt;
    kick.apply(M, params, kappa, N, a, a + dt);
  }
}

}  // namespace

Real EvolutionMatrix::unitarity_defect() const {
  const MatrixXcd g = U.adjoint() * U - MatrixXcd::Identity(U.rows(), U.cols());
  return g.cwiseAbs().maxCoeff();
}

Complex free_diagonal_phase(int m, Real kappa, const SystemParams& params) {
  const Real a = kappa + m - params.q;
  const Real b = kappa + m;
  const Real phase = params.hbar * params.hbar * (a * a * a - b * b * b) / (6.0 * params.F);
  return std::exp(Complex(0, phase));
}

EvolutionMatrix build_evolution_matrix(const SystemParams& params, const PeriodicPotential& V,
                                       Real kappa, int N, int jmax, SliceMode mode) {
  params.validate();
  if (params.F <= 0) throw std::invalid_argument("build_evolution_matrix: F must be positive");
  if (jmax < 1) throw std::invalid_argument("build_evolution_matrix: jmax >= 1");
  if (V.fourier_order() > N)
    throw std::invalid_argument("build_evolution_matrix: basis smaller than potential Fourier order");
  EvolutionMatrix out;
  out.params = params;
  out.kappa = kappa;
  out.N = N;
  out.jmax = jmax;
  out.U = MatrixXcd::Identity(2 * N + 1, 2 * N + 1);
  run_slices(out.U, params, V, kappa, N, 0.0, params.common_period(), jmax, mode);
  return out;
}

VectorXcd propagate_state(const VectorXcd& state, const SystemParams& params,
                          const PeriodicPotential& V, Real kappa, Real t0, Real t1, int steps,
                          SliceMode mode) {
  const int dim = state.size();
  if (dim % 2 == 0) throw std::invalid_argument("propagate_state: state dimension must be odd");
  if (t0 == t1 || steps == 0) return state;
  const int N = (dim - 1) / 2;
  MatrixXcd M = state;
  run_slices(M, params, V, kappa, N, t0, t1, steps, mode);
  return M.col(0);
}

VectorXcd propagate_state_left(const VectorXcd& state, const SystemParams& params,
                               const PeriodicPotential& V, Real kappa, Real t0, Real t1, int steps,
                               SliceMode mode) {
  // Row-vector evolution w(t)^T = w(0)^T Utilde(t)^{-1}.  Each slice
  // generator G is Hermitian, so [exp(-iG/h)^{-1}]^T = conj(exp(-iG/h)) and
  // the whole inverse-transpose is the complex conjugate of the forward
  // propagator: w(t) = conj(Utilde(t) conj(w(0))).
  return propagate_state(state.conjugate(), params, V, kappa, t0, t1, steps, mode).conjugate();
}

}  // namespace wsr
