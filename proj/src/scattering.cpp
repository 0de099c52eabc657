// SPDX-License-Identifier: Apache-2.0
#include "wsr/scattering.hpp"

#include <cmath>
#include <numeric>

namespace wsr {

namespace {

// Free Airy-like phase G0(m) = exp(i hbar^2 (kappa+m)^3 / 6F - i E (kappa+m)/F).
Complex free_phase(int m, Real kappa, Complex E, const SystemParams& params) {
  const Real k = kappa + m;
  return std::exp(Complex(0, params.hbar * params.hbar * k * k * k / (6.0 * params.F)) -
                  Complex(0, 1) * E * k / params.F);
}

Complex lambda_of_energy(Complex E, const SystemParams& params) {
  // lambda = exp(-i E T / hbar), T = q T_B
  return std::exp(Complex(0, -1) * E * Real(params.q) / params.F);
}

void check_pole(const EvolutionMatrix& U, const MatrixXcd& B, Complex E) {
  const Complex lam = lambda_of_energy(E, U.params);
  const Eigen::VectorXcd evs = B.eigenvalues();
  Real dmin = std::numeric_limits<Real>::max();
  Complex nearest;
  for (int i = 0; i < evs.size(); ++i) {
    const Real d = std::abs(evs(i) - lam);
    if (d < dmin) {
      dmin = d;
      nearest = evs(i);
    }
  }
  const ComplexEnergy near_energy = energy_from_lambda(nearest, U.params);
  throw NumericalError("smatrix: E lies on an eigenphase; nearest resonance E = " +
                       std::to_string(near_energy.re) + ", Gamma = " +
                       std::to_string(near_energy.width()));
}

}  // namespace

MatrixXcd smatrix_at(const EvolutionMatrix& U, Complex E) {
  const SystemParams& params = U.params;
  const int q = params.q;
  const int N = U.N;
  const MatrixXcd B = build_B_matrix(U.U, q);
  const Complex lam = lambda_of_energy(E, params);
  Eigen::PartialPivLU<MatrixXcd> lu(B - lam * MatrixXcd::Identity(B.rows(), B.cols()));
  if (lu.rcond() < 1e-14) check_pole(U, B, E);

  const int dim = B.rows();
  MatrixXcd S(q, q);
  for (int c = 0; c < q; ++c) {
    VectorXcd rhs = VectorXcd::Zero(dim);
    rhs(dim - q + c) = 1.0;  // matching row of momentum N-q+1+c
    const VectorXcd col = lu.solve(rhs);
    const Complex in_factor =
        -free_diagonal_phase(N + 1 + c, U.kappa, params) * free_phase(N + 1 + c, U.kappa, E, params);
    for (int cp = 0; cp < q; ++cp) {
      // Outgoing channel label: the momentum in [-N-q, -N-1] sharing the
      // incoming residue class mod q, so the free system scatters channel c
      // into channel c.
      const int row = (2 * N + 1 + cp) % q;
      S(cp, c) = col(row) * in_factor / free_phase(-N - q + row, U.kappa, E, params);
    }
  }
  return S;
}

MatrixXcd smatrix_at(const EvolutionMatrix& U, Real E) { return smatrix_at(U, Complex(E, 0.0)); }

ScatteringResult smatrix(const SystemParams& params, const PeriodicPotential& V, Real E,
                         Real kappa, int N, int jmax, SliceMode mode) {
  const EvolutionMatrix U = build_evolution_matrix(params, V, kappa, N, jmax, mode);
  ScatteringResult out;
  out.E = E;
  out.N = N;
  out.S = smatrix_at(U, E);
  if (params.q == 1) out.phase_shift = -0.5 * std::arg(out.S(0, 0));
  out.delay = wigner_delay_time(U, E);
  return out;
}

ScatteringResult smatrix_converged(const SystemParams& params, const PeriodicPotential& V, Real E,
                                   Real kappa, int N0, int jmax_per_TB, Real tol, int max_N) {
  // The pole structure, |S| and the delay time converge with the basis; the
  // overall phase of S carries an O(1/N) edge-matching remainder, so the
  // acceptance check here is on modulus and delay rather than raw entries.
  int N = N0;
  ScatteringResult cur = smatrix(params, V, E, kappa, N, jmax_per_TB * params.q);
  while (N + 5 <= max_N) {
    ScatteringResult next = smatrix(params, V, E, kappa, N + 5, jmax_per_TB * params.q);
    const Real d_mod = (next.S.cwiseAbs() - cur.S.cwiseAbs()).cwiseAbs().maxCoeff();
    const Real d_delay = std::abs(next.delay - cur.delay) / (1.0 + std::abs(next.delay));
    if (d_mod < tol && d_delay < std::max(tol, 1e-10)) return next;
    N += 5;
    cur = std::move(next);
  }
  throw NumericalError("smatrix_converged: basis limit reached without convergence");
}

Real wigner_delay_time(const EvolutionMatrix& U, Real E) {
  const SystemParams& params = U.params;
  const int q = params.q;
  const int N = U.N;
  if (q == 1) {
    // Norm route: the scattering vector normalized to a unit incoming
    // amplitude solves (B - lambda) C = e at the incoming matching row.
    const MatrixXcd B = build_B_matrix(U.U, 1);
    const Complex lam = lambda_of_energy(Complex(E, 0.0), params);
    Eigen::PartialPivLU<MatrixXcd> lu(B - lam * MatrixXcd::Identity(B.rows(), B.cols()));
    if (lu.rcond() < 1e-14) check_pole(U, B, Complex(E, 0.0));
    VectorXcd rhs = VectorXcd::Zero(B.rows());
    rhs(B.rows() - 1) = 1.0;
    const VectorXcd C = lu.solve(rhs);
    return params.hbar / params.F * (C.squaredNorm() - 2.0 * (N + 1));
  }
  // Smith matrix by central differences.
  const Real dE = 1e-6 * two_pi * params.F / q;
  const MatrixXcd Sp = smatrix_at(U, E + dE);
  const MatrixXcd Sm = smatrix_at(U, E - dE);
  const MatrixXcd S0 = smatrix_at(U, E);
  const MatrixXcd smith = Complex(0, -params.hbar) * S0.adjoint() * ((Sp - Sm) / (2.0 * dE));
  return smith.real().trace() / q;
}

Real wigner_delay_time(const SystemParams& params, const PeriodicPotential& V, Real E, Real kappa,
                       int N, int jmax, SliceMode mode) {
  const EvolutionMatrix U = build_evolution_matrix(params, V, kappa, N, jmax, mode);
  return wigner_delay_time(U, E);
}

std::vector<Real> delay_time_map(const std::vector<ComplexEnergy>& resonances,
                                 const std::vector<Real>& E_grid, Real F, Real hbar, int l_range) {
  if (resonances.empty()) throw std::invalid_argument("delay_time_map: empty resonance set");
  const Real zone = two_pi * F;
  std::vector<Real> tau(E_grid.size(), 0.0);
  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    Real acc = 0.0;
    for (const ComplexEnergy& r : resonances) {
      if (l_range <= 0) {
        // full comb in closed form: sum_l 1/(z + zone l) = (pi/zone) cot(pi z / zone)
        const Complex w = M_PI * Complex(r.re - E_grid[i], r.im) / zone;
        acc += (hbar * M_PI / zone * std::cos(w) / std::sin(w)).imag();
      } else {
        for (int l = -l_range; l <= l_range; ++l)
          acc += (hbar / Complex(r.re + zone * l - E_grid[i], r.im)).imag();
      }
    }
    tau[i] = acc;
  }
  const Real mean = std::accumulate(tau.begin(), tau.end(), 0.0) / tau.size();
  for (Real& t : tau) t -= mean;
  return tau;
}

}  // namespace wsr
