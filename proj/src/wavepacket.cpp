// SPDX-License-Identifier: Apache-2.0
#include "wsr/wavepacket.hpp"

#include "wsr/propagator.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numeric>

namespace wsr {

namespace {

// Synthesize |psi(x)|^2 on the natural grid of a uniform momentum comb
// k_j = k_front + j dk: psi(x) = sum_j c_j e^{i k_j x}, periodic over
// 2 pi / dk, sampled with spacing 2 pi dk / ... via zero-padded FFT.
PulseSnapshot synthesize_density(const std::vector<Real>& k, const VectorXcd& coeff, Real t,
                                 Real x_lo, Real x_hi) {
  const std::size_t M = k.size();
  if (M < 2) throw std::invalid_argument("synthesize_density: degenerate grid");
  const Real dk = (k.back() - k.front()) / Real(M - 1);
  const Real x_period = two_pi / dk;
  if (x_hi <= x_lo) throw std::invalid_argument("synthesize_density: empty window");
  if (x_hi - x_lo > x_period)
    throw std::invalid_argument("synthesize_density: window exceeds the resolvable span");
  // FFT length >= M, padded for sub-structure resolution.
  std::size_t L = 1;
  while (L < 2 * M) L <<= 1;
  Eigen::FFT<Real> fft;
  VectorXcd padded = VectorXcd::Zero(L);
  padded.head(M) = coeff;
  VectorXcd spectrum;
  fft.fwd(spectrum, padded);
  // spectrum(j) = sum_m c_m e^{-2 pi i m j / L} = psi(x_j) / e^{i k_front x_j}
  // at x_j = -2 pi j / (L dk).
  PulseSnapshot snap;
  snap.t = t;
  const Real dx = x_period / Real(L);
  const Real amp = dk / std::sqrt(two_pi);
  for (std::size_t j = 0; j < L; ++j) {
    Real x = -Real(j) * dx;  // x in (-x_period, 0]
    // place each sample in the requested window modulo the period
    x -= x_period * std::floor((x - x_lo) / x_period);
    if (x < x_lo || x >= x_hi) continue;
    const Real d = std::norm(spectrum(j)) * amp * amp;
    snap.x.push_back(x);
    snap.density.push_back(d);
  }
  // ascending x
  std::vector<std::size_t> order(snap.x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return snap.x[a] < snap.x[b]; });
  PulseSnapshot sorted;
  sorted.t = t;
  for (std::size_t i : order) {
    sorted.x.push_back(snap.x[i]);
    sorted.density.push_back(snap.density[i]);
  }
  return sorted;
}

}  // namespace

GridFunction evolve_expansion(const PacketExpansion& expansion, const SystemParams& params,
                              Real t) {
  if (t < 0) throw std::invalid_argument("evolve_expansion: t >= 0");
  if (expansion.coeff.size() != expansion.states.size() || expansion.states.empty())
    throw std::invalid_argument("evolve_expansion: coefficient/state mismatch");
  const auto& k = expansion.states[0]->k;
  GridFunction out;
  out.k = k;
  out.values = VectorXcd::Zero(k.size());
  for (std::size_t nu = 0; nu < expansion.states.size(); ++nu) {
    const WannierStarkState& s = *expansion.states[nu];
    if (s.k.size() != k.size())
      throw std::invalid_argument("evolve_expansion: states on different grids");
    const Complex phase =
        expansion.coeff[nu] * std::exp(Complex(0, -1) * s.energy.value() * t / params.hbar);
    out.values += phase * s.right;
  }
  for (std::size_t j = 0; j < k.size(); ++j)
    if (params.hbar * (k[j] + expansion.k0) + params.F * t < 0) out.values(j) = 0.0;
  return out;
}

std::vector<Complex> gaussian_site_amplitudes(int l_max, Real sigma) {
  std::vector<Complex> c(2 * l_max + 1);
  Real norm = 0.0;
  for (int l = -l_max; l <= l_max; ++l) {
    const Real a = std::exp(-Real(l) * Real(l) / (sigma * sigma));
    c[l + l_max] = a;
    norm += a * a;
  }
  for (auto& v : c) v /= std::sqrt(norm);
  return c;
}

PulseSnapshot pulse_train(const std::vector<Complex>& site_amplitudes,
                          const WannierStarkState& state, const SystemParams& params, Real t,
                          Real k0, Real x_lo, Real x_hi) {
  if (site_amplitudes.size() % 2 == 0)
    throw std::invalid_argument("pulse_train: amplitudes must span sites [-l_max, l_max]");
  const int l_max = (int(site_amplitudes.size()) - 1) / 2;
  const std::size_t M = state.k.size();
  VectorXcd psi(M);
  const Complex decay = std::exp(Complex(0, -1) * state.energy.value() * t / params.hbar);
  const Real shift = params.F * t / params.hbar;
  for (std::size_t j = 0; j < M; ++j) {
    Complex mod(0, 0);
    const Real arg = shift + state.k[j];
    for (int l = -l_max; l <= l_max; ++l)
      mod += site_amplitudes[l + l_max] * std::exp(Complex(0, -two_pi * l * arg));
    psi(j) = decay * state.right(j) * mod;
    if (params.hbar * (state.k[j] + k0) + params.F * t < 0) psi(j) = 0.0;
  }
  return synthesize_density(state.k, psi, t, x_lo, x_hi);
}

ModeLockedTail mode_locked_tail(const std::vector<Complex>& c0_of_kappa,
                                const std::vector<Real>& kappa_grid,
                                const std::vector<ComplexEnergy>& band, int n_periods,
                                const WannierStarkState& state, const SystemParams& params,
                                Real x_lo, Real x_hi) {
  if (c0_of_kappa.size() != kappa_grid.size() || band.size() != kappa_grid.size())
    throw std::invalid_argument("mode_locked_tail: grid size mismatch");
  if (n_periods < 0) throw std::invalid_argument("mode_locked_tail: n_periods >= 0");
  const Real T_int = n_periods * params.bloch_period();
  ModeLockedTail out;
  out.kappa = kappa_grid;
  out.modulation.resize(kappa_grid.size());
  for (std::size_t j = 0; j < kappa_grid.size(); ++j) {
    const Complex c =
        c0_of_kappa[j] * std::exp(Complex(0, -1) * band[j].value() * T_int / params.hbar);
    out.modulation[j] = std::norm(c);
  }
  // Modulate the resonance state: C is periodic in k with period 1, sampled
  // on the kappa grid; interpolate by nearest sample.
  const std::size_t M = state.k.size();
  VectorXcd psi(M);
  for (std::size_t j = 0; j < M; ++j) {
    Real frac = state.k[j] - std::floor(state.k[j] + 0.5);  // [-1/2, 1/2)
    std::size_t best = 0;
    Real dbest = 2.0;
    for (std::size_t i = 0; i < kappa_grid.size(); ++i) {
      Real d = std::abs(kappa_grid[i] - frac);
      d = std::min(d, 1.0 - d);
      if (d < dbest) {
        dbest = d;
        best = i;
      }
    }
    const Complex c = c0_of_kappa[best] *
                      std::exp(Complex(0, -1) * band[best].value() * T_int / params.hbar);
    psi(j) = state.right(j) * c;
  }
  out.snapshot = synthesize_density(state.k, psi, T_int, x_lo, x_hi);
  return out;
}

Real band_survival(const std::vector<Real>& gamma_of_kappa, Real t, Real hbar) {
  if (t < 0) throw std::invalid_argument("band_survival: t >= 0");
  if (gamma_of_kappa.empty()) throw std::invalid_argument("band_survival: empty band");
  Real acc = 0.0;
  for (Real g : gamma_of_kappa) acc += std::exp(-g * t / hbar);
  return acc / gamma_of_kappa.size();
}

Real GridState::norm() const {
  Real acc = 0.0;
  for (const auto& b : block) acc += b.squaredNorm();
  return acc / n_kappa;  // dk = 1 / n_kappa
}

GridState wannier_grid_state(const BlochBandTable& table, int alpha, int N, int n_kappa) {
  if (alpha < 0 || alpha >= table.n_bands())
    throw std::invalid_argument("wannier_grid_state: band out of range");
  GridState st;
  st.N = N;
  st.n_kappa = n_kappa;
  st.kappa.resize(n_kappa);
  st.block.assign(n_kappa, VectorXcd::Zero(2 * N + 1));
  const int Nt = table.N;
  for (int j = 0; j < n_kappa; ++j) {
    const Real kap = -0.5 + (j + 0.5) / n_kappa;
    st.kappa[j] = kap;
    // nearest table column
    std::size_t best = 0;
    Real dbest = 2.0;
    for (int i = 0; i < table.n_kappa(); ++i) {
      Real d = std::abs(table.kappa[i] - kap);
      d = std::min(d, 1.0 - d);
      if (d < dbest) {
        dbest = d;
        best = i;
      }
    }
    for (int n = -Nt; n <= Nt; ++n)
      if (std::abs(n) <= N) st.block[j](n + N) = table.vectors[best](n + Nt, alpha);
  }
  // unit norm with dk weight
  Real norm = st.norm();
  for (auto& b : st.block) b /= std::sqrt(norm);
  return st;
}

SurvivalSeries grid_survival(GridState state, const SystemParams& params,
                             const PeriodicPotential& V, Real t_max, Real p_star,
                             int slices_per_period) {
  if (p_star <= 0) throw std::invalid_argument("grid_survival: p_star > 0");
  const Real T_B = params.bloch_period();
  const int n_periods = int(std::round(t_max / T_B));
  SurvivalSeries out;
  out.t.reserve(n_periods + 1);
  out.probability.reserve(n_periods + 1);
  const Real norm0 = state.norm();
  auto inside = [&](void) {
    Real acc = 0.0;
    for (int j = 0; j < state.n_kappa; ++j)
      for (int n = -state.N; n <= state.N; ++n)
        if (std::abs(params.hbar * (n + state.kappa[j])) < p_star)
          acc += std::norm(state.block[j](n + state.N));
    return acc / state.n_kappa / norm0;
  };
  auto edge_weight = [&](void) {
    Real acc = 0.0;
    const int W = std::max(2, state.N / 50);
    for (int j = 0; j < state.n_kappa; ++j)
      for (int n = 0; n < W; ++n)
        acc += std::norm(state.block[j](n)) + std::norm(state.block[j](2 * state.N - n));
    return acc / state.n_kappa / norm0;
  };
  out.t.push_back(0.0);
  out.probability.push_back(inside());
  for (int step = 1; step <= n_periods; ++step) {
    for (int j = 0; j < state.n_kappa; ++j)
      state.block[j] = propagate_state(state.block[j], params, V, state.kappa[j],
                                       (step - 1) * T_B, step * T_B, slices_per_period,
                                       SliceMode::split_strang);
    if (edge_weight() > 1e-3)
      throw NumericalError("grid_survival: basis leakage at the momentum edge; enlarge N");
    out.t.push_back(step * T_B);
    out.probability.push_back(inside());
  }
  return out;
}

}  // namespace wsr
