// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_WAVEPACKET_HPP
#define WSR_WAVEPACKET_HPP

#include "wsr/bloch.hpp"
#include "wsr/resonance.hpp"

namespace wsr {

// Superposition of resonance states with a truncation edge moving with the
// classical equation of motion.
struct PacketExpansion {
  std::vector<Complex> coeff;              // c_nu
  std::vector<const WannierStarkState*> states;
  Real k0 = 0.5;                           // edge offset in momentum units
};

// psi(k, t) on the states' common fine momentum grid:
// Theta(hbar (k + k0) + F t) sum_nu c_nu e^{-i E_nu t / hbar} Psi_nu(k).
struct GridFunction {
  std::vector<Real> k;
  VectorXcd values;
};

GridFunction evolve_expansion(const PacketExpansion& expansion, const SystemParams& params, Real t);

// Coherent superposition over one ladder with amplitudes c_l: equals the
// l = 0 state times the amplitude modulation factor C(Ft/hbar + k).
// Returns |psi|^2 over the natural coordinate grid (spacing 2 pi / (2N+1)),
// restricted to [x_lo, x_hi].
struct PulseSnapshot {
  Real t = 0.0;
  std::vector<Real> x;
  std::vector<Real> density;
};

std::vector<Complex> gaussian_site_amplitudes(int l_max, Real sigma);

PulseSnapshot pulse_train(const std::vector<Complex>& site_amplitudes,
                          const WannierStarkState& state, const SystemParams& params, Real t,
                          Real k0, Real x_lo, Real x_hi);

// Amplitude modulation after N resonantly driven Bloch periods:
// C(k) = c0(k) exp(-i E0(k) N T_B / hbar) with E0(kappa) sampled on the
// family grid; returns the snapshot at t = N T_B and the |C|^2 profile.
struct ModeLockedTail {
  PulseSnapshot snapshot;
  std::vector<Real> kappa;
  std::vector<Real> modulation;  // |C(kappa)|^2
};

ModeLockedTail mode_locked_tail(const std::vector<Complex>& c0_of_kappa,
                                const std::vector<Real>& kappa_grid,
                                const std::vector<ComplexEnergy>& band, int n_periods,
                                const WannierStarkState& state, const SystemParams& params,
                                Real x_lo, Real x_hi);

// P(t) = integral dk exp(-Gamma_0(kappa) t / hbar) over the Brillouin zone.
Real band_survival(const std::vector<Real>& gamma_of_kappa, Real t, Real hbar);

// Direct propagation of a localized state on the extended momentum grid
// k = n + kappa_j (independent kappa blocks in the gauge frame); records the
// probability inside |p| < p_star once per Bloch period.
struct SurvivalSeries {
  std::vector<Real> t;
  std::vector<Real> probability;
};

struct GridState {
  int N = 0;              // plane-wave half-size per block
  int n_kappa = 0;        // kappa subdivisions
  std::vector<Real> kappa;
  std::vector<VectorXcd> block;  // per kappa, coefficients over n in [-N, N]

  Real norm() const;
};

// Wannier state of the field-free lattice placed on the extended grid.
GridState wannier_grid_state(const BlochBandTable& table, int alpha, int N, int n_kappa);

SurvivalSeries grid_survival(GridState state, const SystemParams& params,
                             const PeriodicPotential& V, Real t_max, Real p_star,
                             int slices_per_period);

}  // namespace wsr

#endif  // WSR_WAVEPACKET_HPP
