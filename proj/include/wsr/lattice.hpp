// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_LATTICE_HPP
#define WSR_LATTICE_HPP

#include "wsr/types.hpp"

namespace wsr {

// Real 2*pi-periodic potential stored as a truncated Fourier series
//   V(x) = sum_{n>=0} cos_coeffs[n] cos(n x) + sum_{n>=1} sin_coeffs[n-1] sin(n x).
// The series representation is what every matrix element downstream needs:
// in the plane-wave basis V is the Hermitian Toeplitz block of its Fourier
// coefficients.
struct PeriodicPotential {
  std::vector<Real> cos_coeffs;  // index n = 0, 1, ...
  std::vector<Real> sin_coeffs;  // index n = 1, 2, ...

  int fourier_order() const;

  // V(x)
  Real operator()(Real x) const;
  // V(x + eps*cos(omega*t))
  Real operator()(Real x, Real t, const SystemParams& params) const;
  // dV/dx at the (possibly shifted) argument
  Real grad(Real x) const;
  Real grad(Real x, Real t, const SystemParams& params) const;

  // Complex Fourier coefficient V_k with V(x) = sum_k V_k e^{i k x}.
  Complex fourier(int k) const;

  // (2N+1) x (2N+1) matrix <m|V(. + shift)|n> = V_{m-n} e^{i (m-n) shift}.
  // Fails if the Fourier order exceeds N.
  MatrixXcd toeplitz_block(int N, Real shift = 0.0) const;
};

PeriodicPotential cosine_lattice(Real amplitude = 1.0);

// Smoothed square-box profile, a pair of tanh walls of steepness sigma around
// a barrier of width barrier_frac * 2*pi, projected onto n_harmonics Fourier
// modes and rescaled to unit amplitude.
PeriodicPotential tanh_box(Real barrier_frac, Real sigma, int n_harmonics);

Real eval_potential(const PeriodicPotential& V, Real x, Real t, const SystemParams& params);

// Physical inputs at the scaling boundary.  Everything downstream works in
// scaled units (m = 1, V0 = 1, d = 2*pi).
struct PhysicalLattice {
  Real mass = 0.0;       // kg
  Real period = 0.0;     // m (spatial period of the lattice)
  Real depth = 0.0;      // J (amplitude of the periodic term)
  Real force = 0.0;      // N (static force)
  Real hbar_si = 1.054571817e-34;  // J s
};

struct ScaledUnits {
  SystemParams params;  // hbar and F filled in
  Real time_unit = 0.0;    // seconds per scaled time unit
  Real energy_unit = 0.0;  // J per scaled energy unit (= depth)
  Real length_unit = 0.0;  // m per scaled length unit (= period / 2*pi)
};

ScaledUnits scale_parameters(const PhysicalLattice& in);
// Inverse map, for round-trip checks.
PhysicalLattice unscale_parameters(const ScaledUnits& scaled, Real mass, Real hbar_si = 1.054571817e-34);

// Optical-lattice entry point: detuning delta and Rabi frequency Omega_R fix
// the depth through hbar' = sqrt(8 omega_rec delta / Omega_R^2).
ScaledUnits scale_optical_lattice(Real mass, Real laser_wavenumber, Real detuning,
                                  Real rabi_frequency, Real acceleration,
                                  Real hbar_si = 1.054571817e-34);

}  // namespace wsr

#endif  // WSR_LATTICE_HPP
