// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_CLASSICAL_HPP
#define WSR_CLASSICAL_HPP

#include "wsr/lattice.hpp"

#include <cstdint>

namespace wsr {

// Phase-space samples at stroboscopic times n T_omega.
struct Trajectory {
  std::vector<Real> t;
  std::vector<Real> x;
  std::vector<Real> p;
};

// Velocity-Verlet integration of x' = p, p' = -V'(x + eps cos(omega t)) - F.
Trajectory integrate(Real x0, Real p0, const SystemParams& params, const PeriodicPotential& V,
                     Real t_end, Real dt, int sample_stride = 1);

struct SectionPoint {
  Real x = 0.0;  // mod 2 pi
  Real p = 0.0;
};

// (x mod 2pi, p) at t = n T_omega for an ensemble of initial conditions.
std::vector<SectionPoint> stroboscopic_section(const std::vector<SectionPoint>& initial,
                                               const SystemParams& params,
                                               const PeriodicPotential& V, int n_periods,
                                               int steps_per_period = 200);

struct DelayTimeResult {
  Real delay = 0.0;   // time units
  bool censored = false;  // trajectory still trapped at t_max
};

// Time gain/loss of the scattering p0 -> -p0 relative to free fall.
DelayTimeResult classical_delay_time(Real x0, Real p0, const SystemParams& params,
                                     const PeriodicPotential& V, Real dt, Real t_max);

// Delay-time ensemble over x0 uniform in [0, 2 pi).
std::vector<Real> classical_delay_ensemble(int count, Real p0, const SystemParams& params,
                                           const PeriodicPotential& V, Real dt, Real t_max,
                                           std::uint64_t seed, int* censored_count = nullptr);

// Semiclassical state count of the chaotic band from an F = 0 stroboscopic
// section: occupied-cell area / (2 pi hbar), and the outer-boundary version
// that includes embedded islands.
struct ChaoticStateCount {
  Real occupied_area = 0.0;
  Real enclosed_area = 0.0;
  int n_effective = 0;  // occupied / 2 pi hbar
  int n_weyl = 0;       // enclosed / 2 pi hbar
  Real p_star = 0.0;    // largest |p| with occupied cells
};

ChaoticStateCount chaotic_state_count(const std::vector<SectionPoint>& section, Real hbar,
                                      Real p_window = 8.0, int cells = 256);

// Quasienergy dispersion slope of states carried by the nonlinear resonance
// p ~ m omega: dE/dkappa = +- m hbar omega (equivalently +-2 pi m per
// Floquet eigenphase unit).
Real island_dispersion_slope(int m, const SystemParams& params);

}  // namespace wsr

#endif  // WSR_CLASSICAL_HPP
