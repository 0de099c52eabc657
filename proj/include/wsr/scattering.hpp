// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_SCATTERING_HPP
#define WSR_SCATTERING_HPP

#include "wsr/resonance.hpp"

namespace wsr {

// S-matrix at one real energy.  Scalar (1x1) in the static case; q x q with
// channel c carrying the incoming plane wave N+1+c and the outgoing one
// -N-q+c, both in ascending order.
struct ScatteringResult {
  Real E = 0.0;
  MatrixXcd S;
  Real phase_shift = 0.0;  // -arg(S)/2, scalar case
  Real delay = 0.0;        // Wigner delay time
  int N = 0;
};

// Resolvent-based S(E) from a prebuilt evolution matrix; throws
// NumericalError with the nearest pole when E sits on an eigenphase.  The
// complex-E overload analytically continues into the resonance half plane.
MatrixXcd smatrix_at(const EvolutionMatrix& U, Real E);
MatrixXcd smatrix_at(const EvolutionMatrix& U, Complex E);

ScatteringResult smatrix(const SystemParams& params, const PeriodicPotential& V, Real E,
                         Real kappa, int N, int jmax, SliceMode mode = SliceMode::midpoint_eigen);

// Re-evaluates with the basis enlarged in steps of 5 until |S_N - S_{N+5}|
// drops below tol; throws NumericalError if max_N is hit first.
ScatteringResult smatrix_converged(const SystemParams& params, const PeriodicPotential& V, Real E,
                                   Real kappa, int N0, int jmax_per_TB, Real tol = 1e-8,
                                   int max_N = 120);

// Wigner delay time.  dc: from the norm of the resolvent column (no
// numerical derivative); ac: trace of the Smith matrix by central
// differences of S(E).
Real wigner_delay_time(const EvolutionMatrix& U, Real E);
Real wigner_delay_time(const SystemParams& params, const PeriodicPotential& V, Real E, Real kappa,
                       int N, int jmax, SliceMode mode = SliceMode::midpoint_eigen);

// Periodic Lorentzian comb tau(E) = tau0 + sum_{alpha,l} Im[hbar/(E_alpha +
// 2 pi F l - E)] with tau0 fixed by the zero-mean convention on the grid.
// l_range <= 0 evaluates the full comb in closed form (exactly periodic);
// positive values truncate the sum at |l| <= l_range.
std::vector<Real> delay_time_map(const std::vector<ComplexEnergy>& resonances,
                                 const std::vector<Real>& E_grid, Real F, Real hbar,
                                 int l_range = 0);

}  // namespace wsr

#endif  // WSR_SCATTERING_HPP
