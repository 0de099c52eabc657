// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_PROPAGATOR_HPP
#define WSR_PROPAGATOR_HPP

#include "wsr/lattice.hpp"
#include "wsr/types.hpp"

namespace wsr {

// How a single time slice of the ordered product is exponentiated.  Both
// variants are exactly unitary and second order in the slice width; the
// kinetic drift is integrated analytically in either case, so the free
// system is reproduced without time-discretization error.
enum class SliceMode {
  midpoint_eigen,  // exp of the full slice generator via Hermitian eigensolve
  split_strang     // drift / kick / drift with FFT kicks (faster for large bases)
};

// Gauge-frame one-period evolution operator over T = q*T_B in the plane-wave
// basis e^{i(n+kappa)x}, n in [-N, N].  The full Floquet-Bloch operator is
// the momentum shift by q applied to this matrix.
struct EvolutionMatrix {
  MatrixXcd U;  // (2N+1) x (2N+1)
  SystemParams params;
  Real kappa = 0.0;
  int N = 0;
  int jmax = 0;

  int dim() const { return 2 * N + 1; }
  // Largest |(U^dag U - 1)_{ij}|.
  Real unitarity_defect() const;
};

// Diagonal asymptotic element u_m of the gauge-frame operator: the exact
// free-drift phase accumulated by the plane wave m over the common period.
Complex free_diagonal_phase(int m, Real kappa, const SystemParams& params);

EvolutionMatrix build_evolution_matrix(const SystemParams& params, const PeriodicPotential& V,
                                       Real kappa, int N, int jmax,
                                       SliceMode mode = SliceMode::midpoint_eigen);

// Sliced time-ordered propagation of a coefficient vector from t0 to t1 in
// the gauge frame at fixed kappa.  Used to walk Wannier-Bloch states along
// the Bloch cycle and for direct survival simulations.
VectorXcd propagate_state(const VectorXcd& state, const SystemParams& params,
                          const PeriodicPotential& V, Real kappa, Real t0, Real t1, int steps,
                          SliceMode mode = SliceMode::split_strang);

// Same propagation acting on a row (left) vector: w(t) = w(0) Utilde(t)^{-1}.
VectorXcd propagate_state_left(const VectorXcd& state, const SystemParams& params,
                               const PeriodicPotential& V, Real kappa, Real t0, Real t1, int steps,
                               SliceMode mode = SliceMode::split_strang);

}  // namespace wsr

#endif  // WSR_PROPAGATOR_HPP
