// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_RMT_HPP
#define WSR_RMT_HPP

#include "wsr/types.hpp"

#include <cstdint>
#include <random>

namespace wsr {

struct RmtEnsembleConfig {
  int N = 40;          // interior matrix size
  int M = 1;           // channel count
  int n_matrices = 1000;
  std::uint64_t seed = 1;
};

// CUE member: orthonormal eigenvectors of a GOE matrix, columns multiplied
// by independent uniform phases.
MatrixXcd sample_cue(int N, std::mt19937_64& rng);

// Truncation of a unitary into the open-system contraction: M zero rows on
// top, W below, M zero columns on the right.
MatrixXcd embed_truncated(const MatrixXcd& W, int M);

// Scaled widths Gamma_s = N Gamma / 2 of the nonzero eigenvalues
// lambda = exp(-i(E - i Gamma/2)) over the ensemble.  Matrix draws use
// per-task streams split from the seed by counter.
std::vector<Real> rmt_resonances(const RmtEnsembleConfig& cfg);

// Limit distribution of the scaled widths for M channels.
Real width_distribution_theory(Real gamma_s, int M);

// Partial delay-time density P(tau_s) = tau_s^{-M-2} e^{-1/tau_s} / M!; with
// convolve, the density of the sum of M independent partial delays on the
// given grid (independence approximation).
Real partial_delay_distribution(Real tau_s, int M);
std::vector<Real> partial_delay_sum_distribution(const std::vector<Real>& tau_grid, int M);

// Resolvent-norm delay time (1/M) |[B - e^{-iE}]^{-1} e^M|_F^2; the physical
// gain/loss convention subtracts N afterwards.
Real rmt_delay_time(const MatrixXcd& B, Real E, int M);

// Delay-time samples over the ensemble, n_energies equally spaced E per
// matrix, scaled tau_s = tau / N.  Samples within pole_guard of an
// eigenphase are flagged and dropped.
std::vector<Real> rmt_delay_samples(const RmtEnsembleConfig& cfg, int n_energies,
                                    Real pole_guard = 1e-8);

// Survival law (1 + Gamma_W t / (hbar q))^{-q}; q -> infinity recovers the
// exponential.
Real rmt_survival(Real t, Real gamma_w, Real q, Real hbar = 1.0);

}  // namespace wsr

#endif  // WSR_RMT_HPP
