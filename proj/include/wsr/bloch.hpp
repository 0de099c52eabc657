// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_BLOCH_HPP
#define WSR_BLOCH_HPP

#include "wsr/lattice.hpp"

namespace wsr {

// Field-free band structure on a uniform quasimomentum grid, with the Bloch
// vectors in a smooth periodic gauge (phase fixed at kappa = 0, parallel
// transported in kappa, conjugation symmetry for kappa < 0).
struct BlochBandTable {
  std::vector<Real> kappa;          // grid over [-1/2, 1/2), size M
  MatrixXd bands;                   // (n_bands x M) energies, sorted per column
  std::vector<MatrixXcd> vectors;   // per kappa: (2N+1) x n_bands coefficient columns
  std::vector<Real> gauge_overlap;  // per band: min |<phi_j|phi_{j+1}>| along the grid
  Real hbar = 0.0;
  int N = 0;  // plane-wave half-size

  int n_bands() const { return bands.rows(); }
  int n_kappa() const { return int(kappa.size()); }
  Real band_mean(int alpha) const { return bands.row(alpha).mean(); }
  Real band_width(int alpha) const { return bands.row(alpha).maxCoeff() - bands.row(alpha).minCoeff(); }
  Real band_max(int alpha) const { return bands.row(alpha).maxCoeff(); }
  // Cosine-series coefficients of the dispersion:
  //   eps_alpha(kappa) = sum_nu coeff[nu] cos(2 pi nu kappa).
  std::vector<Real> dispersion_fourier(int alpha, int n_terms = 32) const;
};

// Diagonalizes the field-free Hamiltonian in the plane-wave basis per kappa.
// basis_N = 0 picks a size from the potential and requested band count.
// Throws NumericalError if the basis cannot resolve n_bands.
BlochBandTable bloch_bands(const PeriodicPotential& V, Real hbar, int n_bands,
                           int kappa_points = 200, int basis_N = 0);

struct WannierFunction {
  int alpha = 0;
  int site = 0;
  std::vector<Real> x;
  VectorXd values;  // real by gauge construction
};

// kappa integral of e^{-i 2 pi l kappa} phi_{alpha,kappa}(x) on a grid of
// span_periods lattice periods around site l; unit L2 norm.
WannierFunction wannier_function(const BlochBandTable& table, int alpha, int l,
                                 int span_periods = 5, int points_per_period = 64);

// Tight-binding Wannier-Stark amplitudes J_{m-l}(Delta_alpha / 4 pi F) over
// the site window [m_lo, m_hi], renormalized on the window.
VectorXd tight_binding_state(int l, Real delta_alpha, Real F, int m_lo, int m_hi);

struct LandauZenerRate {
  Real probability = 0.0;  // per-crossing transition probability
  Real width = 0.0;        // Gamma = a F exp(-b/F)
  Real a = 1.0;
  Real b = 0.0;
};

// Semiclassical interband rate from one avoided crossing per Bloch cycle.
LandauZenerRate landau_zener_rate(Real gap, Real slope_lower, Real slope_upper, Real F, Real hbar);

// Single-band quasienergy dispersion: Bessel-rescaled Fourier coefficients
// of the parent Bloch band, truncated when terms drop below 1e-14.
Real single_band_quasienergy(const std::vector<Real>& band_fourier, const SystemParams& params,
                             Real kappa);

// J_n(x) for any integer n and real x.
Real bessel_j(int n, Real x);

}  // namespace wsr

#endif  // WSR_BLOCH_HPP
