// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_RESONANCE_HPP
#define WSR_RESONANCE_HPP

#include "wsr/propagator.hpp"

namespace wsr {

// One pole of the scattering matrix.  Vectors live on the extended grid
// n in [-N-q, N] (ascending momentum); the top q entries of the right
// vector vanish structurally (empty incoming channels), the bottom q of the
// left one likewise.
struct Resonance {
  Complex lambda;
  ComplexEnergy energy;  // (i hbar / T) ln lambda folded into [0, 2 pi hbar / T)
  VectorXcd right;
  VectorXcd left;
  Real kappa = 0.0;
};

struct ResonanceSet {
  std::vector<Resonance> items;
  SystemParams params;
  int N = 0;
  int jmax = 0;

  std::size_t size() const { return items.size(); }
  const Resonance& operator[](std::size_t i) const { return items[i]; }
  Real energy_zone() const { return two_pi * params.F / params.q; }
};

// Embeds the truncated gauge-frame operator into the contraction whose
// eigenvalues are the S-matrix poles: in ascending momentum ordering the
// block sits shifted q columns to the right, with q zero rows at the bottom
// and q zero columns on the left.
MatrixXcd build_B_matrix(const MatrixXcd& U_tilde, int q);

// Fold (i hbar / T) ln(lambda) into the first energy Brillouin zone.
ComplexEnergy energy_from_lambda(Complex lambda, const SystemParams& params);

// Full eigendecomposition of B with biorthogonally normalized left/right
// pairs, sorted by width (most stable first); keeps n_keep of them
// (n_keep <= 0 selects a default).
ResonanceSet find_resonances(const SystemParams& params, const PeriodicPotential& V, Real kappa,
                             int N, int jmax, int n_keep = 0,
                             SliceMode mode = SliceMode::midpoint_eigen);

// Same, reusing a prebuilt evolution matrix.
ResonanceSet find_resonances(const EvolutionMatrix& U, int n_keep = 0);

// Keeps eigenvalues matched across runs with different numerical parameters
// (greedy nearest-neighbour in the lambda plane, within tol); truncation
// artifacts drop out.
ResonanceSet filter_stable(const std::vector<ResonanceSet>& runs, Real tol = 1e-6);

enum class EigenSide { right, left };

// Eigenvector of B for a given eigenvalue; checks the residual and detects
// defective (Jordan-block) eigenvalues.
VectorXcd resonance_eigenstates(const MatrixXcd& B, Complex lambda, EigenSide side);

// Rescale so that the unconjugated pairing sum_k L_k R_k equals one.
void normalize_biorthogonal(VectorXcd& left, VectorXcd& right);

// Resonance eigenvector family Phi_{alpha,kappa} along one Bloch cycle,
// kappa_j = -j/substeps folded to [-1/2, 1/2), with the decay phase
// compensated and the unconjugated left/right pairing normalized to one at
// every kappa.  Vectors live on the interior block n in [-N, N].
struct WannierBlochFamily {
  std::vector<Real> kappa;
  std::vector<VectorXcd> right;
  std::vector<VectorXcd> left;
  ComplexEnergy energy;
  SystemParams params;
  int N = 0;

  int substeps() const { return int(kappa.size()); }
};

// jmax_per_step <= 0 picks enough slices per substep to keep the slice
// width near 0.15 scaled time units.
WannierBlochFamily build_wannier_bloch_family(const Resonance& res, const SystemParams& params,
                                              const PeriodicPotential& V, int substeps,
                                              int jmax_per_step = 0);

// Wannier-Stark state sampled on the fine momentum grid k = n + kappa_j,
// kappa_j = -j/substeps folded to [-1/2, 1/2).
struct WannierStarkState {
  int alpha = 0;
  int site = 0;
  ComplexEnergy energy;
  std::vector<Real> k;        // ascending momenta, size (2N+1)*substeps
  VectorXcd right;            // Psi^R(k)
  VectorXcd left;             // Psi^L(k)
  Real domain_bound = 0.0;    // |x| validity estimate for Fourier synthesis
};

// Builds Psi_{alpha,l} from the dc (q = 1) resonance by propagating the
// kappa = 0 eigenvector over one Bloch period with the decay phase
// compensated.
WannierStarkState wannier_stark_state(const Resonance& res, const SystemParams& params,
                                      const PeriodicPotential& V, int alpha, int l, int substeps,
                                      int jmax_per_step = 0);

// Momentum samples -> coordinate samples at the given x grid.
VectorXcd to_coordinate_space(const std::vector<Real>& k, const VectorXcd& coeff,
                              const std::vector<Real>& x_grid);

// Replicates each dispersion branch into the p quasienergy subladders spaced
// hbar*omega/p, folded into [0, hbar*omega).
std::vector<ComplexEnergy> quasienergy_ladder(const ResonanceSet& res);

// Count of Bloch bands lying entirely below the potential maximum; the
// default n_keep for dc runs is this plus two.
int default_keep_count(const SystemParams& params, const PeriodicPotential& V, int N);

}  // namespace wsr

#endif  // WSR_RESONANCE_HPP
