// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_LADDER_HPP
#define WSR_LADDER_HPP

#include "wsr/resonance.hpp"

#include <map>

namespace wsr {

// Two crossing ladders of resonances, coupled with strength eps in [0, pi/2].
// Index 0 is the more stable ladder by convention.
struct LadderPair {
  ComplexEnergy e0;
  ComplexEnergy e1;
  Real epsilon_c = 0.0;
  Real F = 0.0;
};

struct LadderEigenvalues {
  Complex lambda_plus, lambda_minus;
  ComplexEnergy e_plus, e_minus;
};

// Closed-form eigenvalues of the coupled two-ladder cycle operator.
LadderEigenvalues two_ladder_eigenvalues(const LadderPair& pair);

// O(eps^2) expansion of the same: lambda_{0,1} (1 +- eps^2/2 * (l0+l1)/(l1-l0)).
std::pair<Complex, Complex> weak_coupling_correction(Complex lambda0, Complex lambda1, Real eps);

// Coupling above which real-part crossings become avoided:
// sin^2(eps_cr) = ((|l0|-|l1|)/(|l0|+|l1|))^2.  Returns 0 for equal moduli.
Real critical_coupling(Complex lambda0, Complex lambda1);

// n coupled ladders: eigenvalues of diag(lambda) * exp(i K) with K_{ab} the
// pairwise coupling indexed by the less stable member, K_{ab} = eps[max(a,b)].
std::vector<Complex> multi_ladder_eigenvalues(const std::vector<Complex>& lambdas,
                                              const std::vector<Real>& eps_by_band);

// Width samples Gamma_alpha(F) for coupled-ladder fits.  energies/widths are
// (n_ladders x nF); row 0 is the most stable ladder.  The unperturbed model
// uses the given real energies, zero ground width, and the input widths as
// the excited-ladder backbone.
struct WidthCurves {
  std::vector<Real> F;
  MatrixXd energy;
  MatrixXd gamma;
};

// Least squares of log Gamma residuals over (eps_alpha = a_alpha e^{-b_alpha/F});
// one (a, b) per ladder alpha >= 1.  Throws NumericalError on a fit that fails
// to reduce the residual.
std::vector<std::pair<Real, Real>> coupling_fit(const WidthCurves& data);

// Model ground-ladder width at one F for given couplings (a, b) per band.
Real coupled_ground_width(const WidthCurves& data, std::size_t iF,
                          const std::vector<std::pair<Real, Real>>& ab);

// Second-order correction to the most stable complex energy under weak
// dipole driving at frequency omega (incommensurate with omega_B).
// elements[alpha] maps the site offset L to the squared dipole element
// V^2_{0,alpha}(L); energies[alpha] are the unperturbed resonances.
struct DipoleElementTable {
  std::vector<std::map<int, Complex>> elements;  // [alpha][L]
  std::vector<ComplexEnergy> energies;           // [alpha]
};

ComplexEnergy perturbative_quasienergy(const DipoleElementTable& table, const SystemParams& params,
                                       Real omega, Real drive_amplitude, int alpha_max = 3);

// Complex quasienergy bandwidths induced by resonant driving at omega_B:
// Delta_re + i Delta_im = -2 eps Int dk cos(2 pi k) <Phi_L|sin x|Phi_R>.
struct BandWidthPair {
  Real delta_re = 0.0;
  Real delta_im = 0.0;
};

BandWidthPair resonant_band_width(const WannierBlochFamily& family, Real eps);

}  // namespace wsr

#endif  // WSR_LADDER_HPP
