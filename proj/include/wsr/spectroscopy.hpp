// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_SPECTROSCOPY_HPP
#define WSR_SPECTROSCOPY_HPP

#include "wsr/resonance.hpp"

#include <map>

namespace wsr {

// Squared transition element between ladder alpha (site l) and ladder beta
// (site l+L); complex in general.  The two ladders' l = 0 members generally
// occupy different wells (each energy fold picks a site), so the builders
// recenter L on the spectral centroid and record the folded-out part of the
// transition energy in energy_shift: the line sits at
//   E_beta - E_alpha + energy_shift + 2 pi F L.
struct SquaredTransitionElement {
  int alpha = 0;
  int beta = 0;
  int L = 0;
  Complex value;
  Real energy_shift = 0.0;
};

// Squared dipole elements V^2_{0,beta}(L) = V_{0b}(L) V_{b0}(-L) from the
// kappa-resolved matrix element X_{ab}(kappa) in its Hamiltonian form.
// families[0] is the ground ladder.
std::vector<SquaredTransitionElement> dipole_squared(
    const std::vector<WannierBlochFamily>& families, const PeriodicPotential& V, int L_max);

// Home-well index of a folded ladder member relative to the band mean.
int ladder_site_offset(const ComplexEnergy& folded, Real band_mean, Real F);

// Same for the sin-x coupling, computed directly from <L|sin x|R>.
std::vector<SquaredTransitionElement> sine_squared_direct(
    const std::vector<WannierBlochFamily>& families, int L_max);

// W^2 from the commutator route: |(E_{b,l+L} - E_{0,l})/hbar|^4 V^2.
std::vector<SquaredTransitionElement> sine_squared_from_dipole(
    const std::vector<SquaredTransitionElement>& dipole,
    const std::vector<ComplexEnergy>& energies, const SystemParams& params);

// Induced decay rate of the ground ladder:
// Gamma_0(omega) = Gamma_0 + (A^2/2) sum_{b>0,L} Im[ V^2 / (dE - i Gamma_b/2) ],
// with A the drive amplitude matching the element family (F_omega for x
// elements, eps for sin-x elements).
std::vector<Real> decay_spectrum(const std::vector<SquaredTransitionElement>& elements,
                                 const std::vector<ComplexEnergy>& energies,
                                 const SystemParams& params, Real drive_amplitude,
                                 const std::vector<Real>& omega_grid);

// P_t(omega) = exp(-Gamma_0(omega) t / hbar).
std::vector<Real> survival_from_spectrum(const std::vector<Real>& gamma_of_omega, Real t,
                                         Real hbar);

// Squared overlap integrals I^2_{ab}(L) between hole and electron ladders
// (both sampled on identical kappa grids and bases).
std::vector<SquaredTransitionElement> overlap_squared(
    const std::vector<WannierBlochFamily>& hole_families,
    const std::vector<WannierBlochFamily>& electron_families, int L_max);

// Interband absorption line shape, normalized to unit maximum:
// D(omega) ~ sum Im[ I^2 / (E^e - E^h + 2 pi F L + E_gap - hbar omega - i(G^e+G^h)/2) ].
std::vector<Real> absorption_spectrum(const std::vector<SquaredTransitionElement>& overlaps,
                                      const std::vector<ComplexEnergy>& electron_energies,
                                      const std::vector<ComplexEnergy>& hole_energies, Real E_gap,
                                      Real F, Real hbar, const std::vector<Real>& omega_grid);

}  // namespace wsr

#endif  // WSR_SPECTROSCOPY_HPP
