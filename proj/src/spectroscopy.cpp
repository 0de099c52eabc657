// SPDX-License-Identifier: Apache-2.0
#include "wsr/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace wsr {

namespace {

// Fourier image over the kappa grid: O(L) = mean_j e^{i 2 pi L kappa_j} y_j.
Complex fourier_image(const std::vector<Real>& kappa, const VectorXcd& y, int L) {
  Complex acc(0, 0);
  for (std::size_t j = 0; j < kappa.size(); ++j)
    acc += std::exp(Complex(0, two_pi * L * kappa[j])) * y(j);
  return acc / Real(kappa.size());
}

void check_families(const std::vector<WannierBlochFamily>& families) {
  if (families.size() < 2)
    throw std::invalid_argument("transition elements: need the ground and at least one upper ladder");
  for (const auto& f : families)
    if (f.substeps() != families[0].substeps() || f.N != families[0].N)
      throw std::invalid_argument("transition elements: kappa grids or bases differ");
}

// X_{ab}(kappa_j) for all j: (1/F) <L_a| H_kappa |R_b> - (E_a/F) delta_ab.
VectorXcd hamiltonian_elements(const WannierBlochFamily& fa, const WannierBlochFamily& fb,
                               const PeriodicPotential& V, bool diagonal) {
  const int M = fa.substeps();
  const int N = fa.N;
  const SystemParams& params = fa.params;
  const MatrixXcd VT = V.toeplitz_block(N);
  VectorXcd x(M);
  for (int j = 0; j < M; ++j) {
    Complex me = fa.left[j].transpose() * (VT * fb.right[j]);
    for (int n = -N; n <= N; ++n) {
      const Real k = params.hbar * (n + fa.kappa[j]);
      me += fa.left[j](n + N) * 0.5 * k * k * fb.right[j](n + N);
    }
    me /= params.F;
    if (diagonal) me -= fa.energy.value() / params.F;
    x(j) = me;
  }
  return x;
}

VectorXcd sine_elements(const WannierBlochFamily& fa, const WannierBlochFamily& fb) {
  const int M = fa.substeps();
  const int dim = 2 * fa.N + 1;
  VectorXcd y(M);
  for (int j = 0; j < M; ++j) {
    Complex me(0, 0);
    for (int m = 0; m < dim; ++m) {
      Complex v(0, 0);
      if (m >= 1) v += fb.right[j](m - 1);
      if (m + 1 < dim) v -= fb.right[j](m + 1);
      me += fa.left[j](m) * v;
    }
    y(j) = me / Complex(0, 2);
  }
  return y;
}

// The element at raw Fourier index L pairs with the transition energy
// E_fold(beta) + 2 pi F L - E_fold(alpha).  The raw spectrum is centered at
// the site offset between the two folds; recenter on its maximum and record
// the folded-out 2 pi F L0 part in energy_shift.
std::vector<SquaredTransitionElement> squared_from_pairs(
    const std::vector<WannierBlochFamily>& families,
    const std::function<VectorXcd(int, int)>& element_of, int L_max, Real F) {
  check_families(families);
  const auto& kappa = families[0].kappa;
  const int scan = L_max + int(kappa.size()) / 2;
  std::vector<SquaredTransitionElement> out;
  for (std::size_t b = 1; b < families.size(); ++b) {
    const VectorXcd up = element_of(0, int(b));
    const VectorXcd down = element_of(int(b), 0);
    int L0 = 0;
    Real best = -1.0;
    for (int L = -scan; L <= scan; ++L) {
      const Real v = std::abs(fourier_image(kappa, up, -L) * fourier_image(kappa, down, L));
      if (v > best) {
        best = v;
        L0 = L;
      }
    }
    Real vmax = 0.0;
    std::vector<SquaredTransitionElement> row;
    for (int L = -L_max; L <= L_max; ++L) {
      SquaredTransitionElement el;
      el.alpha = 0;
      el.beta = int(b);
      el.L = L;
      el.energy_shift = two_pi * F * L0;
      el.value = fourier_image(kappa, up, -(L + L0)) * fourier_image(kappa, down, L + L0);
      vmax = std::max(vmax, std::abs(el.value));
      row.push_back(el);
    }
    const Real edge = std::max(std::abs(row.front().value), std::abs(row.back().value));
    if (edge > 1e-2 * vmax)
      throw NumericalError("transition elements: L window too small (aliasing)");
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace

int ladder_site_offset(const ComplexEnergy& folded, Real band_mean, Real F) {
  return int(std::lround((folded.re - band_mean) / (two_pi * F)));
}

std::vector<SquaredTransitionElement> dipole_squared(
    const std::vector<WannierBlochFamily>& families, const PeriodicPotential& V, int L_max) {
  return squared_from_pairs(
      families,
      [&](int a, int b) {
        return hamiltonian_elements(families[a], families[b], V, a == b);
      },
      L_max, families[0].params.F);
}

std::vector<SquaredTransitionElement> sine_squared_direct(
    const std::vector<WannierBlochFamily>& families, int L_max) {
  return squared_from_pairs(
      families, [&](int a, int b) { return sine_elements(families[a], families[b]); }, L_max,
      families[0].params.F);
}

std::vector<SquaredTransitionElement> sine_squared_from_dipole(
    const std::vector<SquaredTransitionElement>& dipole,
    const std::vector<ComplexEnergy>& energies, const SystemParams& params) {
  std::vector<SquaredTransitionElement> out = dipole;
  for (auto& el : out) {
    const Complex de = energies.at(el.beta).value() + el.energy_shift +
                       two_pi * params.F * Real(el.L) - energies.at(el.alpha).value();
    // complex fourth power: the double-commutator identity carries the
    // resonance phase; the magnitude equals the |dE/hbar|^4 form
    const Complex f = std::pow(de / params.hbar, 4);
    el.value *= f;
  }
  return out;
}

std::vector<Real> decay_spectrum(const std::vector<SquaredTransitionElement>& elements,
                                 const std::vector<ComplexEnergy>& energies,
                                 const SystemParams& params, Real drive_amplitude,
                                 const std::vector<Real>& omega_grid) {
  if (energies.empty()) throw std::invalid_argument("decay_spectrum: no energies");
  const Real gamma0 = energies[0].width();
  std::vector<Real> out(omega_grid.size(), gamma0);
  if (drive_amplitude == 0.0) return out;
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const Real hw = params.hbar * omega_grid[i];
    Real acc = 0.0;
    for (const auto& el : elements) {
      if (el.beta == 0) continue;
      const ComplexEnergy& eb = energies.at(el.beta);
      const Complex denom(eb.re + el.energy_shift + two_pi * params.F * el.L - energies[0].re - hw,
                          eb.im);
      acc += (el.value / denom).imag();
    }
    out[i] += 0.5 * drive_amplitude * drive_amplitude * acc;
  }
  return out;
}

std::vector<Real> survival_from_spectrum(const std::vector<Real>& gamma_of_omega, Real t,
                                         Real hbar) {
  if (t < 0) throw std::invalid_argument("survival_from_spectrum: t >= 0");
  std::vector<Real> p(gamma_of_omega.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(-gamma_of_omega[i] * t / hbar);
  return p;
}

std::vector<SquaredTransitionElement> overlap_squared(
    const std::vector<WannierBlochFamily>& hole_families,
    const std::vector<WannierBlochFamily>& electron_families, int L_max) {
  if (hole_families.empty() || electron_families.empty())
    throw std::invalid_argument("overlap_squared: empty family list");
  const int M = hole_families[0].substeps();
  for (const auto& f : electron_families)
    if (f.substeps() != M || f.N != hole_families[0].N)
      throw std::invalid_argument("overlap_squared: hole/electron grids differ");
  for (const auto& f : hole_families)
    if (f.substeps() != M || f.N != hole_families[0].N)
      throw std::invalid_argument("overlap_squared: hole grids differ");
  const Real F = hole_families[0].params.F;
  const int scan = L_max + M / 2;
  std::vector<SquaredTransitionElement> out;
  for (std::size_t a = 0; a < hole_families.size(); ++a) {
    for (std::size_t b = 0; b < electron_families.size(); ++b) {
      VectorXcd up(M), down(M);
      for (int j = 0; j < M; ++j) {
        up(j) = hole_families[a].left[j].transpose() * electron_families[b].right[j];
        down(j) = electron_families[b].left[j].transpose() * hole_families[a].right[j];
      }
      const auto& kap = hole_families[a].kappa;
      int L0 = 0;
      Real bestv = -1.0;
      for (int L = -scan; L <= scan; ++L) {
        const Real v = std::abs(fourier_image(kap, up, -L) * fourier_image(kap, down, L));
        if (v > bestv) {
          bestv = v;
          L0 = L;
        }
      }
      for (int L = -L_max; L <= L_max; ++L) {
        SquaredTransitionElement el;
        el.alpha = int(a);
        el.beta = int(b);
        el.L = L;
        el.energy_shift = two_pi * F * L0;
        el.value = fourier_image(kap, up, -(L + L0)) * fourier_image(kap, down, L + L0);
        out.push_back(el);
      }
    }
  }
  return out;
}

std::vector<Real> absorption_spectrum(const std::vector<SquaredTransitionElement>& overlaps,
                                      const std::vector<ComplexEnergy>& electron_energies,
                                      const std::vector<ComplexEnergy>& hole_energies, Real E_gap,
                                      Real F, Real hbar, const std::vector<Real>& omega_grid) {
  std::vector<Real> d(omega_grid.size(), 0.0);
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const Real hw = hbar * omega_grid[i];
    Real acc = 0.0;
    for (const auto& el : overlaps) {
      const ComplexEnergy& ee = electron_energies.at(el.beta);
      const ComplexEnergy& eh = hole_energies.at(el.alpha);
      const Complex denom(ee.re - eh.re + el.energy_shift + two_pi * F * el.L + E_gap - hw,
                          -(ee.width() + eh.width()) / 2.0);
      acc += (el.value / denom).imag();
    }
    d[i] = acc;
  }
  const Real dmax = *std::max_element(d.begin(), d.end());
  if (dmax > 0)
    for (Real& v : d) v /= dmax;
  return d;
}

}  // namespace wsr
