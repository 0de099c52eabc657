// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_TYPES_HPP
#define WSR_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsr {

using Real = double;
using Complex = std::complex<Real>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr Real two_pi = 6.283185307179586476925286766559;

// Thrown when a numerical procedure fails to converge or loses accuracy
// (as opposed to invalid user input, which raises std::invalid_argument).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Complex resonance energy E - i*Gamma/2 with Gamma >= 0.
struct ComplexEnergy {
  Real re = 0.0;  // energy E
  Real im = 0.0;  // -Gamma/2

  ComplexEnergy() = default;
  ComplexEnergy(Real e, Real i) : re(e), im(i) {}
  explicit ComplexEnergy(Complex z) : re(z.real()), im(z.imag()) {}

  Real energy() const { return re; }
  Real width() const { return -2.0 * im; }
  Complex value() const { return Complex(re, im); }
};

// Scaled system parameters (m = 1, V0 = 1, d = 2*pi).  The drive, when
// present, is the phase modulation V(x + eps*cos(omega*t)); its dipole
// equivalent has amplitude F_omega = eps*omega^2.
struct SystemParams {
  Real hbar = 1.0;
  Real F = 0.0;      // static force, > 0 for scattering setups
  Real eps = 0.0;    // drive amplitude, >= 0
  Real omega = 0.0;  // drive frequency, >= 0
  int p = 1;         // p*T_omega = q*T_B when eps > 0
  int q = 1;

  Real bloch_period() const { return hbar / F; }
  Real drive_period() const { return two_pi / omega; }
  // Common period T = q*T_B (= p*T_omega in the commensurate case).
  Real common_period() const { return q * bloch_period(); }
  Real omega_bloch() const { return two_pi * F / hbar; }
  Real force_amplitude() const { return eps * omega * omega; }  // F_omega

  void validate() const;
};

// Static params, no drive.
SystemParams dc_params(Real hbar, Real F);
// Driven params; F is fixed by the commensurability p*T_omega = q*T_B.
SystemParams ac_params(Real hbar, Real omega, Real eps, int p, int q);
// Driven params with F given; checks hbar*omega/(2*pi*F) = p/q.
SystemParams ac_params_with_force(Real hbar, Real F, Real omega, Real eps, int p, int q);

// Plane-wave index band n in [n_lo, n_hi] with quasimomentum kappa, so the
// physical momenta are hbar*(n + kappa).
struct MomentumGrid {
  Real kappa = 0.0;
  int n_lo = 0;
  int n_hi = 0;

  MomentumGrid() = default;
  MomentumGrid(Real kap, int lo, int hi) : kappa(kap), n_lo(lo), n_hi(hi) {
    if (!(lo < 0 && 0 < hi)) throw std::invalid_argument("MomentumGrid: need n_lo < 0 < n_hi");
  }
  int size() const { return n_hi - n_lo + 1; }
  Real k(int i) const { return n_lo + i + kappa; }
  int index_of(int n) const { return n - n_lo; }
};

// Complex coefficient vector over a momentum grid.
struct MomentumState {
  MomentumGrid grid;
  VectorXcd coeff;
};

}  // namespace wsr

#endif  // WSR_TYPES_HPP
