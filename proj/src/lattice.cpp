// SPDX-License-Identifier: Apache-2.0
#include "wsr/lattice.hpp"

#include <cmath>

namespace wsr {

void SystemParams::validate() const {
  if (hbar <= 0) throw std::invalid_argument("SystemParams: hbar must be positive");
  if (eps < 0) throw std::invalid_argument("SystemParams: eps must be >= 0");
  if (eps > 0) {
    if (omega <= 0) throw std::invalid_argument("SystemParams: driven case needs omega > 0");
    if (p < 1 || q < 1) throw std::invalid_argument("SystemParams: p, q must be positive");
    // hbar*omega/(2*pi*F) = p/q
    const Real gamma = hbar * omega / (two_pi * F);
    if (std::abs(gamma - Real(p) / Real(q)) > 1e-12 * gamma)
      throw std::invalid_argument("SystemParams: p*T_omega = q*T_B violated");
  }
}

SystemParams dc_params(Real hbar, Real F) {
  SystemParams s;
  s.hbar = hbar;
  s.F = F;
  s.validate();
  return s;
}

SystemParams ac_params(Real hbar, Real omega, Real eps, int p, int q) {
  SystemParams s;
  s.hbar = hbar;
  s.omega = omega;
  s.eps = eps;
  s.p = p;
  s.q = q;
  s.F = hbar * omega * q / (two_pi * p);
  s.validate();
  return s;
}

SystemParams ac_params_with_force(Real hbar, Real F, Real omega, Real eps, int p, int q) {
  SystemParams s;
  s.hbar = hbar;
  s.F = F;
  s.omega = omega;
  s.eps = eps;
  s.p = p;
  s.q = q;
  s.validate();
  return s;
}

int PeriodicPotential::fourier_order() const {
  int order = 0;
  for (std::size_t n = 0; n < cos_coeffs.size(); ++n)
    if (cos_coeffs[n] != 0.0) order = std::max<int>(order, int(n));
  for (std::size_t n = 0; n < sin_coeffs.size(); ++n)
    if (sin_coeffs[n] != 0.0) order = std::max<int>(order, int(n) + 1);
  return order;
}

Real PeriodicPotential::operator()(Real x) const {
  Real v = 0.0;
  for (std::size_t n = 0; n < cos_coeffs.size(); ++n) v += cos_coeffs[n] * std::cos(n * x);
  for (std::size_t n = 0; n < sin_coeffs.size(); ++n) v += sin_coeffs[n] * std::sin((n + 1) * x);
  return v;
}

Real PeriodicPotential::operator()(Real x, Real t, const SystemParams& params) const {
  const Real arg = params.eps > 0 ? x + params.eps * std::cos(params.omega * t) : x;
  return (*this)(arg);
}

Real PeriodicPotential::grad(Real x) const {
  Real g = 0.0;
  for (std::size_t n = 1; n < cos_coeffs.size(); ++n) g -= cos_coeffs[n] * n * std::sin(n * x);
  for (std::size_t n = 0; n < sin_coeffs.size(); ++n) g += sin_coeffs[n] * (n + 1) * std::cos((n + 1) * x);
  return g;
}

Real PeriodicPotential::grad(Real x, Real t, const SystemParams& params) const {
  const Real arg = params.eps > 0 ? x + params.eps * std::cos(params.omega * t) : x;
  return grad(arg);
}

Complex PeriodicPotential::fourier(int k) const {
  const int n = std::abs(k);
  Complex v(0.0, 0.0);
  if (n == 0) {
    if (!cos_coeffs.empty()) v = cos_coeffs[0];
    return v;
  }
  if (n < int(cos_coeffs.size())) v += 0.5 * cos_coeffs[n];
  if (n - 1 < int(sin_coeffs.size())) {
    // sin(n x) = (e^{inx} - e^{-inx}) / 2i
    const Real s = sin_coeffs[n - 1];
    v += (k > 0) ? Complex(0.0, -0.5 * s) : Complex(0.0, 0.5 * s);
  }
  return v;
}

MatrixXcd PeriodicPotential::toeplitz_block(int N, Real shift) const {
  if (fourier_order() > N)
    throw std::invalid_argument("PeriodicPotential: Fourier order exceeds basis half-size N");
  const int dim = 2 * N + 1;
  MatrixXcd block = MatrixXcd::Zero(dim, dim);
  for (int d = -fourier_order(); d <= fourier_order(); ++d) {
    const Complex v = fourier(d) * std::exp(Complex(0.0, d * shift));
    if (v == Complex(0.0, 0.0)) continue;
    for (int m = std::max(0, d); m < std::min(dim, dim + d); ++m) block(m, m - d) = v;
  }
  return block;
}

PeriodicPotential cosine_lattice(Real amplitude) {
  PeriodicPotential V;
  V.cos_coeffs = {0.0, amplitude};
  return V;
}

PeriodicPotential tanh_box(Real barrier_frac, Real sigma, int n_harmonics) {
  if (barrier_frac <= 0 || barrier_frac >= 1) throw std::invalid_argument("tanh_box: barrier_frac in (0,1)");
  if (sigma <= 0 || n_harmonics < 1) throw std::invalid_argument("tanh_box: bad smoothing inputs");
  const Real half = barrier_frac * two_pi / 2.0;
  auto profile = [&](Real x) { return std::tanh(sigma * (x + half)) - std::tanh(sigma * (x - half)) - 1.0; };
  // Project onto cos harmonics (profile is even); trapezoid on a fine grid.
  const int M = 4096;
  std::vector<Real> c(n_harmonics + 1, 0.0);
  for (int j = 0; j < M; ++j) {
    const Real x = -M_PI + two_pi * j / M;
    const Real v = profile(x);
    c[0] += v / M;
    for (int n = 1; n <= n_harmonics; ++n) c[n] += 2.0 * v * std::cos(n * x) / M;
  }
  PeriodicPotential V;
  V.cos_coeffs.assign(c.begin(), c.end());
  // unit amplitude: max |V| = 1 on a sampling grid
  Real vmax = 0.0;
  for (int j = 0; j < M; ++j) vmax = std::max(vmax, std::abs(V(-M_PI + two_pi * j / M)));
  for (auto& a : V.cos_coeffs) a /= vmax;
  return V;
}

Real eval_potential(const PeriodicPotential& V, Real x, Real t, const SystemParams& params) {
  return V(x, t, params);
}

ScaledUnits scale_parameters(const PhysicalLattice& in) {
  if (in.mass <= 0 || in.period <= 0 || in.depth <= 0 || in.force < 0 || in.hbar_si <= 0)
    throw std::invalid_argument("scale_parameters: physical inputs must be positive");
  ScaledUnits out;
  const Real b = two_pi / in.period;  // x' = b x
  out.params.hbar = b * in.hbar_si / std::sqrt(in.mass * in.depth);
  out.params.F = in.force / (b * in.depth);
  out.energy_unit = in.depth;
  out.length_unit = 1.0 / b;
  out.time_unit = in.hbar_si / (in.depth * out.params.hbar);
  return out;
}

PhysicalLattice unscale_parameters(const ScaledUnits& scaled, Real mass, Real hbar_si) {
  PhysicalLattice out;
  out.mass = mass;
  out.hbar_si = hbar_si;
  out.period = two_pi * scaled.length_unit;
  const Real b = two_pi / out.period;
  out.depth = std::pow(b * hbar_si / scaled.params.hbar, 2) / mass;
  out.force = scaled.params.F * b * out.depth;
  return out;
}

ScaledUnits scale_optical_lattice(Real mass, Real laser_wavenumber, Real detuning,
                                  Real rabi_frequency, Real acceleration, Real hbar_si) {
  if (mass <= 0 || laser_wavenumber <= 0 || detuning <= 0 || rabi_frequency <= 0)
    throw std::invalid_argument("scale_optical_lattice: inputs must be positive");
  PhysicalLattice in;
  in.mass = mass;
  in.hbar_si = hbar_si;
  // standing wave cos(2 k_L x): spatial period pi / k_L
  in.period = M_PI / laser_wavenumber;
  in.depth = hbar_si * rabi_frequency * rabi_frequency / detuning;
  in.force = mass * acceleration;
  return scale_parameters(in);
}

}  // namespace wsr
