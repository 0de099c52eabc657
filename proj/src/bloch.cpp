// SPDX-License-Identifier: Apache-2.0
#include "wsr/bloch.hpp"

#include <cmath>

namespace wsr {

Real bessel_j(int n, Real x) {
  const int na = std::abs(n);
  const Real xa = std::abs(x);
  Real v = std::cyl_bessel_j(Real(na), xa);
  if (n < 0 && (na % 2)) v = -v;
  if (x < 0 && (na % 2)) v = -v;
  return v;
}

namespace {

MatrixXcd field_free_hamiltonian(const PeriodicPotential& V, Real hbar, Real kappa, int N) {
  MatrixXcd H = V.toeplitz_block(N);
  for (int i = 0; i <= 2 * N; ++i) {
    const Real k = (i - N) + kappa;
    H(i, i) += 0.5 * hbar * hbar * k * k;
  }
  return H;
}

Real hermite(int n, Real x) {
  Real h0 = 1.0, h1 = 2.0 * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const Real h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// Momentum-space amplitude of a real oscillator-like trial centered at the
// potential minimum: band alpha uses the alpha-th oscillator function, so
// the projection never vanishes for well-supported bands of either parity.
Complex trial_amplitude(int alpha, Real k, Real width, Real x_min) {
  const Complex parity = std::pow(Complex(0, -1), alpha);
  return parity * hermite(alpha, k * width) * std::exp(-0.5 * k * k * width * width) *
         std::exp(Complex(0, -k * x_min));
}

// The gauge: phase of <trial|phi_kappa> rotated to be real positive.  Time
// reversal (phi_{-kappa} = conj(phi_kappa)) then extends the section to a
// smooth periodic one with real Wannier transforms.
void project_phase(VectorXcd& v, int alpha, Real kappa, int N, Real width, Real x_min) {
  Complex ov(0, 0);
  for (int n = -N; n <= N; ++n)
    ov += std::conj(trial_amplitude(alpha, n + kappa, width, x_min)) * v(n + N);
  if (std::abs(ov) < 1e-10)
    throw NumericalError("bloch_bands: projection trial orthogonal to band " +
                         std::to_string(alpha) + "; gauge undefined");
  v *= std::conj(ov) / std::abs(ov);
}

}  // namespace

BlochBandTable bloch_bands(const PeriodicPotential& V, Real hbar, int n_bands, int kappa_points,
                           int basis_N) {
  if (n_bands < 1 || kappa_points < 2) throw std::invalid_argument("bloch_bands: bad sizes");
  if (kappa_points % 2) ++kappa_points;  // mirror pairing needs an even grid
  int N = basis_N;
  if (N <= 0) N = std::max({2 * n_bands + 4, V.fourier_order() + 4, 8});
  if (n_bands > N)
    throw NumericalError("bloch_bands: basis too small for requested band count");

  const int M = kappa_points;
  BlochBandTable table;
  table.hbar = hbar;
  table.N = N;
  table.kappa.resize(M);
  table.bands.resize(n_bands, M);
  table.vectors.assign(M, MatrixXcd());

  // Trial parameters: the well position and curvature of the potential.
  Real x_min = 0.0, v_min = std::numeric_limits<Real>::max();
  for (int i = 0; i < 1024; ++i) {
    const Real x = two_pi * i / 1024;
    if (V(x) < v_min) {
      v_min = V(x);
      x_min = x;
    }
  }
  Real curvature = 0.0;
  {
    const Real h = 1e-4;
    curvature = (V(x_min + h) - 2 * V(x_min) + V(x_min - h)) / (h * h);
  }
  const Real omega0 = curvature > 1e-9 ? std::sqrt(curvature) : 1.0;
  const Real width = std::sqrt(hbar / omega0);

  // Midpoint grid kappa_j = -1/2 + (j+1/2)/M: uniform over the zone, no
  // edge points, and j <-> M-1-j realizes kappa <-> -kappa exactly.  Solve
  // for kappa > 0 in the projection gauge, mirror the rest by the
  // conjugation symmetry of the real potential.
  for (int j = 0; j < M; ++j) table.kappa[j] = -0.5 + (j + 0.5) / M;

  table.gauge_overlap.assign(n_bands, 1.0);
  // Solve on the positive side; the anchor phase comes from the trial
  // projection, the rest by parallel transport.
  for (int j = M / 2; j < M; ++j) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(field_free_hamiltonian(V, hbar, table.kappa[j], N));
    MatrixXcd vecs(2 * N + 1, n_bands);
    for (int a = 0; a < n_bands; ++a) {
      table.bands(a, j) = es.eigenvalues()(a);
      VectorXcd v = es.eigenvectors().col(a);
      if (j == M / 2) {
        project_phase(v, a, table.kappa[j], N, width, x_min);
      } else {
        const Complex ov = (table.vectors[j - 1].col(a).adjoint() * v)(0);
        table.gauge_overlap[a] = std::min(table.gauge_overlap[a], std::abs(ov));
        if (std::abs(ov) > 0) v *= std::conj(ov) / std::abs(ov);
      }
      vecs.col(a) = v;
    }
    table.vectors[j] = vecs;
  }
  auto mirror_down = [&](void) {
    for (int j = 0; j < M / 2; ++j) {
      const int jm = M - 1 - j;  // mirror partner, kappa_jm = -kappa_j
      MatrixXcd vecs(2 * N + 1, n_bands);
      for (int a = 0; a < n_bands; ++a) {
        table.bands(a, j) = table.bands(a, jm);
        for (int n = -N; n <= N; ++n) vecs(n + N, a) = std::conj(table.vectors[jm](-n + N, a));
      }
      table.vectors[j] = vecs;
    }
  };
  mirror_down();
  // Close the section on the kappa circle.  Across kappa = 0 the mirror
  // fixes the anchor phase up to a sign-like rotation; across the zone edge
  // the wrapped continuation is the index-shifted first point, and any
  // residual loop phase is distributed linearly in kappa.
  for (int a = 0; a < n_bands; ++a) {
    const Complex w0 = (table.vectors[M / 2 - 1].col(a).adjoint() * table.vectors[M / 2].col(a))(0);
    if (std::abs(w0) > 0) {
      const Complex rot = std::exp(Complex(0, -0.5 * std::arg(w0)));
      for (int j = M / 2; j < M; ++j) table.vectors[j].col(a) *= rot;
    }
  }
  mirror_down();
  for (int a = 0; a < n_bands; ++a) {
    VectorXcd shifted(2 * N + 1);  // first grid point continued past the edge
    shifted.setZero();
    for (int n = -N; n < N; ++n) shifted(n + N) = table.vectors[0]((n + 1) + N, a);
    const Complex w1 = (table.vectors[M - 1].col(a).adjoint() * shifted)(0);
    if (std::abs(w1) > 0) {
      const Real theta = std::arg(w1);
      for (int j = M / 2; j < M; ++j)
        table.vectors[j].col(a) *= std::exp(Complex(0, -theta * table.kappa[j]));
    }
  }
  mirror_down();
  return table;
}

std::vector<Real> BlochBandTable::dispersion_fourier(int alpha, int n_terms) const {
  const int M = n_kappa();
  std::vector<Real> c(n_terms, 0.0);
  for (int nu = 0; nu < n_terms; ++nu) {
    Real acc = 0.0;
    for (int j = 0; j < M; ++j) acc += bands(alpha, j) * std::cos(two_pi * nu * kappa[j]);
    c[nu] = (nu == 0 ? 1.0 : 2.0) * acc / M;
  }
  return c;
}

WannierFunction wannier_function(const BlochBandTable& table, int alpha, int l, int span_periods,
                                 int points_per_period) {
  if (alpha < 0 || alpha >= table.n_bands())
    throw std::invalid_argument("wannier_function: band index out of range");
  if (table.gauge_overlap.at(alpha) < 0.99)
    throw NumericalError("wannier_function: non-smooth gauge (adjacent-kappa overlap " +
                         std::to_string(table.gauge_overlap[alpha]) + " < 0.99)");
  const int M = table.n_kappa();
  const int N = table.N;
  const int npts = 2 * span_periods * points_per_period;
  WannierFunction w;
  w.alpha = alpha;
  w.site = l;
  w.x.resize(npts);
  VectorXcd psi = VectorXcd::Zero(npts);
  for (int i = 0; i < npts; ++i)
    w.x[i] = two_pi * l + two_pi * span_periods * (Real(i) / (span_periods * points_per_period) - 1.0);
  for (int j = 0; j < M; ++j) {
    const Real kap = table.kappa[j];
    const Complex ph = std::exp(Complex(0, -two_pi * l * kap));
    for (int i = 0; i < npts; ++i) {
      Complex amp(0, 0);
      for (int n = -N; n <= N; ++n)
        amp += table.vectors[j](n + N, alpha) * std::exp(Complex(0, (n + kap) * w.x[i]));
      psi(i) += ph * amp;
    }
  }
  const Real imag_norm = psi.imag().norm();
  const Real full_norm = psi.norm();
  if (imag_norm > 1e-6 * full_norm)
    throw NumericalError("wannier_function: result not real, gauge not smooth");
  w.values = psi.real();
  const Real dx = w.x[1] - w.x[0];
  w.values /= w.values.norm() * std::sqrt(dx);
  return w;
}

VectorXd tight_binding_state(int l, Real delta_alpha, Real F, int m_lo, int m_hi) {
  if (F <= 0) throw std::invalid_argument("tight_binding_state: F > 0 required");
  if (m_hi < m_lo) throw std::invalid_argument("tight_binding_state: empty site window");
  const Real z = delta_alpha / (2.0 * two_pi * F);  // Delta / (2 d F), d = 2 pi
  VectorXd c(m_hi - m_lo + 1);
  for (int m = m_lo; m <= m_hi; ++m) c(m - m_lo) = bessel_j(m - l, z);
  c /= c.norm();
  return c;
}

LandauZenerRate landau_zener_rate(Real gap, Real slope_lower, Real slope_upper, Real F, Real hbar) {
  if (slope_lower == 0.0 || slope_upper == 0.0)
    throw std::invalid_argument("landau_zener_rate: singular (zero) band slopes");
  if (F <= 0 || hbar <= 0) throw std::invalid_argument("landau_zener_rate: F, hbar > 0 required");
  LandauZenerRate out;
  out.b = M_PI * gap * gap / (8.0 * hbar * (std::abs(slope_lower) + std::abs(slope_upper)));
  out.probability = std::exp(-out.b / F);
  out.a = 1.0;  // one crossing per Bloch cycle: Gamma = P hbar / T_B = P F
  out.width = out.a * F * out.probability;
  return out;
}

Real single_band_quasienergy(const std::vector<Real>& band_fourier, const SystemParams& params,
                             Real kappa) {
  params.validate();
  const Real ratio = params.force_amplitude() / params.F;
  Real E = band_fourier.empty() ? 0.0 : band_fourier[0];
  for (int mu = 1; std::size_t(mu) * params.p < band_fourier.size(); ++mu) {
    const Real term = bessel_j(mu * params.q, mu * params.q * ratio) *
                      band_fourier[std::size_t(mu) * params.p] *
                      std::cos(two_pi * params.p * mu * kappa);
    E += term;
    if (std::abs(term) < 1e-14 && mu > 1) break;
  }
  return E;
}

}  // namespace wsr
