// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsr/bloch.hpp"

#include <cmath>

using namespace wsr;

TEST_CASE("free particle bands fold the parabola") {
  PeriodicPotential V;  // zero
  const BlochBandTable t = bloch_bands(V, 1.0, 4, 16, 8);
  for (int j = 0; j < t.n_kappa(); ++j) {
    const Real kap = t.kappa[j];
    std::vector<Real> expect;
    for (int n = -4; n <= 4; ++n) expect.push_back(0.5 * (n + kap) * (n + kap));
    std::sort(expect.begin(), expect.end());
    for (int a = 0; a < 4; ++a) CHECK(t.bands(a, j) == doctest::Approx(expect[a]).epsilon(1e-12));
  }
}

TEST_CASE("cosine lattice: band edges against a four-times-larger basis") {
  const PeriodicPotential V = cosine_lattice();
  const BlochBandTable t = bloch_bands(V, 1.0, 4, 32, 12);
  const BlochBandTable big = bloch_bands(V, 1.0, 4, 32, 48);
  int below_barrier = 0;
  for (int a = 0; a < 4; ++a) {
    CHECK(std::abs(t.bands(a, 3) - big.bands(a, 3)) < 1e-10);
    CHECK(std::abs(t.band_mean(a) - big.band_mean(a)) < 1e-10);
    if (t.band_max(a) < 1.0) ++below_barrier;
  }
  CHECK(below_barrier == 2);  // two bands entirely under the barrier top
  // ordering and kappa symmetry
  for (int j = 0; j < t.n_kappa(); ++j)
    for (int a = 0; a + 1 < 4; ++a) CHECK(t.bands(a, j) <= t.bands(a + 1, j));
  for (int j = 0; j < t.n_kappa() / 2; ++j)
    CHECK(t.bands(0, j) == doctest::Approx(t.bands(0, t.n_kappa() - 1 - j)).epsilon(1e-12));
}

TEST_CASE("weak lattice joins the free spectrum continuously") {
  const PeriodicPotential V = cosine_lattice(1e-3);
  const BlochBandTable t = bloch_bands(V, 1.0, 3, 16, 10);
  PeriodicPotential free_V;
  const BlochBandTable f = bloch_bands(free_V, 1.0, 3, 16, 10);
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < t.n_kappa(); ++j)
      CHECK(std::abs(t.bands(a, j) - f.bands(a, j)) < 2e-3);
}

TEST_CASE("Wannier functions: locality, covariance, orthonormality") {
  const PeriodicPotential V = cosine_lattice();
  const BlochBandTable t = bloch_bands(V, 1.0, 3, 64, 12);
  const WannierFunction w0 = wannier_function(t, 0, 0);
  const WannierFunction w1 = wannier_function(t, 0, 1);
  const WannierFunction e0 = wannier_function(t, 1, 0);

  // translation covariance: the site-1 state on its grid equals the site-0
  // state on a grid shifted by one period
  REQUIRE(w0.x.size() == w1.x.size());
  for (std::size_t i = 0; i < w0.x.size(); ++i) {
    CHECK(w1.x[i] == doctest::Approx(w0.x[i] + two_pi).epsilon(1e-12));
    CHECK(w1.values(i) == doctest::Approx(w0.values(i)).epsilon(1e-9));
  }

  // home-cell concentration: adjacent-well occupancy below 1e-5
  const Real dx = w0.x[1] - w0.x[0];
  // wells of the cosine lattice sit at x = pi mod 2 pi; probe the inner
  // half of each cell so boundary samples do not dominate the tiny lobes
  auto cell_weight = [&](const WannierFunction& w, int cell) {
    Real acc = 0;
    for (std::size_t i = 0; i < w.x.size(); ++i)
      if (std::abs(w.x[i] - two_pi * cell - M_PI) <= 0.5 * M_PI) acc += w.values(i) * w.values(i) * dx;
    return acc;
  };
  CHECK(cell_weight(w0, 1) / cell_weight(w0, 0) < 1e-5);
  CHECK(cell_weight(w0, -1) / cell_weight(w0, 0) < 1e-5);
  CHECK(cell_weight(w0, 1) == doctest::Approx(cell_weight(w0, -1)).epsilon(1e-3));

  // occupancy at the adjacent well centers below 1e-5
  auto prob_at = [&](const WannierFunction& w, Real x0) {
    Real best = 1e9, v = 0;
    for (std::size_t i = 0; i < w.x.size(); ++i)
      if (std::abs(w.x[i] - x0) < best) {
        best = std::abs(w.x[i] - x0);
        v = w.values(i);
      }
    return v * v;
  };
  CHECK(prob_at(w0, 3 * M_PI) / prob_at(w0, M_PI) < 1e-5);
  CHECK(prob_at(w0, -M_PI) / prob_at(w0, M_PI) < 1e-5);

  // exponential side-lobe decay: cell weights drop steadily with distance
  CHECK(cell_weight(w0, 2) < 0.2 * cell_weight(w0, 1));

  // orthonormality by quadrature
  auto overlap = [&](const WannierFunction& a, const WannierFunction& b, int shift_cells) {
    // b's grid sits shift_cells periods to the right of a's
    Real acc = 0;
    const int di = shift_cells * 64;
    for (int i = 0; i < int(a.x.size()); ++i) {
      const int j = i + di;  // align x values: b.x[j] = a.x[i] requires j = i - di... probe safely
      if (j < 0 || j >= int(b.x.size())) continue;
      if (std::abs(b.x[j] - a.x[i]) > 1e-9) continue;
      acc += a.values(i) * b.values(j) * dx;
    }
    return acc;
  };
  CHECK(overlap(w0, w0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(overlap(w0, e0, 0)) < 1e-8);
  CHECK(std::abs(overlap(w0, w1, 1)) < 1e-8);
}

TEST_CASE("tight-binding amplitudes: Bessel limit and normalization") {
  const VectorXd trivial = tight_binding_state(2, 0.0, 0.05, -6, 6);
  for (int m = -6; m <= 6; ++m)
    CHECK(trivial(m + 6) == doctest::Approx(m == 2 ? 1.0 : 0.0));
  const VectorXd c = tight_binding_state(0, 0.8, 0.02, -40, 40);
  CHECK(c.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
  // against the Bessel sum rule the window renormalization is negligible
  const Real z = 0.8 / (2.0 * two_pi * 0.02);
  CHECK(c(40) == doctest::Approx(bessel_j(0, z)).epsilon(1e-9));   // site m = 0
  CHECK(c(43) == doctest::Approx(bessel_j(3, z)).epsilon(1e-9));   // site m = 3
}

TEST_CASE("interband rate: suppression limits") {
  const LandauZenerRate weak = landau_zener_rate(1.0, 1.0, -1.0, 1e-3, 1.0);
  CHECK(weak.width < 1e-15);
  const LandauZenerRate diabatic = landau_zener_rate(0.0, 1.0, -1.0, 0.1, 1.0);
  CHECK(diabatic.probability == doctest::Approx(1.0));
  CHECK_THROWS_AS(landau_zener_rate(0.1, 0.0, 0.0, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("driven single-band dispersion") {
  const PeriodicPotential V = cosine_lattice();
  const BlochBandTable t = bloch_bands(V, 2.0, 2, 64, 12);
  const std::vector<Real> coeff = t.dispersion_fourier(0);
  SUBCASE("no drive: flat band at the mean energy") {
    SystemParams p = dc_params(2.0, 0.08);
    for (Real kap : {0.0, 0.2, 0.45})
      CHECK(single_band_quasienergy(coeff, p, kap) == doctest::Approx(t.band_mean(0)).epsilon(1e-12));
  }
  SUBCASE("resonant drive rescales the cosine band by J1") {
    SystemParams p = ac_params(2.0, two_pi * 0.08 / 2.0, 0.3, 1, 1);
    const Real ratio = p.force_amplitude() / p.F;
    const std::vector<Real> cosine_band = {coeff[0], coeff[1]};
    const Real width_expect = std::abs(bessel_j(1, ratio)) * std::abs(2.0 * coeff[1]);
    const Real width = std::abs(single_band_quasienergy(cosine_band, p, 0.0) -
                                single_band_quasienergy(cosine_band, p, 0.5));
    CHECK(width == doctest::Approx(width_expect).epsilon(1e-12));
    // the drive always narrows the band
    CHECK(width < std::abs(2.0 * coeff[1]));
  }
  SUBCASE("band suppression at the first Bessel zero") {
    // root of J1 between 3.5 and 4.2 by bisection (independent oracle)
    Real lo = 3.5, hi = 4.2;
    for (int i = 0; i < 200; ++i) {
      const Real mid = 0.5 * (lo + hi);
      if (bessel_j(1, lo) * bessel_j(1, mid) <= 0)
        hi = mid;
      else
        lo = mid;
    }
    const Real j1zero = 0.5 * (lo + hi);
    CHECK(j1zero == doctest::Approx(3.8317).epsilon(1e-4));
    SystemParams p = dc_params(2.0, 0.08);
    p.omega = two_pi * p.F / p.hbar;
    p.p = p.q = 1;
    p.eps = j1zero * p.F / (p.omega * p.omega);  // F_omega / F at the zero
    std::vector<Real> cosine_band = {coeff[0], coeff[1]};  // strictly one harmonic
    const Real width = std::abs(single_band_quasienergy(cosine_band, p, 0.0) -
                                single_band_quasienergy(cosine_band, p, 0.5));
    CHECK(width < 1e-10);
  }
}
