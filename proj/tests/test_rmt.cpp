// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsr/rmt.hpp"
#include "wsr/stats.hpp"

#include <cmath>

using namespace wsr;

TEST_CASE("composed ensemble members are unitary with circular statistics") {
  std::mt19937_64 rng(42);
  const int N = 40;
  std::vector<Real> phases;
  std::vector<Real> spacings;
  for (int m = 0; m < 150; ++m) {
    const MatrixXcd U = sample_cue(N, rng);
    if (m < 5)
      CHECK((U.adjoint() * U - MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff() < 1e-12);
    const VectorXcd ev = U.eigenvalues();
    std::vector<Real> ph(N);
    for (int i = 0; i < N; ++i) ph[i] = std::arg(ev(i));
    std::sort(ph.begin(), ph.end());
    for (int i = 0; i < N; ++i) {
      phases.push_back((ph[i] + M_PI) / two_pi);
      const Real gap = (i + 1 < N ? ph[i + 1] : ph[0] + two_pi) - ph[i];
      spacings.push_back(gap * N / two_pi);
    }
  }
  // eigenphases uniform on the circle
  const KsResult ks = ks_test_uniform(phases);
  CHECK(ks.p_value > 0.01);
  // nearest-neighbour spacing follows the unitary-class surmise
  const Histogram h = make_histogram(spacings, linear_edges(0.0, 3.2, 32));
  const auto probs = bin_probabilities(wigner_surmise_unitary, h.edges);
  const ChiSquareResult chi = chi_square_test(h, probs);
  CHECK(chi.p_value > 0.01);
}

TEST_CASE("truncated embedding: rank structure and contraction") {
  std::mt19937_64 rng(3);
  const int N = 24, M = 2;
  const MatrixXcd B = embed_truncated(sample_cue(N, rng), M);
  REQUIRE(B.rows() == N + M);
  // nullity M by rank
  Eigen::JacobiSVD<MatrixXcd> svd(B);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-12) ++rank;
  CHECK(rank == N);
  // eigenvalues: N - M away from zero, all inside the closed unit disk
  const VectorXcd ev = B.eigenvalues();
  int nonzero = 0;
  for (int i = 0; i < ev.size(); ++i) {
    CHECK(std::abs(ev(i)) <= 1.0 + 1e-10);
    if (std::abs(ev(i)) > 1e-6) ++nonzero;
  }
  CHECK(nonzero == N - M);
}

TEST_CASE("width samples match the analytic law for one channel") {
  RmtEnsembleConfig cfg;
  cfg.N = 40;
  cfg.M = 1;
  cfg.n_matrices = 400;
  cfg.seed = 9;
  const std::vector<Real> widths = rmt_resonances(cfg);
  CHECK(widths.size() == std::size_t(cfg.n_matrices) * (cfg.N - cfg.M));
  const Histogram h = make_histogram(widths, log_edges_freedman_diaconis(widths));
  const auto probs =
      bin_probabilities([&](Real g) { return width_distribution_theory(g, 1); }, h.edges);
  const ChiSquareResult chi = chi_square_test(h, probs);
  CHECK(chi.p_value > 0.01);
  // reproducibility: identical seed, identical samples
  const std::vector<Real> again = rmt_resonances(cfg);
  REQUIRE(again.size() == widths.size());
  for (std::size_t i = 0; i < widths.size(); i += 997) CHECK(again[i] == widths[i]);
}

TEST_CASE("width law: asymptotics, normalization, branch continuity") {
  for (int M : {1, 2, 3}) {
    // large-width tail ~ M / (2 G^2)
    for (Real g : {30.0, 60.0})
      CHECK(width_distribution_theory(g, M) == doctest::Approx(M / (2.0 * g * g)).epsilon(0.05));
    // small-width rise ~ G^{M-1}
    const Real r = width_distribution_theory(2e-3, M) / width_distribution_theory(1e-3, M);
    CHECK(r == doctest::Approx(std::pow(2.0, M - 1)).epsilon(0.02));
    // unit normalization by quadrature
    const Real tail_cut = 4000.0;
    const Real body = integrate_adaptive([&](Real g) { return width_distribution_theory(g, M); },
                                         1e-9, tail_cut, 1e-9);
    const Real tail = M / (2.0 * tail_cut);  // integral of the asymptote
    CHECK(body + tail == doctest::Approx(1.0).epsilon(1e-4));
    // series and closed form agree across the switch
    CHECK(width_distribution_theory(0.999, M) ==
          doctest::Approx(width_distribution_theory(1.001, M)).epsilon(1e-3));
  }
}

TEST_CASE("partial delay density: mode, normalization, convolution") {
  for (int M : {1, 2}) {
    const Real mode = 1.0 / (M + 2);
    CHECK(partial_delay_distribution(mode * 1.05, M) < partial_delay_distribution(mode, M));
    CHECK(partial_delay_distribution(mode * 0.95, M) < partial_delay_distribution(mode, M));
    const Real norm = integrate_adaptive(
        [&](Real t) { return partial_delay_distribution(t, M); }, 1e-6, 4000.0, 1e-9);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-4));
  }
  // the M-fold convolution stays normalized on a wide grid
  std::vector<Real> grid(1200);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 12.0 * (i + 0.5) / grid.size();
  const std::vector<Real> conv = partial_delay_sum_distribution(grid, 2);
  Real total = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    total += conv[i] * (grid[i + 1] - grid[i]);
  CHECK(total == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("resolvent delay: empty interior gives one, Smith route agrees") {
  const int N = 18, M = 2;
  const MatrixXcd zero = MatrixXcd::Zero(N + M, N + M);
  CHECK(rmt_delay_time(zero, 0.77, M) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(11);
  const MatrixXcd B = embed_truncated(sample_cue(N, rng), M);
  auto smatrix = [&](Real E) {
    const MatrixXcd A = B - std::exp(Complex(0, -E)) * MatrixXcd::Identity(N + M, N + M);
    MatrixXcd rhs = MatrixXcd::Zero(N + M, M);
    rhs.block(0, 0, M, M) = MatrixXcd::Identity(M, M);
    const MatrixXcd cols = A.partialPivLu().solve(rhs);
    return MatrixXcd(cols.bottomRows(M));
  };
  for (Real E : {0.3, 1.7, 4.1}) {
    const Real dE = 1e-6;
    const MatrixXcd S = smatrix(E);
    const MatrixXcd dS = (smatrix(E + dE) - smatrix(E - dE)) / (2 * dE);
    // unitarity of the reduced scattering matrix
    CHECK((S.adjoint() * S - MatrixXcd::Identity(M, M)).cwiseAbs().maxCoeff() < 1e-10);
    // the reduced S-matrix has no free-motion reference, so its Smith trace
    // equals the resolvent-norm dwell time directly; the physical gain/loss
    // convention subtracts N afterwards
    const Real smith = (Complex(0, -1) * (S.adjoint() * dS)).real().trace() / M;
    const Real norm_route = rmt_delay_time(B, E, M);
    CHECK(std::abs(smith - norm_route) < 1e-5 * std::max(1.0, std::abs(smith)));
  }
}

TEST_CASE("delay-time samples for one channel peak near one third") {
  // one energy per draw keeps the samples independent; the law holds in the
  // large-N limit, so the interior size is taken generously
  RmtEnsembleConfig cfg;
  cfg.N = 80;
  cfg.M = 1;
  cfg.n_matrices = 800;
  cfg.seed = 77;
  const std::vector<Real> taus = rmt_delay_samples(cfg, 1);
  const Histogram h = make_histogram(taus, linear_edges(0.0, 3.0, 24));
  int imax = 0;
  for (int i = 0; i < h.bins(); ++i)
    if (h.counts[i] > h.counts[imax]) imax = i;
  CHECK(h.center(imax) == doctest::Approx(1.0 / 3).epsilon(0.2));
  const auto probs =
      bin_probabilities([&](Real t) { return partial_delay_distribution(t, 1); }, h.edges);
  const ChiSquareResult chi = chi_square_test(h, probs);
  CHECK(chi.p_value > 0.01);
}

TEST_CASE("survival law: limits and power-law tail") {
  CHECK(rmt_survival(0.0, 0.3, 2.0) == doctest::Approx(1.0));
  // q -> infinity approaches the exponential
  for (Real t : {0.5, 5.0, 16.6667})
    CHECK(rmt_survival(t, 0.3, 1e6) == doctest::Approx(std::exp(-0.3 * t)).epsilon(1e-4));
  // asymptotic inverse power law t^{-q}
  for (Real q : {1.0, 2.0, 3.0}) {
    const Real r = rmt_survival(2e4, 1.0, q) / rmt_survival(1e4, 1.0, q);
    CHECK(std::log(r) / std::log(2.0) == doctest::Approx(-q).epsilon(1e-3));
  }
}
