// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_STATS_HPP
#define WSR_STATS_HPP

#include "wsr/types.hpp"

#include <functional>

namespace wsr {

struct Histogram {
  std::vector<Real> edges;   // size bins+1
  std::vector<Real> counts;  // size bins
  std::size_t total = 0;

  int bins() const { return int(counts.size()); }
  Real center(int i) const { return 0.5 * (edges[i] + edges[i + 1]); }
  Real width(int i) const { return edges[i + 1] - edges[i]; }
  // counts / (total * bin width)
  Real density(int i) const { return counts[i] / (Real(total) * width(i)); }
};

Histogram make_histogram(const std::vector<Real>& data, const std::vector<Real>& edges);
std::vector<Real> linear_edges(Real lo, Real hi, int bins);
// Freedman-Diaconis bin count on log10 of the (positive) data.
std::vector<Real> log_edges_freedman_diaconis(std::vector<Real> data);

struct ChiSquareResult {
  Real chi2 = 0.0;
  int dof = 0;
  Real p_value = 0.0;
};

// Pearson test of a histogram against expected bin probabilities; bins are
// merged left-to-right until every expected count is >= min_expected.
ChiSquareResult chi_square_test(const Histogram& hist, const std::vector<Real>& bin_probability,
                                Real min_expected = 5.0);

// Expected bin probabilities for a density, by adaptive Simpson per bin.
std::vector<Real> bin_probabilities(const std::function<Real(Real)>& density,
                                    const std::vector<Real>& edges);

struct KsResult {
  Real statistic = 0.0;
  Real p_value = 0.0;
};

// Kolmogorov-Smirnov test of samples in [0, 1] against the uniform law.
KsResult ks_test_uniform(std::vector<Real> samples);

// Unit-mean Wigner surmise for the unitary symmetry class.
Real wigner_surmise_unitary(Real s);

// Regularized upper incomplete gamma Q(a, x).
Real gamma_q(Real a, Real x);

// Adaptive Simpson quadrature.
Real integrate_adaptive(const std::function<Real(Real)>& f, Real a, Real b, Real tol = 1e-10,
                        int max_depth = 30);

struct LineFit {
  Real slope = 0.0;
  Real intercept = 0.0;
  Real r2 = 0.0;
};

LineFit fit_line(const std::vector<Real>& x, const std::vector<Real>& y);

// Exponential tail P(tau) ~ exp(-rate*tau): linear fit of the log-histogram
// over [q_lo, q_hi] sample quantiles.
LineFit fit_exponential_tail(const std::vector<Real>& samples, Real q_lo = 0.5, Real q_hi = 0.99,
                             int bins = 40);

// Damped Gauss-Newton least squares with numerical Jacobian; returns the
// parameter vector minimizing |residual(theta)|^2.
VectorXd fit_least_squares(const std::function<VectorXd(const VectorXd&)>& residual,
                           VectorXd theta0, int max_iter = 200, Real step_tol = 1e-10);

}  // namespace wsr

#endif  // WSR_STATS_HPP
