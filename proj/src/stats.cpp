// SPDX-License-Identifier: Apache-2.0
#include "wsr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wsr {

Histogram make_histogram(const std::vector<Real>& data, const std::vector<Real>& edges) {
  if (edges.size() < 2) throw std::invalid_argument("make_histogram: need at least one bin");
  Histogram h;
  h.edges = edges;
  h.counts.assign(edges.size() - 1, 0.0);
  for (Real v : data) {
    if (v < edges.front() || v >= edges.back()) continue;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    h.counts[std::size_t(it - edges.begin()) - 1] += 1.0;
    ++h.total;
  }
  return h;
}

std::vector<Real> linear_edges(Real lo, Real hi, int bins) {
  std::vector<Real> e(bins + 1);
  for (int i = 0; i <= bins; ++i) e[i] = lo + (hi - lo) * i / bins;
  return e;
}

std::vector<Real> log_edges_freedman_diaconis(std::vector<Real> data) {
  std::erase_if(data, [](Real v) { return !(v > 0); });
  if (data.size() < 8) throw std::invalid_argument("log_edges_freedman_diaconis: too few samples");
  for (Real& v : data) v = std::log10(v);
  std::sort(data.begin(), data.end());
  const Real q1 = data[data.size() / 4];
  const Real q3 = data[(3 * data.size()) / 4];
  Real width = 2.0 * (q3 - q1) / std::cbrt(Real(data.size()));
  if (width <= 0) width = (data.back() - data.front()) / 16.0;
  int bins = std::max(4, int(std::ceil((data.back() - data.front()) / width)));
  bins = std::min(bins, 200);
  std::vector<Real> e = linear_edges(data.front(), data.back() + 1e-9, bins);
  for (Real& v : e) v = std::pow(10.0, v);
  return e;
}

namespace {

Real gamma_p_series(Real a, Real x) {
  Real sum = 1.0 / a, term = sum;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

Real gamma_q_contfrac(Real a, Real x) {
  // Lentz continued fraction for Q(a, x).
  const Real tiny = 1e-300;
  Real b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const Real an = -Real(i) * (Real(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Real del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

Real gamma_q(Real a, Real x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

ChiSquareResult chi_square_test(const Histogram& hist, const std::vector<Real>& bin_probability,
                                Real min_expected) {
  if (bin_probability.size() != hist.counts.size())
    throw std::invalid_argument("chi_square_test: bin mismatch");
  // Merge adjacent bins until each expected count reaches the floor.
  std::vector<Real> obs, exp;
  Real o = 0.0, e = 0.0;
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    o += hist.counts[i];
    e += bin_probability[i] * hist.total;
    if (e >= min_expected) {
      obs.push_back(o);
      exp.push_back(e);
      o = e = 0.0;
    }
  }
  if (!obs.empty() && e > 0) {  // fold the remainder into the last kept bin
    obs.back() += o;
    exp.back() += e;
  }
  ChiSquareResult r;
  if (obs.size() < 2) throw std::invalid_argument("chi_square_test: too few populated bins");
  for (std::size_t i = 0; i < obs.size(); ++i)
    r.chi2 += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  r.dof = int(obs.size()) - 1;
  r.p_value = gamma_q(0.5 * r.dof, 0.5 * r.chi2);
  return r;
}

std::vector<Real> bin_probabilities(const std::function<Real(Real)>& density,
                                    const std::vector<Real>& edges) {
  std::vector<Real> p(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    p[i] = integrate_adaptive(density, edges[i], edges[i + 1], 1e-9);
  return p;
}

KsResult ks_test_uniform(std::vector<Real> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  if (n == 0) throw std::invalid_argument("ks_test_uniform: empty sample");
  Real d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d = std::max(d, std::abs(samples[i] - Real(i) / n));
    d = std::max(d, std::abs(Real(i + 1) / n - samples[i]));
  }
  KsResult r;
  r.statistic = d;
  const Real rn = std::sqrt(Real(n));
  const Real lam = (rn + 0.12 + 0.11 / rn) * d;
  Real p = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const Real term = 2.0 * std::pow(-1.0, j - 1) * std::exp(-2.0 * j * j * lam * lam);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  r.p_value = std::clamp(p, 0.0, 1.0);
  return r;
}

Real wigner_surmise_unitary(Real s) {
  return 32.0 / (M_PI * M_PI) * s * s * std::exp(-4.0 * s * s / M_PI);
}

namespace {

Real simpson(const std::function<Real(Real)>& f, Real a, Real fa, Real b, Real fb, Real m, Real fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

Real adapt(const std::function<Real(Real)>& f, Real a, Real fa, Real b, Real fb, Real m, Real fm,
           Real whole, Real tol, int depth) {
  const Real lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const Real flm = f(lm), frm = f(rm);
  const Real left = simpson(f, a, fa, m, fm, lm, flm);
  const Real right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

Real integrate_adaptive(const std::function<Real(Real)>& f, Real a, Real b, Real tol,
                        int max_depth) {
  // composite first pass so narrow features cannot hide from the refinement
  const int panels = 32;
  Real total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const Real x0 = a + (b - a) * i / panels;
    const Real x1 = a + (b - a) * (i + 1) / panels;
    const Real m = 0.5 * (x0 + x1);
    const Real fa = f(x0), fb = f(x1), fm = f(m);
    total += adapt(f, x0, fa, x1, fb, m, fm, simpson(f, x0, fa, x1, fb, m, fm), tol / panels,
                   max_depth);
  }
  return total;
}

LineFit fit_line(const std::vector<Real>& x, const std::vector<Real>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: bad input");
  const Real n = Real(x.size());
  const Real sx = std::accumulate(x.begin(), x.end(), 0.0);
  const Real sy = std::accumulate(y.begin(), y.end(), 0.0);
  Real sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LineFit f;
  const Real denom = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  const Real ss_res = syy - 2 * f.slope * sxy - 2 * f.intercept * sy + f.slope * f.slope * sxx +
                      2 * f.slope * f.intercept * sx + n * f.intercept * f.intercept;
  const Real ss_tot = syy - sy * sy / n;
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

LineFit fit_exponential_tail(const std::vector<Real>& samples, Real q_lo, Real q_hi, int bins) {
  std::vector<Real> s = samples;
  std::sort(s.begin(), s.end());
  const Real lo = s[std::size_t(q_lo * (s.size() - 1))];
  const Real hi = s[std::size_t(q_hi * (s.size() - 1))];
  if (!(hi > lo)) throw std::invalid_argument("fit_exponential_tail: degenerate quantile window");
  const Histogram h = make_histogram(s, linear_edges(lo, hi, bins));
  std::vector<Real> xs, ys;
  for (int i = 0; i < h.bins(); ++i)
    if (h.counts[i] > 0) {
      xs.push_back(h.center(i));
      ys.push_back(std::log(h.density(i)));
    }
  LineFit f = fit_line(xs, ys);
  f.slope = -f.slope;  // report the decay rate as positive
  return f;
}

VectorXd fit_least_squares(const std::function<VectorXd(const VectorXd&)>& residual,
                           VectorXd theta, int max_iter, Real step_tol) {
  Real lambda = 1e-3;
  VectorXd r = residual(theta);
  Real cost = r.squaredNorm();
  for (int it = 0; it < max_iter; ++it) {
    const int np = theta.size();
    MatrixXd J(r.size(), np);
    for (int j = 0; j < np; ++j) {
      const Real h = std::max(1e-7, 1e-7 * std::abs(theta(j)));
      VectorXd tp = theta;
      tp(j) += h;
      J.col(j) = (residual(tp) - r) / h;
    }
    const MatrixXd JtJ = J.transpose() * J;
    const VectorXd g = J.transpose() * r;
    bool stepped = false;
    for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
      MatrixXd A = JtJ;
      A.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-12);
      const VectorXd step = A.ldlt().solve(-g);
      const VectorXd cand = theta + step;
      const VectorXd rc = residual(cand);
      if (rc.squaredNorm() < cost) {
        const Real rel = step.norm() / std::max(1.0, theta.norm());
        theta = cand;
        r = rc;
        cost = rc.squaredNorm();
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (rel < step_tol) return theta;
      } else {
        lambda *= 10.0;
      }
    }
    if (!stepped) return theta;
  }
  return theta;
}

}  // namespace wsr
