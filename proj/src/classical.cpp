// SPDX-License-Identifier: Apache-2.0
#include "wsr/classical.hpp"

#include <cmath>
#include <random>

namespace wsr {

namespace {

inline Real force(const PeriodicPotential& V, const SystemParams& params, Real x, Real t) {
  return -V.grad(x, t, params) - params.F;
}

}  // namespace

Trajectory integrate(Real x0, Real p0, const SystemParams& params, const PeriodicPotential& V,
                     Real t_end, Real dt, int sample_stride) {
  if (dt <= 0 || t_end <= 0) throw std::invalid_argument("integrate: positive dt, t_end");
  const long steps = long(std::ceil(t_end / dt));
  Trajectory traj;
  traj.t.reserve(steps / sample_stride + 2);
  traj.x.reserve(steps / sample_stride + 2);
  traj.p.reserve(steps / sample_stride + 2);
  Real x = x0, p = p0, t = 0.0;
  traj.t.push_back(t);
  traj.x.push_back(x);
  traj.p.push_back(p);
  for (long s = 0; s < steps; ++s) {
    p += 0.5 * dt * force(V, params, x, t);
    x += dt * p;
    t += dt;
    p += 0.5 * dt * force(V, params, x, t);
    if ((s + 1) % sample_stride == 0 || s + 1 == steps) {
      traj.t.push_back(t);
      traj.x.push_back(x);
      traj.p.push_back(p);
    }
  }
  return traj;
}

std::vector<SectionPoint> stroboscopic_section(const std::vector<SectionPoint>& initial,
                                               const SystemParams& params,
                                               const PeriodicPotential& V, int n_periods,
                                               int steps_per_period) {
  if (params.omega <= 0)
    throw std::invalid_argument("stroboscopic_section: needs a drive period");
  const Real T = params.drive_period();
  const Real dt = T / steps_per_period;
  std::vector<SectionPoint> cloud;
  cloud.reserve(initial.size() * std::size_t(n_periods));
  for (const SectionPoint& ic : initial) {
    Real x = ic.x, p = ic.p, t = 0.0;
    for (int n = 0; n < n_periods; ++n) {
      for (int s = 0; s < steps_per_period; ++s) {
        p += 0.5 * dt * force(V, params, x, t);
        x += dt * p;
        t += dt;
        p += 0.5 * dt * force(V, params, x, t);
      }
      Real xm = std::fmod(x, two_pi);
      if (xm < 0) xm += two_pi;
      cloud.push_back({xm, p});
    }
  }
  return cloud;
}

DelayTimeResult classical_delay_time(Real x0, Real p0, const SystemParams& params,
                                     const PeriodicPotential& V, Real dt, Real t_max) {
  if (p0 <= 0) throw std::invalid_argument("classical_delay_time: start with p0 > 0");
  Real x = x0, p = p0, t = 0.0;
  Real p_prev = p, t_prev = t;
  while (t < t_max) {
    p_prev = p;
    t_prev = t;
    p += 0.5 * dt * force(V, params, x, t);
    x += dt * p;
    t += dt;
    p += 0.5 * dt * force(V, params, x, t);
    if (p <= -p0) {
      // linear interpolation of the crossing time
      const Real w = (p_prev - (-p0)) / (p_prev - p);
      const Real t_cross = t_prev + w * (t - t_prev);
      return {t_cross - 2.0 * p0 / params.F, false};
    }
  }
  return {t_max, true};
}

std::vector<Real> classical_delay_ensemble(int count, Real p0, const SystemParams& params,
                                           const PeriodicPotential& V, Real dt, Real t_max,
                                           std::uint64_t seed, int* censored_count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> ux(0.0, two_pi);
  std::vector<Real> delays;
  delays.reserve(count);
  int censored = 0;
  for (int i = 0; i < count; ++i) {
    const DelayTimeResult r = classical_delay_time(ux(rng), p0, params, V, dt, t_max);
    if (r.censored)
      ++censored;
    else
      delays.push_back(r.delay);
  }
  if (censored_count) *censored_count = censored;
  return delays;
}

ChaoticStateCount chaotic_state_count(const std::vector<SectionPoint>& section, Real hbar,
                                      Real p_window, int cells) {
  if (section.empty()) throw std::invalid_argument("chaotic_state_count: empty section");
  const Real dx = two_pi / cells;
  const Real dp = 2.0 * p_window / cells;
  std::vector<uint8_t> occupied(std::size_t(cells) * cells, 0);
  for (const SectionPoint& pt : section) {
    if (std::abs(pt.p) >= p_window) continue;
    const int ix = std::min(cells - 1, int(pt.x / dx));
    const int ip = std::min(cells - 1, int((pt.p + p_window) / dp));
    occupied[std::size_t(ip) * cells + ix] = 1;
  }
  ChaoticStateCount out;
  long n_occ = 0;
  Real p_star = 0.0;
  Real enclosed = 0.0;
  for (int ix = 0; ix < cells; ++ix) {
    int ip_min = cells, ip_max = -1;
    for (int ip = 0; ip < cells; ++ip) {
      if (!occupied[std::size_t(ip) * cells + ix]) continue;
      ++n_occ;
      ip_min = std::min(ip_min, ip);
      ip_max = std::max(ip_max, ip);
      const Real p_abs = std::abs(-p_window + (ip + 0.5) * dp);
      p_star = std::max(p_star, p_abs);
    }
    if (ip_max >= ip_min) enclosed += dx * dp * (ip_max - ip_min + 1);
  }
  out.occupied_area = Real(n_occ) * dx * dp;
  out.enclosed_area = enclosed;
  out.n_effective = int(std::lround(out.occupied_area / (two_pi * hbar)));
  out.n_weyl = int(std::lround(out.enclosed_area / (two_pi * hbar)));
  out.p_star = p_star;
  return out;
}

Real island_dispersion_slope(int m, const SystemParams& params) {
  return m * params.hbar * params.omega;
}

}  // namespace wsr
