// SPDX-License-Identifier: Apache-2.0
#include "wsr/resonance.hpp"

#include "wsr/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wsr {

MatrixXcd build_B_matrix(const MatrixXcd& U_tilde, int q) {
  if (q < 1) throw std::invalid_argument("build_B_matrix: q >= 1");
  const int dim = U_tilde.rows();
  MatrixXcd B = MatrixXcd::Zero(dim + q, dim + q);
  B.block(0, q, dim, dim) = U_tilde;
  return B;
}

ComplexEnergy energy_from_lambda(Complex lambda, const SystemParams& params) {
  const Real zone = two_pi * params.F / params.q;  // 2 pi hbar / T
  const Real scale = params.F / params.q;          // hbar / T
  Real E = -scale * std::arg(lambda);
  E -= zone * std::floor(E / zone);
  Real gamma = -2.0 * scale * std::log(std::abs(lambda));
  if (gamma < 0) {
    if (gamma > -1e-8 * scale) gamma = 0.0;  // round-off on the unit circle
    else throw NumericalError("energy_from_lambda: |lambda| > 1, not a contraction");
  }
  return ComplexEnergy(E, -0.5 * gamma);
}

namespace {

// Greedy nearest match of left eigenvalues onto right ones.
std::vector<int> match_eigenvalues(const VectorXcd& a, const VectorXcd& b) {
  const int n = a.size();
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    Real best = std::numeric_limits<Real>::max();
    int arg = -1;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const Real d = std::abs(a(i) - b(j));
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    map[i] = arg;
    used[arg] = true;
  }
  return map;
}

}  // namespace

ResonanceSet find_resonances(const EvolutionMatrix& U, int n_keep) {
  const SystemParams& params = U.params;
  const int q = params.q;
  const MatrixXcd B = build_B_matrix(U.U, q);

  Eigen::ComplexEigenSolver<MatrixXcd> es(B, true);
  if (es.info() != Eigen::Success)
    throw NumericalError("find_resonances: eigensolver failed");
  Eigen::ComplexEigenSolver<MatrixXcd> esl(B.transpose(), true);
  if (esl.info() != Eigen::Success)
    throw NumericalError("find_resonances: left eigensolver failed");
  const std::vector<int> lmap = match_eigenvalues(es.eigenvalues(), esl.eigenvalues());

  const int dim = B.rows();
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(j));
  });

  ResonanceSet out;
  out.params = params;
  out.N = U.N;
  out.jmax = U.jmax;
  if (n_keep <= 0) n_keep = std::min(dim - 2 * q, 8);
  for (int r = 0; r < dim && int(out.items.size()) < n_keep; ++r) {
    const int i = order[r];
    const Complex lam = es.eigenvalues()(i);
    if (std::abs(lam) < 1e-12) break;  // structural zeros, no pole
    Resonance res;
    res.lambda = lam;
    res.energy = energy_from_lambda(lam, params);
    res.right = es.eigenvectors().col(i);
    res.left = esl.eigenvectors().col(lmap[i]);
    res.kappa = U.kappa;
    const Complex pairing = res.left.transpose() * res.right;
    if (std::abs(pairing) > 1e-12) normalize_biorthogonal(res.left, res.right);
    out.items.push_back(std::move(res));
  }
  return out;
}

ResonanceSet find_resonances(const SystemParams& params, const PeriodicPotential& V, Real kappa,
                             int N, int jmax, int n_keep, SliceMode mode) {
  const EvolutionMatrix U = build_evolution_matrix(params, V, kappa, N, jmax, mode);
  if (n_keep <= 0) n_keep = default_keep_count(params, V, N);
  return find_resonances(U, n_keep);
}

ResonanceSet filter_stable(const std::vector<ResonanceSet>& runs, Real tol) {
  if (runs.size() < 2)
    throw std::invalid_argument("filter_stable: need at least two runs");
  ResonanceSet out;
  out.params = runs[0].params;
  out.N = runs[0].N;
  out.jmax = runs[0].jmax;
  for (const Resonance& r : runs[0].items) {
    bool stable = true;
    for (std::size_t run = 1; run < runs.size() && stable; ++run) {
      Real best = std::numeric_limits<Real>::max();
      for (const Resonance& s : runs[run].items) best = std::min(best, std::abs(s.lambda - r.lambda));
      stable = best < tol;
    }
    if (stable) out.items.push_back(r);
  }
  return out;
}

VectorXcd resonance_eigenstates(const MatrixXcd& B, Complex lambda, EigenSide side) {
  const MatrixXcd M = side == EigenSide::right ? B : MatrixXcd(B.transpose());
  Eigen::ComplexEigenSolver<MatrixXcd> es(M, true);
  if (es.info() != Eigen::Success) throw NumericalError("resonance_eigenstates: eigensolver failed");
  int best = -1, second = -1;
  Real dbest = std::numeric_limits<Real>::max(), dsecond = dbest;
  for (int i = 0; i < M.rows(); ++i) {
    const Real d = std::abs(es.eigenvalues()(i) - lambda);
    if (d < dbest) {
      dsecond = dbest;
      second = best;
      dbest = d;
      best = i;
    } else if (d < dsecond) {
      dsecond = d;
      second = i;
    }
  }
  if (dbest > 1e-10 * std::max<Real>(1.0, B.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("resonance_eigenstates: lambda is not an eigenvalue of B");
  VectorXcd v = es.eigenvectors().col(best);
  if (second >= 0 && dsecond < 1e-10 && std::abs(lambda) > 1e-10) {
    // A repeated eigenvalue with (numerically) parallel eigenvectors marks a
    // defective pair: refuse rather than return an arbitrary direction.
    const Complex ov = es.eigenvectors().col(second).adjoint() * v;
    if (std::abs(ov) > 1.0 - 1e-6)
      throw NumericalError("resonance_eigenstates: defective eigenvalue (Jordan block)");
  }
  const Real residual =
      ((side == EigenSide::right ? B * v : MatrixXcd(B.transpose()) * v) - lambda * v).norm() / v.norm();
  if (residual > 1e-8) throw NumericalError("resonance_eigenstates: residual too large");
  return v;
}

void normalize_biorthogonal(VectorXcd& left, VectorXcd& right) {
  const Complex pairing = left.transpose() * right;
  if (std::abs(pairing) < 1e-12)
    throw NumericalError("normalize_biorthogonal: self-orthogonal pair (exceptional point)");
  // Split the factor symmetrically; fix the right vector's global phase by
  // its largest coefficient.
  int imax = 0;
  right.cwiseAbs().maxCoeff(&imax);
  const Complex phase = right(imax) / std::abs(right(imax));
  right /= phase;
  left *= phase;
  const Complex s = left.transpose() * right;
  const Complex root = std::sqrt(s);
  left /= root;
  right /= root;
}

WannierBlochFamily build_wannier_bloch_family(const Resonance& res, const SystemParams& params,
                                              const PeriodicPotential& V, int substeps,
                                              int jmax_per_step) {
  if (substeps < 16)
    throw NumericalError("build_wannier_bloch_family: substeps < 16 gives a poor quadrature");
  if (jmax_per_step <= 0)
    jmax_per_step = std::max(4, int(std::ceil(params.bloch_period() / (0.15 * substeps))));
  const int dim_ext = res.right.size();          // 2N+1+q entries, n in [-N-q, N]
  const int dim = dim_ext - params.q;            // plane-wave block n in [-N, N]
  const int N = (dim - 1) / 2;
  // The interior block n in [-N, N] carries the state: the right vector is
  // structurally zero in the top q entries, the left one in the bottom q.
  VectorXcd r0 = res.right.segment(params.q, dim);
  VectorXcd l0 = res.left.segment(params.q, dim);
  const Complex pairing = l0.transpose() * r0;
  if (std::abs(pairing) < 1e-12)
    throw NumericalError("build_wannier_bloch_family: self-orthogonal pair");
  const Complex root = std::sqrt(pairing);
  r0 /= root;
  l0 /= root;

  const Real T_B = params.bloch_period();
  const Complex energy = res.energy.value();

  WannierBlochFamily fam;
  fam.energy = res.energy;
  fam.params = params;
  fam.N = N;
  fam.kappa.resize(substeps);
  fam.right.resize(substeps);
  fam.left.resize(substeps);
  VectorXcd r = r0, lv = l0;
  for (int j = 0; j < substeps; ++j) {
    const Real t = j * T_B / substeps;
    const Real kap_raw = res.kappa - params.F * t / params.hbar;
    const int fold = int(std::floor(kap_raw + 0.5));  // kappa_fold = kap_raw - fold
    // chi^R(t) carries e^{+i E t / hbar}, chi^L(t) the reciprocal factor, so
    // the unconjugated pairing stays invariant along the Bloch cycle.
    const Complex comp = std::exp(Complex(0, 1) * energy * t / params.hbar);
    const Complex comp_inv = std::exp(Complex(0, -1) * energy * t / params.hbar);
    fam.kappa[j] = kap_raw - fold;
    fam.right[j] = comp * r;
    fam.left[j] = comp_inv * lv;
    if (fold != 0) {
      // folding kappa by -fold relabels plane wave n as n - fold: shift the
      // coefficients so index n always means momentum n + kappa_fold
      VectorXcd rs_ = VectorXcd::Zero(dim), ls_ = VectorXcd::Zero(dim);
      for (int m = 0; m < dim; ++m) {
        const int src = m - fold;  // c_fold(m) = c_raw(m - fold)
        if (src >= 0 && src < dim) {
          rs_(m) = fam.right[j](src);
          ls_(m) = fam.left[j](src);
        }
      }
      fam.right[j] = rs_;
      fam.left[j] = ls_;
    }
    if (j + 1 < substeps) {
      const Real t1 = (j + 1) * T_B / substeps;
      r = propagate_state(r, params, V, res.kappa, t, t1, jmax_per_step);
      lv = propagate_state_left(lv, params, V, res.kappa, t, t1, jmax_per_step);
    }
  }
  return fam;
}

WannierStarkState wannier_stark_state(const Resonance& res, const SystemParams& params,
                                      const PeriodicPotential& V, int alpha, int l, int substeps,
                                      int jmax_per_step) {
  if (params.q != 1) throw std::invalid_argument("wannier_stark_state: dc (q = 1) resonances only");
  const WannierBlochFamily fam = build_wannier_bloch_family(res, params, V, substeps, jmax_per_step);
  const int N = fam.N;
  const int dim = 2 * N + 1;

  WannierStarkState out;
  out.alpha = alpha;
  out.site = l;
  out.energy = res.energy;
  out.k.resize(std::size_t(dim) * substeps);
  out.right.resize(std::size_t(dim) * substeps);
  out.left.resize(std::size_t(dim) * substeps);
  out.domain_bound = params.hbar * params.hbar * Real(N) * Real(N) / (2.0 * params.F);

  for (int j = 0; j < substeps; ++j) {
    const Real kap = fam.kappa[j];
    const Complex phase_r = std::exp(Complex(0, -two_pi * l * kap));
    const Complex phase_l = std::exp(Complex(0, two_pi * l * kap));
    for (int n = 0; n < dim; ++n) {
      const std::size_t idx = std::size_t(j) + std::size_t(n) * substeps;
      out.k[idx] = (n - N) + kap;
      out.right(idx) = phase_r * fam.right[j](n);
      out.left(idx) = phase_l * fam.left[j](n);
    }
  }
  // sort by momentum
  std::vector<std::size_t> order(out.k.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out.k[a] < out.k[b]; });
  std::vector<Real> k_sorted(out.k.size());
  VectorXcd r_sorted(out.right.size()), l_sorted(out.left.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    k_sorted[i] = out.k[order[i]];
    r_sorted(i) = out.right(order[i]);
    l_sorted(i) = out.left(order[i]);
  }
  out.k = std::move(k_sorted);
  out.right = std::move(r_sorted);
  out.left = std::move(l_sorted);
  return out;
}

VectorXcd to_coordinate_space(const std::vector<Real>& k, const VectorXcd& coeff,
                              const std::vector<Real>& x_grid) {
  if (int(k.size()) != coeff.size())
    throw std::invalid_argument("to_coordinate_space: grid/coefficient size mismatch");
  const Real dk = k.size() > 1 ? (k.back() - k.front()) / (k.size() - 1) : 1.0;
  VectorXcd psi = VectorXcd::Zero(x_grid.size());
  const Real norm = dk / std::sqrt(two_pi);
  for (std::size_t ix = 0; ix < x_grid.size(); ++ix) {
    Complex acc(0, 0);
    for (std::size_t j = 0; j < k.size(); ++j)
      acc += coeff(j) * std::exp(Complex(0, k[j] * x_grid[ix]));
    psi(ix) = acc * norm;
  }
  return psi;
}

std::vector<ComplexEnergy> quasienergy_ladder(const ResonanceSet& res) {
  const SystemParams& params = res.params;
  const Real zone = params.hbar * params.omega > 0 ? params.hbar * params.omega
                                                   : two_pi * params.F;
  std::vector<ComplexEnergy> out;
  for (const Resonance& r : res.items) {
    for (int n = 0; n < params.p; ++n) {
      Real E = r.energy.re + params.hbar * params.omega * n / params.p;
      E -= zone * std::floor(E / zone);
      out.emplace_back(E, r.energy.im);
    }
  }
  return out;
}

int default_keep_count(const SystemParams& params, const PeriodicPotential& V, int N) {
  // Under-barrier band count + 2.
  const Real vmax = [&] {
    Real m = -std::numeric_limits<Real>::max();
    for (int j = 0; j < 256; ++j) m = std::max(m, V(two_pi * j / 256));
    return m;
  }();
  const BlochBandTable table = bloch_bands(V, params.hbar, std::max(4, std::min(N / 2, 10)), 16);
  int under = 0;
  for (int a = 0; a < table.n_bands(); ++a)
    if (table.band_max(a) < vmax) ++under;
  return under + 2;
}

}  // namespace wsr
