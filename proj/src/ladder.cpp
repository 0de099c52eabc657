// SPDX-License-Identifier: Apache-2.0
#include "wsr/ladder.hpp"

#include "wsr/stats.hpp"

#include <cmath>
#include <map>

namespace wsr {

namespace {

Complex lambda_of(const ComplexEnergy& e, Real F) {
  return std::exp(Complex(0, -1) * e.value() / F);
}

ComplexEnergy fold(Complex lambda, Real F) {
  SystemParams p;
  p.hbar = 1.0;  // only F/q enters the fold
  p.F = F;
  return energy_from_lambda(lambda, p);
}

}  // namespace

LadderEigenvalues two_ladder_eigenvalues(const LadderPair& pair) {
  if (pair.F <= 0) throw std::invalid_argument("two_ladder_eigenvalues: F > 0 required");
  const Complex l0 = lambda_of(pair.e0, pair.F);
  const Complex l1 = lambda_of(pair.e1, pair.F);
  const Real ce = std::cos(pair.epsilon_c);
  const Complex half = 0.5 * (l0 + l1) * ce;
  const Complex disc = std::sqrt(half * half - l0 * l1);
  LadderEigenvalues out;
  out.lambda_plus = half + disc;
  out.lambda_minus = half - disc;
  out.e_plus = fold(out.lambda_plus, pair.F);
  out.e_minus = fold(out.lambda_minus, pair.F);
  return out;
}

std::pair<Complex, Complex> weak_coupling_correction(Complex lambda0, Complex lambda1, Real eps) {
  if (std::abs(lambda0 - lambda1) < 1e-14)
    throw NumericalError("weak_coupling_correction: degenerate crossing");
  const Complex shift = 0.5 * eps * eps * (lambda0 + lambda1) / (lambda1 - lambda0);
  return {lambda0 * (1.0 + shift), lambda1 * (1.0 - shift)};
}

Real critical_coupling(Complex lambda0, Complex lambda1) {
  const Real a0 = std::abs(lambda0), a1 = std::abs(lambda1);
  if (a0 + a1 == 0) throw std::invalid_argument("critical_coupling: zero eigenvalues");
  const Real s = (a0 - a1) / (a0 + a1);
  return std::asin(std::abs(s));
}

std::vector<Complex> multi_ladder_eigenvalues(const std::vector<Complex>& lambdas,
                                              const std::vector<Real>& eps_by_band) {
  const int n = int(lambdas.size());
  if (int(eps_by_band.size()) != n)
    throw std::invalid_argument("multi_ladder_eigenvalues: size mismatch (eps indexed by band)");
  MatrixXd K = MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) K(a, b) = K(b, a) = eps_by_band[std::max(a, b)];
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(K);
  MatrixXcd Uint = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    Uint += std::exp(Complex(0, es.eigenvalues()(i))) *
            (es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose()).cast<Complex>();
  MatrixXcd M = MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a) M.row(a) = lambdas[a] * Uint.row(a);
  Eigen::ComplexEigenSolver<MatrixXcd> ces(M, false);
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = ces.eigenvalues()(i);
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  return out;
}

Real coupled_ground_width(const WidthCurves& data, std::size_t iF,
                          const std::vector<std::pair<Real, Real>>& ab) {
  const int n = data.gamma.rows();
  const Real F = data.F[iF];
  std::vector<Complex> lambdas(n);
  for (int a = 0; a < n; ++a) {
    const Real gamma_bg = a == 0 ? 0.0 : data.gamma(a, iF);
    lambdas[a] = lambda_of(ComplexEnergy(data.energy(a, iF), -0.5 * gamma_bg), F);
  }
  std::vector<Real> eps(n, 0.0);
  for (int a = 1; a < n; ++a) eps[a] = ab[a - 1].first * std::exp(-ab[a - 1].second / F);
  const std::vector<Complex> ev = multi_ladder_eigenvalues(lambdas, eps);
  return -2.0 * F * std::log(std::abs(ev.front()));
}

std::vector<std::pair<Real, Real>> coupling_fit(const WidthCurves& data) {
  const int n = data.gamma.rows();
  const std::size_t nF = data.F.size();
  if (n < 2 || nF < 10)
    throw std::invalid_argument("coupling_fit: need >= 2 ladders and >= 10 field samples");
  auto unpack = [n](const VectorXd& theta) {
    std::vector<std::pair<Real, Real>> ab(n - 1);
    for (int a = 0; a + 1 < n; ++a) ab[a] = {std::exp(theta(2 * a)), theta(2 * a + 1)};
    return ab;
  };
  auto residual = [&](const VectorXd& theta) {
    const auto ab = unpack(theta);
    VectorXd r(nF);
    for (std::size_t i = 0; i < nF; ++i) {
      const Real model = std::max(coupled_ground_width(data, i, ab), 1e-300);
      r(i) = std::log(model) - std::log(data.gamma(0, i));
    }
    return r;
  };
  VectorXd theta0(2 * (n - 1));
  for (int a = 0; a + 1 < n; ++a) {
    theta0(2 * a) = std::log(1.0);
    theta0(2 * a + 1) = 0.3;
  }
  const Real cost0 = residual(theta0).squaredNorm();
  const VectorXd theta = fit_least_squares(residual, theta0);
  const Real cost = residual(theta).squaredNorm();
  if (!(cost < cost0) && cost0 > 1e-16)
    throw NumericalError("coupling_fit: no residual reduction, residual norm " +
                         std::to_string(std::sqrt(cost)));
  return unpack(theta);
}

ComplexEnergy perturbative_quasienergy(const DipoleElementTable& table, const SystemParams& params,
                                       Real omega, Real drive_amplitude, int alpha_max) {
  if (table.elements.size() != table.energies.size())
    throw std::invalid_argument("perturbative_quasienergy: table size mismatch");
  const Real f_drive = drive_amplitude;  // F_omega
  const Real hw = params.hbar * omega;
  const Real hwb = two_pi * params.F;  // hbar * omega_B
  const Complex e0 = table.energies.at(0).value();
  Complex corr(0, 0);
  const int amax = std::min<int>(alpha_max, int(table.elements.size()) - 1);
  for (int a = 0; a <= amax; ++a) {
    for (const auto& [L, v2] : table.elements[a]) {
      if (a == 0 && L == 0) continue;
      for (int s : {-1, 1}) {
        const Complex denom = e0 - table.energies[a].value() - Real(L) * hwb + Real(s) * hw;
        if (std::abs(denom) < 1e-8)
          throw NumericalError("perturbative_quasienergy: resonant denominator; "
                               "use the resonant-frequency band-width treatment");
        corr += v2 / denom;
      }
    }
  }
  const Complex e = e0 + 0.25 * f_drive * f_drive * corr;
  return ComplexEnergy(e);
}

BandWidthPair resonant_band_width(const WannierBlochFamily& family, Real eps) {
  const int M = family.substeps();
  if (M < 16) throw std::invalid_argument("resonant_band_width: kappa family too coarse");
  const int dim = 2 * family.N + 1;
  Complex acc(0, 0);
  for (int j = 0; j < M; ++j) {
    // <L| sin x |R> with <m|sin x|n> = (delta_{m,n+1} - delta_{m,n-1}) / 2i.
    Complex me(0, 0);
    const VectorXcd& L = family.left[j];
    const VectorXcd& R = family.right[j];
    for (int m = 0; m < dim; ++m) {
      Complex v(0, 0);
      if (m >= 1) v += R(m - 1);
      if (m + 1 < dim) v -= R(m + 1);
      me += L(m) * v;
    }
    me /= Complex(0, 2);
    acc += std::cos(two_pi * family.kappa[j]) * me;
  }
  acc *= -2.0 * eps / Real(M);
  return {acc.real(), acc.imag()};
}

}  // namespace wsr
