#include "mcarma/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mcarma/error.hpp"
#include "mcarma/eulerian.hpp"
#include "mcarma/simulate.hpp"

namespace mcarma {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

// First `count` Taylor coefficients of S(lambda + u).
std::vector<CMatrix> shifted_taylor(const std::vector<Matrix>& s, Complex lambda, int count) {
  const Eigen::Index d = s.front().rows();
  std::vector<CMatrix> out(static_cast<std::size_t>(count), CMatrix::Zero(d, d));
  for (int k = 0; k < count; ++k)
    for (int j = k; j < static_cast<int>(s.size()); ++j)
      out[static_cast<std::size_t>(k)] +=
          (binomial(j, k) * std::pow(lambda, j - k)) * s[static_cast<std::size_t>(j)].cast<Complex>();
  return out;
}

// series *= (c0 + c1 u), truncated to its current length
void multiply_linear(std::vector<Complex>& series, Complex c0, Complex c1) {
  for (std::size_t i = series.size(); i-- > 0;) {
    series[i] *= c0;
    if (i > 0) series[i] += c1 * series[i - 1];
  }
}

// Derivative of order n >= 1 of 1/(1 - e^{delta z + c}) at z, where y = e^{delta lambda + c}.
Complex geometric_derivative(int n, double delta, Complex y) {
  return std::pow(delta, n) * y * eulerian_poly(n, y) / std::pow(1.0 - y, n + 1);
}

}  // namespace

Matrix ThetaSeries::operator[](int k) const {
  if (k < start || k > last()) {
    if (k < start && !coeffs.empty()) return Matrix::Zero(coeffs.front().rows(), coeffs.front().cols());
    throw Error(ErrorKind::BadInput, "Theta index beyond computed range");
  }
  return coeffs[static_cast<std::size_t>(k - start)];
}

RationalSpectrum::RationalSpectrum(McarmaModel model, const RootOptions& options)
    : model_(std::move(model)),
      det_p_(det_poly(model_)),
      denominator_(det_p_ * det_p_.reflected()),
      s_tilde_(mcarma::s_tilde(model_)),
      roots_(cluster_roots(polynomial_roots(det_p_.coeffs(), options.newton_polish), options)) {
  // D(z) is even; odd coefficients are rounding noise
  std::vector<double> dc = denominator_.coeffs();
  for (std::size_t i = 1; i < dc.size(); i += 2) dc[i] = 0.0;
  denominator_ = ScalarPolynomial(std::move(dc));

  const int d = model_.d;
  for (const auto& root : roots_.roots) {
    const Complex lambda = root.value;
    const int nu = root.multiplicity;
    // D(z) / (z - lambda)^nu expanded in u = z - lambda
    std::vector<Complex> den(static_cast<std::size_t>(nu), 0.0);
    den[0] = 1.0;
    for (const auto& other : roots_.roots) {
      for (int m = 0; m < other.multiplicity; ++m) {
        if (&other != &root) multiply_linear(den, lambda - other.value, 1.0);
        multiply_linear(den, -lambda - other.value, -1.0);
      }
    }
    const std::vector<CMatrix> num = shifted_taylor(s_tilde_, lambda, nu);
    std::vector<CMatrix> g(static_cast<std::size_t>(nu), CMatrix::Zero(d, d));
    for (int k = 0; k < nu; ++k) {
      CMatrix acc = num[static_cast<std::size_t>(k)];
      for (int i = 1; i <= k; ++i) acc -= den[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(k - i)];
      g[static_cast<std::size_t>(k)] = acc / den[0];
    }
    PartialFraction::Term term{lambda, nu, {}};
    for (int j = 1; j <= nu; ++j) term.alphas.push_back(g[static_cast<std::size_t>(nu - j)]);
    for (const auto& a : term.alphas) scale_ += a.norm();
    pfrac_.terms.push_back(std::move(term));
  }
}

CMatrix RationalSpectrum::r_eval(Complex z) const {
  for (const auto& root : roots_.roots) {
    if (std::abs(z - root.value) <= 1e-8 || std::abs(z + root.value) <= 1e-8)
      throw Error(ErrorKind::PoleEvaluation, "R(z) evaluated at a pole");
  }
  const Complex den = denominator_(z);
  double mag = 0.0;
  for (double c : denominator_.coeffs()) mag = std::max(mag, std::abs(c));
  if (std::abs(den) <= 1e-12 * mag) throw Error(ErrorKind::PoleEvaluation, "det P(z) det P(-z) vanishes");
  const Eigen::Index d = model_.d;
  CMatrix num = CMatrix::Zero(d, d);
  for (auto it = s_tilde_.rbegin(); it != s_tilde_.rend(); ++it) num = num * z + it->cast<Complex>();
  return num / den;
}

std::vector<Matrix> RationalSpectrum::theta_recursion(int max_k) const {
  const int n = model_.state_dim();
  const int d = model_.d;
  const int top = static_cast<int>(s_tilde_.size()) - 1;
  // E(z) = z^{2pd} D(1/z); e_i = D_{2pd - i}
  auto e = [&](int i) { return denominator_[2 * n - i]; };
  auto numerator = [&](int k) -> Matrix {
    const int j = 2 * n - 1 - k;
    if (j < 0 || j > top) return Matrix::Zero(d, d);
    return s_tilde_[static_cast<std::size_t>(j)];
  };
  std::vector<Matrix> theta;
  theta.reserve(static_cast<std::size_t>(max_k + 1));
  for (int k = 0; k <= max_k; ++k) {
    Matrix acc = numerator(k);
    for (int i = 2; i <= std::min(k, 2 * n); i += 2) acc -= e(i) * theta[static_cast<std::size_t>(k - i)];
    theta.push_back(acc / e(0));
  }
  return theta;
}

ThetaSeries RationalSpectrum::theta_series(int max_k) const {
  const int k0 = 2 * (model_.p - model_.q) - 1;
  if (max_k < k0) throw Error(ErrorKind::BadInput, "K must be at least 2(p-q)-1");
  std::vector<Matrix> all = theta_recursion(max_k);
  ThetaSeries out;
  out.start = k0;
  out.coeffs.assign(all.begin() + k0, all.end());
  return out;
}

Matrix RationalSpectrum::autocovariance(double t) const {
  if (t < 0) return autocovariance(-t).transpose();
  const Eigen::Index d = model_.d;
  CMatrix acc = CMatrix::Zero(d, d);
  for (const auto& term : pfrac_.terms) {
    const Complex e = std::exp(term.lambda * t);
    for (int j = 1; j <= term.multiplicity; ++j)
      acc += term.alphas[static_cast<std::size_t>(j - 1)] * (std::pow(t, j - 1) * e / factorial(j - 1));
  }
  if (acc.imag().cwiseAbs().maxCoeff() > 1e-9 * std::max(scale_, 1e-300))
    throw Error(ErrorKind::Numerical, "autocovariance has a non-negligible imaginary part");
  return acc.real();
}

CMatrix RationalSpectrum::f_y(double lambda) const {
  const Complex s(0.0, lambda);
  const CMatrix h = model_.p_eval(s).partialPivLu().solve(model_.q_eval(s));
  return h * model_.sigma_l.cast<Complex>() * h.adjoint() / kTwoPi;
}

CMatrix RationalSpectrum::f_sampled_taylor(double delta, double omega, int max_k) const {
  if (omega == 0.0) throw Error(ErrorKind::OmegaZero, "the Taylor expansion excludes omega = 0");
  if (!(delta > 0.0)) throw Error(ErrorKind::BadInput, "delta must be positive");
  // roots of multiplicity m carry errors of order eps^{1/m}; points that close
  // to the boundary |omega| = delta * |lambda| are treated as outside
  if (!(delta * max_root_modulus(roots_) < std::abs(omega) * (1.0 - 1e-5)))
    throw Error(ErrorKind::SeriesDomain, "delta * max|lambda| must be below |omega|");
  const ThetaSeries theta = theta_series(max_k);
  const Eigen::Index d = model_.d;
  CMatrix acc = CMatrix::Zero(d, d);
  for (int k = theta.start; k <= max_k; ++k) {
    const double weight = std::pow(-delta, k);
    acc += theta[k].cast<Complex>() * (weight * c_tilde(k, omega));
  }
  return -acc / kTwoPi;
}

CMatrix RationalSpectrum::f_sampled_exact(double delta, double omega) const {
  if (!(delta > 0.0)) throw Error(ErrorKind::BadInput, "delta must be positive");
  const Eigen::Index d = model_.d;
  CMatrix acc = CMatrix::Zero(d, d);
  const Complex phase = std::polar(1.0, omega);
  for (const auto& term : pfrac_.terms) {
    const Complex growth = std::exp(delta * term.lambda);
    const Complex y_minus = growth / phase;  // e^{delta lambda - i omega}
    const Complex y_plus = growth * phase;   // e^{delta lambda + i omega}
    for (int j = 1; j <= term.multiplicity; ++j) {
      const CMatrix& alpha = term.alphas[static_cast<std::size_t>(j - 1)];
      Complex w_alpha;
      Complex w_alpha_t;
      if (j == 1) {
        w_alpha = y_minus / (1.0 - y_minus);
        w_alpha_t = 1.0 / (1.0 - y_plus);
      } else {
        const double norm = factorial(j - 1);
        w_alpha = geometric_derivative(j - 1, delta, y_minus) / norm;
        w_alpha_t = geometric_derivative(j - 1, delta, y_plus) / norm;
      }
      acc += w_alpha * alpha + w_alpha_t * alpha.transpose();
    }
  }
  return acc / kTwoPi;
}

double max_root_modulus(const RootSet& roots) { return roots.max_modulus(); }

CMatrix r_eval(const McarmaModel& model, Complex z) { return RationalSpectrum(model).r_eval(z); }

CMatrix f_y(const McarmaModel& model, double lambda) { return RationalSpectrum(model).f_y(lambda); }

ThetaSeries theta_series(const McarmaModel& model, int max_k) {
  return RationalSpectrum(model).theta_series(max_k);
}

PartialFraction partial_fractions(const McarmaModel& model, const RootOptions& options) {
  return RationalSpectrum(model, options).partial_fractions();
}

Matrix autocovariance(const McarmaModel& model, double t) {
  return RationalSpectrum(model).autocovariance(t);
}

CMatrix f_sampled_taylor(const McarmaModel& model, double delta, double omega, int max_k) {
  return RationalSpectrum(model).f_sampled_taylor(delta, omega, max_k);
}

CMatrix f_sampled_exact(const McarmaModel& model, double delta, double omega) {
  return RationalSpectrum(model).f_sampled_exact(delta, omega);
}

ReferenceResult f_sampled_reference(const McarmaModel& model, double delta, double omega, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::BadInput, "tol must be positive");
  if (!(delta > 0.0)) throw Error(ErrorKind::BadInput, "delta must be positive");
  const StateSpace ss = state_space(model);
  const StationaryCov cov = stationary_state_cov(ss, model.sigma_l);
  const RootSet roots = char_roots(model);
  int max_mult = 1;
  for (const auto& r : roots.roots) max_mult = std::max(max_mult, r.multiplicity);

  const double rho = std::exp(delta * roots.max_real_part());
  const double tail_factor = std::pow(1.0 / (1.0 - rho), max_mult);
  constexpr long long kBudget = 10'000'000;
  const double predicted = std::log(tol / tail_factor) / std::log(rho);
  if (!(predicted < static_cast<double>(kBudget)))
    throw Error(ErrorKind::BudgetExceeded, "reference sum needs more than 1e7 terms");

  const Matrix t_step = discretize_transition(ss, delta);
  Matrix state_cov = cov.gamma_g;  // T^k Gamma_G
  const Matrix gamma0 = ss.c_mat * state_cov * ss.c_mat.transpose();
  const double g0 = std::max(gamma0.norm(), std::numeric_limits<double>::min());
  CMatrix acc = gamma0.cast<Complex>();
  long long k = 0;
  while (true) {
    ++k;
    if (k > kBudget) throw Error(ErrorKind::BudgetExceeded, "reference sum exceeded 1e7 terms");
    state_cov = t_step * state_cov;
    const Matrix g = ss.c_mat * state_cov * ss.c_mat.transpose();
    const Complex minus = std::polar(1.0, -static_cast<double>(k) * omega);
    acc += minus * g.cast<Complex>() + std::conj(minus) * g.transpose().cast<Complex>();
    if (g.norm() * tail_factor < tol * g0 && static_cast<double>(k) >= predicted) break;
  }
  return {acc / kTwoPi, k};
}

}  // namespace mcarma
