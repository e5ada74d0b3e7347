#include "mcarma/filter_ma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mcarma/error.hpp"
#include "mcarma/eulerian.hpp"

namespace mcarma {

Filter sampling_filter(const RootSet& roots, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::BadInput, "delta must be positive");
  Filter out;
  out.delta = delta;
  for (const auto& r : roots.roots)
    for (int m = 0; m < r.multiplicity; ++m) out.poles.push_back(std::exp(delta * r.value));
  const std::vector<Complex> c = expand_reciprocal_roots(out.poles);
  double mag = 0.0;
  for (const Complex& v : c) mag = std::max(mag, std::abs(v));
  for (const Complex& v : c) {
    if (std::abs(v.imag()) > 1e-12 * mag)
      throw Error(ErrorKind::Numerical, "sampling filter has complex coefficients");
    out.coeffs.push_back(v.real());
  }
  out.coeffs.front() = 1.0;
  return out;
}

Filter sampling_filter(const McarmaModel& model, double delta) {
  return sampling_filter(char_roots(model), delta);
}

double power_transfer(const Filter& filter, double omega) {
  Complex acc = 0.0;
  const Complex z = std::polar(1.0, omega);
  for (auto it = filter.coeffs.rbegin(); it != filter.coeffs.rend(); ++it) acc = acc * z + *it;
  return std::norm(acc);
}

double power_transfer_product(const Filter& filter, double omega) {
  // poles are e^{delta lambda}; cosh(delta lambda) = (w + 1/w) / 2
  Complex prod = 1.0;
  for (const Complex& w : filter.poles) prod *= 2.0 * w * (0.5 * (w + 1.0 / w) - std::cos(omega));
  return prod.real();
}

CMatrix TrigMatrixPolynomial::operator()(double omega) const {
  CMatrix acc = CMatrix::Zero(coeffs.front().rows(), coeffs.front().cols());
  for (int k = -order; k <= order; ++k) acc += (*this)[k] * std::polar(1.0, k * omega);
  return acc;
}

FilteredSpectrum filtered_spectrum(const RationalSpectrum& spectrum, double delta, double tol) {
  const Filter filter = sampling_filter(spectrum.roots(), delta);
  const int n = spectrum.model().state_dim();
  const int nodes = 4 * n + 1;
  const Eigen::Index d = spectrum.model().d;

  std::vector<double> omega(static_cast<std::size_t>(nodes));
  std::vector<CMatrix> values;
  values.reserve(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    double w = 2.0 * std::numbers::pi * j / nodes;
    if (w > std::numbers::pi) w -= 2.0 * std::numbers::pi;
    omega[static_cast<std::size_t>(j)] = w;
    const CMatrix f = spectrum.f_sampled_exact(delta, w);
    values.push_back(power_transfer(filter, w) * 0.5 * (f + f.adjoint()));
  }

  const int full = 2 * n;
  std::vector<CMatrix> coeffs;
  double largest = 0.0;
  for (int k = -full; k <= full; ++k) {
    CMatrix acc = CMatrix::Zero(d, d);
    for (int j = 0; j < nodes; ++j)
      acc += values[static_cast<std::size_t>(j)] * std::polar(1.0, -k * omega[static_cast<std::size_t>(j)]);
    acc /= static_cast<double>(nodes);
    largest = std::max(largest, acc.cwiseAbs().maxCoeff());
    coeffs.push_back(std::move(acc));
  }
  double top = 0.0;
  for (int k = -full; k <= full; ++k)
    if (std::abs(k) >= n) top = std::max(top, coeffs[static_cast<std::size_t>(k + full)].cwiseAbs().maxCoeff());

  FilteredSpectrum out;
  out.top_coefficient_ratio = largest > 0.0 ? top / largest : 0.0;
  if (out.top_coefficient_ratio > tol) {
    std::ostringstream os;
    os << "order-" << n << " Fourier coefficient is " << out.top_coefficient_ratio << " of the largest";
    throw Error(ErrorKind::DegreeReductionFailed, os.str());
  }
  out.poly.order = n - 1;
  for (int k = -(n - 1); k <= n - 1; ++k) out.poly.coeffs.push_back(coeffs[static_cast<std::size_t>(k + full)]);
  return out;
}

FilteredSpectrum filtered_spectrum(const McarmaModel& model, double delta, double tol) {
  return filtered_spectrum(RationalSpectrum(model), delta, tol);
}

Matrix filtered_acov(const RationalSpectrum& spectrum, const Filter& filter, int h) {
  if (h < 0) return filtered_acov(spectrum, filter, -h).transpose();
  const Eigen::Index d = spectrum.model().d;
  const int n = filter.order();
  Matrix acc = Matrix::Zero(d, d);
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k)
      acc += (filter.coeffs[static_cast<std::size_t>(j)] * filter.coeffs[static_cast<std::size_t>(k)]) *
             spectrum.autocovariance(filter.delta * (h - j + k));
  if (h == 0) acc = (0.5 * (acc + acc.transpose())).eval();
  return acc;
}

Matrix filtered_acov(const McarmaModel& model, double delta, int h) {
  const RationalSpectrum spectrum(model);
  return filtered_acov(spectrum, sampling_filter(spectrum.roots(), delta), h);
}

double filtered_acov_scale(const RationalSpectrum& spectrum, const Filter& filter) {
  double s = 0.0;
  for (double c : filter.coeffs) s += std::abs(c);
  return s * s * spectrum.autocovariance(0.0).norm();
}

std::vector<Matrix> implied_acov(const std::vector<Matrix>& psi, const Matrix& sigma_z) {
  const std::size_t m = psi.size();
  std::vector<Matrix> out;
  for (std::size_t h = 0; h < m; ++h) {
    Matrix acc = Matrix::Zero(sigma_z.rows(), sigma_z.cols());
    for (std::size_t j = 0; j + h < m; ++j) acc += psi[j + h] * sigma_z * psi[j].transpose();
    out.push_back(std::move(acc));
  }
  return out;
}

namespace {

double reconstruction_residual(const std::vector<Matrix>& acov, const MaRepresentation& ma) {
  const std::vector<Matrix> implied = implied_acov(ma.psi, ma.sigma_z);
  double r = 0.0;
  for (std::size_t h = 0; h < acov.size(); ++h) {
    const Matrix ref = h < implied.size() ? implied[h] : Matrix::Zero(acov[h].rows(), acov[h].cols());
    r = std::max(r, (ref - acov[h]).norm());
  }
  return r;
}

}  // namespace

int default_max_iters(double delta) {
  return static_cast<int>(std::min(1e5, std::ceil(200.0 / delta)));
}

MaRepresentation innovations_factorization(const std::vector<Matrix>& acov, const InnovationsOptions& options) {
  if (acov.empty()) throw Error(ErrorKind::BadInput, "empty autocovariance sequence");
  const int m = static_cast<int>(acov.size()) - 1;
  const Matrix& g0 = acov.front();
  const Eigen::Index d = g0.rows();
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g0 + g0.transpose()));
    if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(g0.norm(), 1e-300))
      throw Error(ErrorKind::NotPD, "gamma(0) is not positive definite");
  }

  MaRepresentation out;
  if (m == 0) {
    out.psi = {Matrix::Identity(d, d)};
    out.sigma_z = g0;
    return out;
  }

  const auto slots = static_cast<std::size_t>(m + 1);
  // theta[n % slots][i] = Theta_{n, i}, i = 1..m; v[n % slots] = V_n
  std::vector<std::vector<Matrix>> theta(slots, std::vector<Matrix>(slots, Matrix::Zero(d, d)));
  std::vector<Matrix> v(slots, Matrix::Zero(d, d));
  std::vector<Eigen::LDLT<Matrix>> v_inv(slots);
  v[0] = g0;
  v_inv[0].compute(g0);
  auto slot = [&](int n) { return static_cast<std::size_t>(n % (m + 1)); };

  double change = std::numeric_limits<double>::infinity();
  int n = 0;
  while (n < options.max_iters) {
    ++n;
    auto& cur = theta[slot(n)];
    for (auto& t : cur) t.setZero();
    const int lo = std::max(0, n - m);
    for (int k = lo; k < n; ++k) {
      Matrix acc = acov[static_cast<std::size_t>(n - k)];
      for (int j = lo; j < k; ++j)
        acc -= cur[static_cast<std::size_t>(n - j)] * v[slot(j)] *
               theta[slot(k)][static_cast<std::size_t>(k - j)].transpose();
      cur[static_cast<std::size_t>(n - k)] = v_inv[slot(k)].solve(acc.transpose()).transpose();
    }
    Matrix vn = g0;
    for (int j = lo; j < n; ++j) {
      const Matrix& t = cur[static_cast<std::size_t>(n - j)];
      vn -= t * v[slot(j)] * t.transpose();
    }
    vn = 0.5 * (vn + vn.transpose()).eval();
    v[slot(n)] = vn;
    v_inv[slot(n)].compute(vn);
    if (v_inv[slot(n)].info() != Eigen::Success || vn.diagonal().minCoeff() <= 0.0)
      throw Error(ErrorKind::NotPD, "innovation covariance lost positive definiteness");

    if (n > m) {
      double sq = 0.0;
      const auto& prev = theta[slot(n - 1)];
      for (int i = 1; i <= m; ++i)
        sq += (cur[static_cast<std::size_t>(i)] - prev[static_cast<std::size_t>(i)]).squaredNorm();
      change = std::sqrt(sq);
      if (change < options.tol) break;
    }
  }

  out.psi.push_back(Matrix::Identity(d, d));
  for (int i = 1; i <= m; ++i) out.psi.push_back(theta[slot(n)][static_cast<std::size_t>(i)]);
  out.sigma_z = v[slot(n)];
  out.iterations = n;
  out.residual = reconstruction_residual(acov, out);
  if (!(change < options.tol)) {
    std::ostringstream os;
    os << "innovations did not converge in " << n << " iterations (last change " << change
       << ", residual " << out.residual << ")";
    throw Error(ErrorKind::NoConvergence, os.str());
  }
  return out;
}

MaRepresentation scalar_factorization(const std::vector<double>& acov_in) {
  std::vector<double> acov = acov_in;
  while (acov.size() > 1 && acov.back() == 0.0) acov.pop_back();
  if (acov.empty() || !(acov.front() > 0.0)) throw Error(ErrorKind::NotPD, "gamma(0) must be positive");
  const int m = static_cast<int>(acov.size()) - 1;
  MaRepresentation out;
  if (m == 0) {
    out.psi = {Matrix::Ones(1, 1)};
    out.sigma_z = Matrix::Constant(1, 1, acov.front());
    return out;
  }
  std::vector<double> c(static_cast<std::size_t>(2 * m + 1));
  for (int i = 0; i <= 2 * m; ++i) c[static_cast<std::size_t>(i)] = acov[static_cast<std::size_t>(std::abs(i - m))];
  const std::vector<Complex> roots = polynomial_roots(c, true);
  std::vector<Complex> outside;
  for (const Complex& r : roots) {
    if (std::abs(std::abs(r) - 1.0) <= 1e-10) {
      std::ostringstream os;
      os << "autocovariance generating polynomial has a root on the unit circle (" << r.real() << ","
         << r.imag() << ")";
      throw Error(ErrorKind::RootOnCircle, os.str());
    }
    if (std::abs(r) > 1.0) outside.push_back(1.0 / r);
  }
  if (static_cast<int>(outside.size()) != m)
    throw Error(ErrorKind::RootOnCircle, "roots do not split evenly across the unit circle");
  const std::vector<Complex> psi = expand_reciprocal_roots(outside);
  double sumsq = 0.0;
  for (const Complex& v : psi) {
    out.psi.push_back(Matrix::Constant(1, 1, v.real()));
    sumsq += v.real() * v.real();
  }
  out.sigma_z = Matrix::Constant(1, 1, acov.front() / sumsq);
  std::vector<Matrix> as_matrix;
  for (double g : acov) as_matrix.push_back(Matrix::Constant(1, 1, g));
  out.residual = reconstruction_residual(as_matrix, out);
  return out;
}

Matrix AsymptoticMa::sigma_z(double delta) const { return std::pow(delta, delta_exponent) * sigma_factor; }

std::vector<Matrix> AsymptoticMa::acov(double delta) const {
  std::vector<Matrix> psi;
  for (double c : poly) psi.push_back(c * Matrix::Identity(sigma_factor.rows(), sigma_factor.cols()));
  return implied_acov(psi, sigma_z(delta));
}

AsymptoticMa asymptotic_ma(const McarmaModel& model) {
  AsymptoticMa out;
  const int k = model.p - model.q;
  out.unit_root_multiplicity = model.p * (model.d - 1) + model.q;
  out.delta_exponent = 2 * k - 1;
  if (k >= 2) {
    const XiEta xe = xi_eta(k, XiParity::Odd);
    out.xi = xe.xi;
    out.eta_roots = xe.eta;
  }
  std::vector<Complex> reciprocal(static_cast<std::size_t>(out.unit_root_multiplicity), Complex(1.0));
  reciprocal.insert(reciprocal.end(), out.eta_roots.begin(), out.eta_roots.end());
  const std::vector<Complex> poly = expand_reciprocal_roots(reciprocal);
  double mag = 0.0;
  for (const Complex& c : poly) mag = std::max(mag, std::abs(c));
  for (const Complex& c : poly) {
    if (std::abs(c.imag()) > 1e-10 * mag)
      throw Error(ErrorKind::Numerical, "asymptotic MA polynomial has complex coefficients");
    out.poly.push_back(c.real());
  }
  double denom = 1.0;
  for (int i = 2; i <= out.delta_exponent; ++i) denom *= i;
  for (const Complex& e : out.eta_roots) denom *= std::abs(e);
  out.sigma_factor = model.leading_noise() / denom;
  return out;
}

}  // namespace mcarma
