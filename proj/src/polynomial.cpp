#include "mcarma/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "mcarma/error.hpp"

namespace mcarma {

ScalarPolynomial::ScalarPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double ScalarPolynomial::operator[](int power) const {
  if (power < 0 || power > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(power)];
}

Complex ScalarPolynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double ScalarPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ScalarPolynomial ScalarPolynomial::reflected() const {
  std::vector<double> out = coeffs_;
  for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
  return ScalarPolynomial(std::move(out));
}

ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b) {
  if (a.degree() < 0 || b.degree() < 0) return {};
  std::vector<double> out(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) out[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return ScalarPolynomial(std::move(out));
}

MatrixPolynomial::MatrixPolynomial(std::vector<Matrix> coeffs, double zero_tol)
    : coeffs_(std::move(coeffs)) {
  if (!coeffs_.empty()) dim_ = coeffs_.front().rows();
  while (!coeffs_.empty() && coeffs_.back().cwiseAbs().maxCoeff() <= zero_tol) coeffs_.pop_back();
}

CMatrix MatrixPolynomial::operator()(Complex z) const {
  CMatrix acc = CMatrix::Zero(dim_, dim_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->cast<Complex>();
  return acc;
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.degree() < 0 || b.degree() < 0) return {};
  const Eigen::Index d = a.dim();
  std::vector<Matrix> out(a.coeffs().size() + b.coeffs().size() - 1, Matrix::Zero(d, d));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) out[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return MatrixPolynomial(std::move(out));
}

int RootSet::total_multiplicity() const {
  return std::accumulate(roots.begin(), roots.end(), 0,
                         [](int acc, const Root& r) { return acc + r.multiplicity; });
}

double RootSet::max_real_part() const {
  double out = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots) out = std::max(out, r.value.real());
  return out;
}

double RootSet::max_modulus() const {
  double out = 0.0;
  for (const auto& r : roots) out = std::max(out, std::abs(r.value));
  return out;
}

namespace {

// Parlett-Reinsch diagonal similarity balancing, radix 2.
void balance(Matrix& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(a(j, i));
        row += std::abs(a(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      double g = row / radix;
      double f = 1.0;
      const double s = col + row;
      while (col < g) {
        f *= radix;
        col *= radix * radix;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix * radix;
      }
      if ((col + row) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

Complex horner(const std::vector<double>& c, Complex z, Complex* derivative) {
  Complex p = 0.0;
  Complex dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  if (derivative) *derivative = dp;
  return p;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs, bool newton_polish) {
  std::vector<double> c = ScalarPolynomial(coeffs).coeffs();
  if (c.size() <= 1) return {};
  const auto n = static_cast<Eigen::Index>(c.size() - 1);
  const double lead = c.back();

  std::vector<Complex> roots;
  // zero roots are split off so the companion matrix stays nonsingular
  std::size_t zeros = 0;
  while (zeros < c.size() - 1 && c[zeros] == 0.0) ++zeros;
  for (std::size_t i = 0; i < zeros; ++i) roots.emplace_back(0.0, 0.0);
  const Eigen::Index m = n - static_cast<Eigen::Index>(zeros);
  if (m > 0) {
    Matrix comp = Matrix::Zero(m, m);
    for (Eigen::Index i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i)
      comp(i, m - 1) = -c[zeros + static_cast<std::size_t>(i)] / lead;
    balance(comp);
    Eigen::EigenSolver<Matrix> es(comp, false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "companion eigensolver failed");
    for (Eigen::Index i = 0; i < m; ++i) roots.push_back(es.eigenvalues()(i));
  }
  if (newton_polish) {
    for (auto& r : roots) {
      for (int it = 0; it < 8; ++it) {
        Complex dp;
        const Complex p = horner(c, r, &dp);
        if (std::abs(dp) == 0.0) break;
        const Complex step = p / dp;
        r -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
      }
    }
  }
  return roots;
}

RootSet cluster_roots(const std::vector<Complex>& raw, const RootOptions& options) {
  const std::size_t n = raw.size();
  auto tol = [&](Complex a, Complex b) {
    return options.cluster_tol * std::max({1.0, std::abs(a), std::abs(b)});
  };

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(raw[i] - raw[j]) <= tol(raw[i], raw[j])) parent[find(i)] = find(j);

  std::vector<std::size_t> owner;
  RootSet out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    auto it = std::find(owner.begin(), owner.end(), root);
    if (it == owner.end()) {
      owner.push_back(root);
      out.roots.push_back({raw[i], 1});
    } else {
      auto& r = out.roots[static_cast<std::size_t>(it - owner.begin())];
      r.value += raw[i];
      ++r.multiplicity;
    }
  }
  for (auto& r : out.roots) {
    r.value /= static_cast<double>(r.multiplicity);
    if (std::abs(r.value.imag()) <= options.cluster_tol * std::max(1.0, std::abs(r.value)))
      r.value.imag(0.0);
  }

  for (std::size_t i = 0; i < out.roots.size(); ++i)
    for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
      const Complex a = out.roots[i].value;
      const Complex b = out.roots[j].value;
      if (std::abs(a - b) < 10.0 * tol(a, b))
        throw Error(ErrorKind::RootClusterAmbiguous,
                    "root clusters near (" + std::to_string(a.real()) + "," +
                        std::to_string(a.imag()) + ") are not separated by 10x the tolerance");
    }

  // pair conjugates exactly
  std::vector<bool> used(out.roots.size(), false);
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    if (used[i] || out.roots[i].value.imag() == 0.0) continue;
    std::size_t best = i;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < out.roots.size(); ++j) {
      if (j == i || used[j]) continue;
      const double dist = std::abs(out.roots[j].value - std::conj(out.roots[i].value));
      if (dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best == i || out.roots[best].multiplicity != out.roots[i].multiplicity)
      throw Error(ErrorKind::Numerical, "non-real root without a conjugate partner");
    Complex v = out.roots[i].value;
    if (v.imag() < 0) v = std::conj(v);
    out.roots[i].value = v;
    out.roots[best].value = std::conj(v);
    used[i] = used[best] = true;
  }

  std::sort(out.roots.begin(), out.roots.end(), [](const RootSet::Root& a, const RootSet::Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return out;
}

std::vector<Complex> unit_roots(int count) {
  std::vector<Complex> nodes(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) nodes[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / count);
  return nodes;
}

std::vector<Matrix> dft_coefficients(const std::vector<CMatrix>& values) {
  const int n = static_cast<int>(values.size());
  std::vector<Matrix> out;
  out.reserve(values.size());
  for (int k = 0; k < n; ++k) {
    CMatrix acc = CMatrix::Zero(values.front().rows(), values.front().cols());
    for (int j = 0; j < n; ++j)
      acc += std::polar(1.0, -2.0 * std::numbers::pi * ((static_cast<long long>(j) * k) % n) / n) *
             values[static_cast<std::size_t>(j)];
    out.push_back(acc.real() / n);
  }
  return out;
}

std::vector<Complex> expand_reciprocal_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> out{1.0};
  for (const Complex& r : roots) {
    out.push_back(0.0);
    for (std::size_t i = out.size() - 1; i > 0; --i) out[i] -= r * out[i - 1];
  }
  return out;
}

}  // namespace mcarma
