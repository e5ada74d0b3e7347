#include "mcarma/eulerian.hpp"

#include <cmath>

#include "mcarma/error.hpp"
#include "mcarma/polynomial.hpp"

namespace mcarma {

EulerianTable::EulerianTable(int n_max) {
  if (n_max < 1 || n_max > kMaxRows)
    throw Error(ErrorKind::BadInput, "Eulerian table size must be in [1, 64]");
  rows_.reserve(static_cast<std::size_t>(n_max));
  rows_.push_back({BigInt(1)});
  for (int n = 1; n < n_max; ++n) {
    const auto& prev = rows_.back();
    std::vector<BigInt> next(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
      BigInt v = 0;
      if (k < n) v += (k + 1) * prev[static_cast<std::size_t>(k)];
      if (k > 0) v += (n + 1 - k) * prev[static_cast<std::size_t>(k - 1)];
      next[static_cast<std::size_t>(k)] = std::move(v);
    }
    rows_.push_back(std::move(next));
  }
  // A_{2k}(y) / (1 + y), synthetic division by y + 1 from the top
  for (int k = 1; 2 * k <= n_max; ++k) {
    const auto& a = rows_[static_cast<std::size_t>(2 * k - 1)];
    const std::size_t deg = a.size() - 1;
    std::vector<BigInt> quotient(deg);
    BigInt carry = 0;
    for (std::size_t i = deg; i >= 1; --i) {
      carry = a[i] - carry;
      quotient[i - 1] = carry;
    }
    if (a[0] != carry) throw Error(ErrorKind::Numerical, "A_{2k}(-1) != 0");
    reduced_.push_back(std::move(quotient));
  }
}

const std::vector<BigInt>& EulerianTable::row(int n) const {
  if (n < 1 || n > n_max()) throw Error(ErrorKind::BadInput, "Eulerian row out of range");
  return rows_[static_cast<std::size_t>(n - 1)];
}

const std::vector<BigInt>& EulerianTable::reduced_row(int k) const {
  if (k < 1 || k > static_cast<int>(reduced_.size()))
    throw Error(ErrorKind::BadInput, "reduced Eulerian row out of range");
  return reduced_[static_cast<std::size_t>(k - 1)];
}

EulerianTable eulerian_table(int n_max) { return EulerianTable(n_max); }

const EulerianTable& shared_eulerian_table() {
  static const EulerianTable table(EulerianTable::kMaxRows);
  return table;
}

namespace {

const std::vector<std::vector<double>>& double_rows() {
  static const std::vector<std::vector<double>> rows = [] {
    const EulerianTable& t = shared_eulerian_table();
    std::vector<std::vector<double>> out;
    for (int n = 1; n <= t.n_max(); ++n) {
      std::vector<double> r;
      for (const BigInt& v : t.row(n)) r.push_back(v.convert_to<double>());
      out.push_back(std::move(r));
    }
    return out;
  }();
  return rows;
}

IntPolynomial& operator+=(IntPolynomial& a, const IntPolynomial& b) {
  if (a.coeffs.size() < b.coeffs.size()) a.coeffs.resize(b.coeffs.size());
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

IntPolynomial scaled(IntPolynomial p, const BigInt& s) {
  for (auto& c : p.coeffs) c *= s;
  return p;
}

IntPolynomial chebyshev_combination(const std::vector<BigInt>& row, int k, int outer) {
  // outer * [row_0 T_{k-1} + row_1 T_{k-2} + ... + row_{k-2} T_1 + row_{k-1} / 2]
  IntPolynomial acc{{BigInt(0)}};
  for (int i = 0; i + 1 < k; ++i)
    acc += scaled(chebyshev_t(k - 1 - i), outer * row[static_cast<std::size_t>(i)]);
  acc.coeffs[0] += (outer / 2) * row[static_cast<std::size_t>(k - 1)];
  return acc;
}

}  // namespace

Complex eulerian_poly(int n, Complex y) {
  if (n == 0) return 1.0;
  const auto& r = double_rows().at(static_cast<std::size_t>(n - 1));
  Complex acc = 0.0;
  for (auto it = r.rbegin(); it != r.rend(); ++it) acc = acc * y + *it;
  return acc;
}

double IntPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + it->convert_to<double>();
  return acc;
}

std::vector<double> IntPolynomial::to_double() const {
  std::vector<double> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(c.convert_to<double>());
  return out;
}

IntPolynomial chebyshev_t(int n) {
  IntPolynomial prev{{BigInt(1)}};
  if (n == 0) return prev;
  IntPolynomial cur{{BigInt(0), BigInt(1)}};
  for (int i = 1; i < n; ++i) {
    // T_{i+1} = 2x T_i - T_{i-1}
    IntPolynomial next;
    next.coeffs.assign(cur.coeffs.size() + 1, BigInt(0));
    for (std::size_t j = 0; j < cur.coeffs.size(); ++j) next.coeffs[j + 1] = 2 * cur.coeffs[j];
    for (std::size_t j = 0; j < prev.coeffs.size(); ++j) next.coeffs[j] -= prev.coeffs[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Complex c_tilde(int k, double omega) {
  if (omega == 0.0) throw Error(ErrorKind::OmegaZero, "c~_k is undefined at omega = 0");
  if (k < 0 || k >= EulerianTable::kMaxRows)
    throw Error(ErrorKind::BadInput, "c~_k index out of range");
  const Complex y = std::polar(1.0, omega);
  const Complex one_minus = 1.0 - y;
  if (k == 0) return 1.0 / one_minus;
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return y * eulerian_poly(k, y) / (std::pow(one_minus, k + 1) * factorial);
}

Complex d_tilde(int k, double omega) { return (k % 2 == 0 ? -1.0 : 1.0) * c_tilde(k, omega); }

QrPolys qr_polys(int k) {
  if (k < 1 || 2 * k > EulerianTable::kMaxRows)
    throw Error(ErrorKind::BadInput, "qr_polys requires 1 <= k <= 32");
  const EulerianTable& t = shared_eulerian_table();
  return {chebyshev_combination(t.row(2 * k - 1), k, 2),
          chebyshev_combination(t.reduced_row(k), k, 4)};
}

std::vector<Complex> qr_roots(int k, XiParity which) {
  const QrPolys polys = qr_polys(k);
  const IntPolynomial& p = which == XiParity::Odd ? polys.q : polys.r;
  return polynomial_roots(p.to_double(), true);
}

std::vector<Complex> xi_roots(int k, XiParity which) {
  std::vector<Complex> xi;
  for (const Complex& x : qr_roots(k, which)) xi.push_back(1.0 - x);
  return xi;
}

Complex eta(Complex xi) {
  if (xi == Complex(0.0) || xi == Complex(2.0))
    throw Error(ErrorKind::UnitModulusEta, "xi is a branch point of eta");
  const Complex root = std::sqrt(xi * xi - 2.0 * xi);
  const Complex a = 1.0 - xi + root;
  const Complex b = 1.0 - xi - root;
  if (std::abs(std::abs(a) - 1.0) <= 1e-12 && std::abs(std::abs(b) - 1.0) <= 1e-12)
    throw Error(ErrorKind::UnitModulusEta, "both eta candidates lie on the unit circle");
  // the candidates multiply to one; take the small one, then recompute it as
  // 1/large to avoid cancellation
  const Complex large = std::abs(a) >= std::abs(b) ? a : b;
  return 1.0 / large;
}

XiEta xi_eta(int k, XiParity which) {
  XiEta out;
  out.xi = xi_roots(k, which);
  for (const Complex& x : out.xi) out.eta.push_back(eta(x));
  return out;
}

}  // namespace mcarma
