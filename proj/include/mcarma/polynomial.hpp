#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mcarma {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

/// Real scalar polynomial, coefficient index = power of z. Trailing zeros are
/// trimmed on construction; the zero polynomial has no coefficients.
class ScalarPolynomial {
 public:
  ScalarPolynomial() = default;
  explicit ScalarPolynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double operator[](int power) const;

  Complex operator()(Complex z) const;
  double operator()(double x) const;

  /// p(-z).
  ScalarPolynomial reflected() const;

 private:
  std::vector<double> coeffs_;
};

ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b);

/// Polynomial with d x d real matrix coefficients.
class MatrixPolynomial {
 public:
  /// Sentinel degree of the identically-zero polynomial.
  static constexpr int kZeroDegree = -1;

  MatrixPolynomial() = default;
  MatrixPolynomial(std::vector<Matrix> coeffs, double zero_tol = 0.0);

  const std::vector<Matrix>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Eigen::Index dim() const noexcept { return dim_; }

  CMatrix operator()(Complex z) const;

 private:
  std::vector<Matrix> coeffs_;
  Eigen::Index dim_ = 0;
};

MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b);

/// Distinct zeros with multiplicities. Non-real roots come in conjugate pairs
/// with equal multiplicity, and the conjugate stored is exact.
struct RootSet {
  struct Root {
    Complex value;
    int multiplicity = 1;
  };
  std::vector<Root> roots;

  int total_multiplicity() const;
  double max_real_part() const;
  double max_modulus() const;
};

struct RootOptions {
  /// Relative clustering tolerance: two roots are merged when
  /// |a - b| <= cluster_tol * max(1, |a|, |b|).
  double cluster_tol = 1e-7;
  bool newton_polish = false;
};

/// Companion-matrix eigenvalues of a real polynomial after Parlett-Reinsch
/// balancing. Returns deg(p) roots with repetition.
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs, bool newton_polish = false);

/// Greedy clustering of raw roots into a RootSet. Throws
/// RootClusterAmbiguous when two clusters lie closer than 10x the tolerance.
RootSet cluster_roots(const std::vector<Complex>& raw, const RootOptions& options = {});

/// The count-th roots of unity e^{2 pi i j / count}.
std::vector<Complex> unit_roots(int count);

/// Real coefficients c_0..c_{n-1} of a polynomial of degree < n from its
/// values at the n-th roots of unity (inverse DFT; the map is unitary up to
/// scaling, so no conditioning loss).
std::vector<Matrix> dft_coefficients(const std::vector<CMatrix>& values);

/// Product of linear factors (1 - r_i z), returned in increasing powers.
std::vector<Complex> expand_reciprocal_roots(const std::vector<Complex>& roots);

}  // namespace mcarma
