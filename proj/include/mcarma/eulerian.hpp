#pragma once

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mcarma {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// Eulerian numbers A(n, k), 1 <= n <= n_max, 0 <= k <= n-1, and the reduced
/// rows of A_{2k}(y) = (1 + y) A~_{2k-1}(y). Immutable after construction.
class EulerianTable {
 public:
  static constexpr int kMaxRows = 64;

  explicit EulerianTable(int n_max);

  int n_max() const noexcept { return static_cast<int>(rows_.size()); }
  /// Coefficients of A_n(y) in increasing powers.
  const std::vector<BigInt>& row(int n) const;
  const BigInt& operator()(int n, int k) const { return row(n).at(static_cast<std::size_t>(k)); }
  /// Coefficients of A~_{2k-1}(y); defined for 2k <= n_max.
  const std::vector<BigInt>& reduced_row(int k) const;

 private:
  std::vector<std::vector<BigInt>> rows_;
  std::vector<std::vector<BigInt>> reduced_;
};

EulerianTable eulerian_table(int n_max);

/// Process-wide table with 64 rows.
const EulerianTable& shared_eulerian_table();

/// A_n(y) evaluated in double precision (A_0 = 1).
Complex eulerian_poly(int n, Complex y);

/// Integer polynomial in the monomial basis, increasing powers.
struct IntPolynomial {
  std::vector<BigInt> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  const BigInt& leading() const { return coeffs.back(); }
  double operator()(double x) const;
  std::vector<double> to_double() const;
};

/// Chebyshev polynomial of the first kind T_n.
IntPolynomial chebyshev_t(int n);

/// Taylor coefficient c~_k(omega) of 1/(1 - e^{z + i omega}) at z = 0,
/// through the Eulerian closed form k! c~_k = e^{iw} A_k(e^{iw}) / (1 - e^{iw})^{k+1}.
/// Relative accuracy degrades roughly like |omega|^{-(k+1)} as omega -> 0.
Complex c_tilde(int k, double omega);

/// Coefficient d~_k(omega) of e^{z - iw}/(1 - e^{z - iw}); equals (-1)^{k+1} c~_k.
Complex d_tilde(int k, double omega);

struct QrPolys {
  IntPolynomial q;  ///< q_{k-1}
  IntPolynomial r;  ///< r_{k-1}
};

/// q_{k-1} and r_{k-1} as exact Chebyshev combinations of Eulerian rows.
QrPolys qr_polys(int k);

enum class XiParity { Odd, Even };

/// xi_{2k-1, j} (Odd) or xi_{2k, j} (Even): one minus each root of
/// q_{k-1} / r_{k-1}. Roots are not assumed real.
std::vector<Complex> xi_roots(int k, XiParity which);

/// Roots of q_{k-1} (Odd) or r_{k-1} (Even) themselves.
std::vector<Complex> qr_roots(int k, XiParity which);

/// Root of eta^2 - 2(1 - xi) eta + 1 = 0 inside the unit disc.
Complex eta(Complex xi);

struct XiEta {
  std::vector<Complex> xi;
  std::vector<Complex> eta;
};

XiEta xi_eta(int k, XiParity which);

}  // namespace mcarma
