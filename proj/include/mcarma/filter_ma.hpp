#pragma once

#include <vector>

#include "mcarma/spectral.hpp"

namespace mcarma {

/// Sampling filter Phi(z) = prod_i (1 - e^{delta lambda_i} z) over all pd
/// roots with multiplicity. coeffs[0] == 1.
struct Filter {
  std::vector<double> coeffs;
  std::vector<Complex> poles;  ///< e^{delta lambda_i}, with repetition
  double delta = 0.0;

  int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

Filter sampling_filter(const McarmaModel& model, double delta);
Filter sampling_filter(const RootSet& roots, double delta);

/// |Phi(e^{i omega})|^2 from the expanded coefficients.
double power_transfer(const Filter& filter, double omega);
/// 2^{pd} e^{delta sum lambda} prod (cosh(delta lambda) - cos omega), from the roots.
double power_transfer_product(const Filter& filter, double omega);

/// sum_{k=-m}^{m} F_k e^{ik omega}, with F_{-k} = F_k^*.
struct TrigMatrixPolynomial {
  int order = 0;
  std::vector<CMatrix> coeffs;  ///< F_{-m} .. F_m

  const CMatrix& operator[](int k) const { return coeffs.at(static_cast<std::size_t>(k + order)); }
  CMatrix operator()(double omega) const;
};

struct FilteredSpectrum {
  TrigMatrixPolynomial poly;  ///< truncated to order pd - 1
  double top_coefficient_ratio = 0.0;  ///< max |F_{+-pd}| / max |F_k| before truncation
};

/// f_MA(omega) = |Phi(e^{i omega})|^2 f_delta(omega), recovered by discrete
/// Fourier interpolation at 4pd + 1 nodes. Throws DegreeReductionFailed when
/// the order-pd coefficient is not negligible (relative tol).
FilteredSpectrum filtered_spectrum(const RationalSpectrum& spectrum, double delta, double tol = 1e-9);
FilteredSpectrum filtered_spectrum(const McarmaModel& model, double delta, double tol = 1e-9);

/// gamma_X(h) = E[X_{n+h} X_n^T] = sum_{j,k} phi_j phi_k Gamma(delta (h - j + k)).
Matrix filtered_acov(const RationalSpectrum& spectrum, const Filter& filter, int h);
Matrix filtered_acov(const McarmaModel& model, double delta, int h);
/// Cancellation scale of filtered_acov: sum |phi_j phi_k| * |Gamma(0)|.
double filtered_acov_scale(const RationalSpectrum& spectrum, const Filter& filter);

/// X_n = Psi(B) Z_n with Psi_0 = I and Z ~ WN(0, sigma_z).
struct MaRepresentation {
  std::vector<Matrix> psi;  ///< Psi_0 .. Psi_m
  Matrix sigma_z;
  double residual = 0.0;  ///< max_h |implied gamma(h) - input gamma(h)|
  int iterations = 0;
};

/// gamma(h) = sum_j Psi_{j+h} sigma_z Psi_j^T, h = 0..m.
std::vector<Matrix> implied_acov(const std::vector<Matrix>& psi, const Matrix& sigma_z);

struct InnovationsOptions {
  double tol = 1e-10;
  int max_iters = 100000;
};

/// Multivariate innovations recursion on the band-limited autocovariance
/// gamma(0..m) (gamma(h) = E[X_{t+h} X_t^T]). Stops when consecutive
/// coefficient estimates change by less than tol in Frobenius norm.
MaRepresentation innovations_factorization(const std::vector<Matrix>& acov,
                                           const InnovationsOptions& options = {});

/// Default innovations budget ceil(200/delta), capped at 1e5.
int default_max_iters(double delta);

/// Scalar MA factorization through the roots of the autocovariance generating
/// polynomial; roots inside the unit disc are flipped outside.
MaRepresentation scalar_factorization(const std::vector<double>& acov);

/// Small-delta limit of the MA representation of the filtered process:
/// (1 - B)^{p(d-1)+q} prod_j (1 - eta_j B) Z_n, Z ~ WN(0, sigma_z(delta)).
struct AsymptoticMa {
  int unit_root_multiplicity = 0;
  std::vector<Complex> xi;
  std::vector<Complex> eta_roots;
  std::vector<double> poly;  ///< coefficients of the scalar MA polynomial, increasing powers
  int delta_exponent = 1;    ///< 2(p - q) - 1
  Matrix sigma_factor;       ///< sigma_z(delta) = delta^{exponent} * sigma_factor

  Matrix sigma_z(double delta) const;
  /// Autocovariances of the asymptotic MA at lag 0..order.
  std::vector<Matrix> acov(double delta) const;
};

AsymptoticMa asymptotic_ma(const McarmaModel& model);

}  // namespace mcarma
