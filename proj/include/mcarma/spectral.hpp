#pragma once

#include <vector>

#include "mcarma/model.hpp"

namespace mcarma {

/// Taylor coefficients Theta_k of z^{-1} R(z^{-1}), stored from the first
/// index that can be nonzero, k0 = 2(p - q) - 1.
struct ThetaSeries {
  int start = 1;
  std::vector<Matrix> coeffs;

  int last() const noexcept { return start + static_cast<int>(coeffs.size()) - 1; }
  /// Theta_k, zero below start.
  Matrix operator[](int k) const;
};

/// Principal parts of R at the zeros of det P. The matching coefficients at
/// -lambda are the transposes, alpha(l, j)^T.
struct PartialFraction {
  struct Term {
    Complex lambda;
    int multiplicity = 1;
    std::vector<CMatrix> alphas;  ///< alpha(l, 1) .. alpha(l, nu)
  };
  std::vector<Term> terms;
};

/// Everything derived once from a validated model: det P, D(z) = det P(z) det P(-z),
/// the S~ coefficients, root clusters and partial fractions. Read-only after
/// construction and safe to share between threads.
class RationalSpectrum {
 public:
  explicit RationalSpectrum(McarmaModel model, const RootOptions& options = {});

  const McarmaModel& model() const noexcept { return model_; }
  const ScalarPolynomial& det_p() const noexcept { return det_p_; }
  /// Even polynomial D(z) of degree 2pd.
  const ScalarPolynomial& denominator() const noexcept { return denominator_; }
  const std::vector<Matrix>& s_tilde() const noexcept { return s_tilde_; }
  const RootSet& roots() const noexcept { return roots_; }
  const PartialFraction& partial_fractions() const noexcept { return pfrac_; }
  /// Sum of |alpha| norms; the natural magnitude of Gamma.
  double scale() const noexcept { return scale_; }

  CMatrix r_eval(Complex z) const;
  /// Theta_0..Theta_K from the raw recursion (no truncation below k0).
  std::vector<Matrix> theta_recursion(int max_k) const;
  ThetaSeries theta_series(int max_k) const;
  /// Gamma(t) = E[Y_t Y_0^T].
  Matrix autocovariance(double t) const;
  CMatrix f_y(double lambda) const;
  CMatrix f_sampled_taylor(double delta, double omega, int max_k) const;
  CMatrix f_sampled_exact(double delta, double omega) const;

 private:
  McarmaModel model_;
  ScalarPolynomial det_p_;
  ScalarPolynomial denominator_;
  std::vector<Matrix> s_tilde_;
  RootSet roots_;
  PartialFraction pfrac_;
  double scale_ = 0.0;
};

CMatrix r_eval(const McarmaModel& model, Complex z);
CMatrix f_y(const McarmaModel& model, double lambda);
ThetaSeries theta_series(const McarmaModel& model, int max_k);
PartialFraction partial_fractions(const McarmaModel& model, const RootOptions& options = {});
Matrix autocovariance(const McarmaModel& model, double t);
CMatrix f_sampled_taylor(const McarmaModel& model, double delta, double omega, int max_k);
CMatrix f_sampled_exact(const McarmaModel& model, double delta, double omega);

struct ReferenceResult {
  CMatrix value;
  long long terms = 0;  ///< K in the truncated sum over |k| <= K
};

/// Truncated direct sum (1/2pi) sum_{|k|<=K} e^{-ik omega} Gamma(k delta) with
/// Gamma taken from the state-space (Lyapunov) route, K chosen so that the
/// discarded tail is below tol relative to |Gamma(0)|. Throws BudgetExceeded
/// when K would exceed 1e7.
ReferenceResult f_sampled_reference(const McarmaModel& model, double delta, double omega, double tol);

/// Largest |lambda| over the roots of det P.
double max_root_modulus(const RootSet& roots);

}  // namespace mcarma
