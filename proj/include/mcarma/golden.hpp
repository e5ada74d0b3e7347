#pragma once

#include <string>
#include <vector>

#include "mcarma/model.hpp"

/// Hand-derived closed forms for the bivariate MCARMA(1, 0) model
/// P(z) = I z + A_1, Q(z) = B_0. These are written out independently of the
/// generic pipeline so the two can be checked against each other.
namespace mcarma::golden {

/// p=1, q=0, d=2, A_1 = [[3,1],[0,2]], B_0 = I, Sigma_L = I. Roots -3, -2.
McarmaModel model_m1();
/// p=2, q=0, d=1, P(z) = z^2 + 3z + 2, B_0 = 1, Sigma_L = 1. Roots -1, -2.
McarmaModel model_m2();
/// p=2, q=0, d=1, P(z) = (z + 1)^2.
McarmaModel model_double_root();

struct Bivariate {
  Complex lambda1;
  Complex lambda2;
  Matrix s0;  ///< adj A_1 B_0 Sigma_L B_0^T (adj A_1)^T
  Matrix s1;  ///< B_0 Sigma_L B_0^T (adj A_1)^T - adj A_1 B_0 Sigma_L B_0^T
  Matrix s2;  ///< -B_0 Sigma_L B_0^T
};

/// Requires p=1, q=0, d=2 and distinct roots.
Bivariate bivariate(const McarmaModel& model);

CMatrix alpha1(const Bivariate& b);
CMatrix alpha2(const Bivariate& b);

/// Theta_1..Theta_K from the four-term recursion in lambda_1^2, lambda_2^2.
std::vector<Matrix> theta(const Bivariate& b, int max_k);

/// Spectral density of the filtered process in closed form.
CMatrix f_ma(const Bivariate& b, double delta, double omega);

/// Second-order small-delta expansion of f_ma (error O(delta^4)).
CMatrix f_ma_expansion(const Bivariate& b, double delta, double omega);

struct GoldenCheck {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Runs the worked-example checks on M1 against the generic pipeline.
std::vector<GoldenCheck> run_suite();

}  // namespace mcarma::golden
