#pragma once

#include <string>
#include <vector>

#include "mcarma/polynomial.hpp"

namespace mcarma {

/// d-dimensional MCARMA(p, q) model
///
///   P(z) = I z^p + A_1 z^{p-1} + ... + A_p,
///   Q(z) = B_0 z^q + B_1 z^{q-1} + ... + B_q,
///
/// driven by a Levy process with increment covariance sigma_l. The same type
/// carries raw (unvalidated) descriptions; validate_model() is the gate.
struct McarmaModel {
  int p = 1;
  int q = 0;
  int d = 1;
  std::vector<Matrix> ar;  ///< A_1..A_p
  std::vector<Matrix> ma;  ///< B_0..B_q
  Matrix sigma_l;

  int state_dim() const noexcept { return p * d; }

  /// P(z) and Q(z) evaluated at a complex point.
  CMatrix p_eval(Complex z) const;
  CMatrix q_eval(Complex z) const;

  /// B_0 sigma_l B_0^T.
  Matrix leading_noise() const { return ma.front() * sigma_l * ma.front().transpose(); }
};

/// Companion-form state space (A, B, C) with Y_t = C G(t).
struct StateSpace {
  Matrix a_mat;  ///< pd x pd
  Matrix b_mat;  ///< pd x d
  Matrix c_mat;  ///< d x pd
};

/// Checks shapes, q < p, symmetric PSD sigma_l and strict stability
/// (max Re root < -1e-10). Returns a copy with sigma_l symmetrized and its
/// eigenvalues clipped at zero.
McarmaModel validate_model(const McarmaModel& raw);

StateSpace state_space(const McarmaModel& model);

/// det P(z), monic of degree pd, interpolated from its values at the
/// (pd+1)-th roots of unity.
ScalarPolynomial det_poly(const McarmaModel& model);

/// Coefficients S_0..S_{(d-1)p+q} of adj P(z) Q(z).
MatrixPolynomial adjugate_q(const McarmaModel& model);

/// Coefficients of S(z) Sigma_L S(-z)^T, with S(z) = adj P(z) Q(z).
/// Symmetrized so that entry j satisfies S~_j^T = (-1)^j S~_j.
std::vector<Matrix> s_tilde(const McarmaModel& model);

RootSet char_roots(const McarmaModel& model, const RootOptions& options = {});

/// Adjugate of a square matrix from cofactors.
Matrix adjugate(const Matrix& m);

}  // namespace mcarma
