#include "mcarma/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mcarma/error.hpp"

namespace mcarma {

CMatrix McarmaModel::p_eval(Complex z) const {
  CMatrix acc = CMatrix::Identity(d, d);
  for (const Matrix& a : ar) acc = acc * z + a.cast<Complex>();
  return acc;
}

CMatrix McarmaModel::q_eval(Complex z) const {
  CMatrix acc = CMatrix::Zero(d, d);
  for (const Matrix& b : ma) acc = acc * z + b.cast<Complex>();
  return acc;
}

namespace {

void require_shape(const Matrix& m, int d, const char* what) {
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", expected " << d << "x" << d;
    throw Error(ErrorKind::BadInput, os.str());
  }
  if (!m.allFinite()) throw Error(ErrorKind::BadInput, std::string(what) + " has non-finite entries");
}

}  // namespace

McarmaModel validate_model(const McarmaModel& raw) {
  if (raw.p < 1) throw Error(ErrorKind::BadOrders, "p must be at least 1");
  if (raw.q < 0) throw Error(ErrorKind::BadOrders, "q must be non-negative");
  if (raw.q >= raw.p)
    throw Error(ErrorKind::BadOrders,
                "q=" + std::to_string(raw.q) + " must be smaller than p=" + std::to_string(raw.p));
  if (raw.d < 1) throw Error(ErrorKind::BadInput, "d must be at least 1");
  if (static_cast<int>(raw.ar.size()) != raw.p)
    throw Error(ErrorKind::BadInput, "expected " + std::to_string(raw.p) + " AR matrices");
  if (static_cast<int>(raw.ma.size()) != raw.q + 1)
    throw Error(ErrorKind::BadInput, "expected " + std::to_string(raw.q + 1) + " MA matrices");
  for (const Matrix& a : raw.ar) require_shape(a, raw.d, "AR coefficient");
  for (const Matrix& b : raw.ma) require_shape(b, raw.d, "MA coefficient");
  require_shape(raw.sigma_l, raw.d, "SigmaL");

  McarmaModel model = raw;
  const double norm = std::max(raw.sigma_l.norm(), std::numeric_limits<double>::min());
  if ((raw.sigma_l - raw.sigma_l.transpose()).cwiseAbs().maxCoeff() > 1e-12 * norm)
    throw Error(ErrorKind::BadCovariance, "SigmaL is not symmetric");
  const Matrix sym = 0.5 * (raw.sigma_l + raw.sigma_l.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.eigenvalues().minCoeff() < -1e-12 * norm)
    throw Error(ErrorKind::BadCovariance,
                "SigmaL is indefinite (eigenvalue " + std::to_string(es.eigenvalues().minCoeff()) + ")");
  const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  model.sigma_l = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
  model.sigma_l = 0.5 * (model.sigma_l + model.sigma_l.transpose()).eval();

  // raw companion eigenvalues; clustering is irrelevant for the sign test
  const std::vector<Complex> roots = polynomial_roots(det_poly(model).coeffs());
  for (const Complex& r : roots) {
    if (r.real() >= -1e-10) {
      std::ostringstream os;
      os.precision(17);
      os << "det P(z) has a root at " << r.real() << (r.imag() < 0 ? "-" : "+") << std::abs(r.imag())
         << "i with non-negative real part";
      throw Error(ErrorKind::Unstable, os.str());
    }
  }
  return model;
}

StateSpace state_space(const McarmaModel& model) {
  const int p = model.p;
  const int d = model.d;
  const int n = p * d;
  StateSpace ss;
  ss.a_mat = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < p; ++i) ss.a_mat.block(i * d, (i + 1) * d, d, d).setIdentity();
  for (int i = 1; i <= p; ++i) ss.a_mat.block((p - 1) * d, (p - i) * d, d, d) = -model.ar[i - 1];

  ss.c_mat = Matrix::Zero(d, n);
  ss.c_mat.leftCols(d).setIdentity();

  // beta_{p-j} = -sum_{i=1}^{p-j-1} A_i beta_{p-j-i} - B_{q-j}, 0 <= j <= q; zero for j > q
  std::vector<Matrix> beta(static_cast<std::size_t>(p + 1), Matrix::Zero(d, d));
  for (int j = model.q; j >= 0; --j) {
    Matrix b = -model.ma[static_cast<std::size_t>(model.q - j)];
    for (int i = 1; i <= p - j - 1; ++i) b -= model.ar[i - 1] * beta[static_cast<std::size_t>(p - j - i)];
    beta[static_cast<std::size_t>(p - j)] = b;
  }
  ss.b_mat = Matrix::Zero(n, d);
  for (int i = 1; i <= p; ++i) ss.b_mat.block((i - 1) * d, 0, d, d) = beta[static_cast<std::size_t>(i)];
  return ss;
}

ScalarPolynomial det_poly(const McarmaModel& model) {
  const int n = model.state_dim();
  std::vector<CMatrix> values;
  for (const Complex& z : unit_roots(n + 1)) values.push_back(CMatrix::Constant(1, 1, model.p_eval(z).determinant()));
  std::vector<double> coeffs;
  for (const Matrix& c : dft_coefficients(values)) coeffs.push_back(c(0, 0));
  coeffs.back() = 1.0;
  return ScalarPolynomial(std::move(coeffs));
}

namespace {

template <class M>
M cofactor_adjugate(const M& m) {
  const Eigen::Index d = m.rows();
  if (d == 1) return M::Ones(1, 1);
  M adj(d, d);
  M minor(d - 1, d - 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index r = 0, rr = 0; r < d; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < d; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(j, i) = sign * minor.determinant();
    }
  }
  return adj;
}

}  // namespace

Matrix adjugate(const Matrix& m) { return cofactor_adjugate(m); }

MatrixPolynomial adjugate_q(const McarmaModel& model) {
  const int d = model.d;
  const int adj_deg = (d - 1) * model.p;
  std::vector<Matrix> adj_coeffs;
  if (adj_deg == 0) {
    adj_coeffs.push_back(Matrix::Identity(d, d));
  } else {
    std::vector<CMatrix> values;
    for (const Complex& z : unit_roots(adj_deg + 1)) values.push_back(cofactor_adjugate(model.p_eval(z)));
    adj_coeffs = dft_coefficients(values);
    // adj P(z) = I z^{(d-1)p} + lower terms on the diagonal
    adj_coeffs.back() = Matrix::Identity(d, d);
  }
  std::vector<Matrix> q_coeffs(model.ma.rbegin(), model.ma.rend());
  std::vector<Matrix> out(static_cast<std::size_t>(adj_deg + model.q + 1), Matrix::Zero(d, d));
  for (std::size_t i = 0; i < adj_coeffs.size(); ++i)
    for (std::size_t j = 0; j < q_coeffs.size(); ++j) out[i + j] += adj_coeffs[i] * q_coeffs[j];
  return MatrixPolynomial(std::move(out));
}

std::vector<Matrix> s_tilde(const McarmaModel& model) {
  const MatrixPolynomial s = adjugate_q(model);
  const int d = model.d;
  const int top = (d - 1) * model.p + model.q;
  std::vector<Matrix> out(static_cast<std::size_t>(2 * top + 1), Matrix::Zero(d, d));
  const auto& c = s.coeffs();
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) {
      const double sign = (b % 2 == 0) ? 1.0 : -1.0;
      out[a + b] += sign * (c[a] * model.sigma_l * c[b].transpose());
    }
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out[j] = 0.5 * (out[j] + sign * out[j].transpose()).eval();
  }
  return out;
}

RootSet char_roots(const McarmaModel& model, const RootOptions& options) {
  return cluster_roots(polynomial_roots(det_poly(model).coeffs(), options.newton_polish), options);
}

}  // namespace mcarma
