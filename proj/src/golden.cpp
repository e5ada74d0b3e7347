#include "mcarma/golden.hpp"

#include <cmath>
#include <numbers>

#include "mcarma/error.hpp"
#include "mcarma/filter_ma.hpp"
#include "mcarma/spectral.hpp"

namespace mcarma::golden {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double relative(const CMatrix& got, const CMatrix& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

}  // namespace

McarmaModel model_m1() {
  McarmaModel m;
  m.p = 1;
  m.q = 0;
  m.d = 2;
  m.ar = {mat2(3, 1, 0, 2)};
  m.ma = {Matrix::Identity(2, 2)};
  m.sigma_l = Matrix::Identity(2, 2);
  return m;
}

McarmaModel model_m2() {
  McarmaModel m;
  m.p = 2;
  m.q = 0;
  m.d = 1;
  m.ar = {Matrix::Constant(1, 1, 3.0), Matrix::Constant(1, 1, 2.0)};
  m.ma = {Matrix::Ones(1, 1)};
  m.sigma_l = Matrix::Ones(1, 1);
  return m;
}

McarmaModel model_double_root() {
  McarmaModel m = model_m2();
  m.ar = {Matrix::Constant(1, 1, 2.0), Matrix::Constant(1, 1, 1.0)};
  return m;
}

Bivariate bivariate(const McarmaModel& model) {
  if (model.p != 1 || model.q != 0 || model.d != 2)
    throw Error(ErrorKind::BadInput, "closed forms need p=1, q=0, d=2");
  const Matrix& a = model.ar.front();
  const Matrix adj = mat2(a(1, 1), -a(0, 1), -a(1, 0), a(0, 0));
  const double trace = a.trace();
  const double det = a.determinant();
  // det(zI + A) = z^2 + trace z + det
  const Complex disc = std::sqrt(Complex(trace * trace - 4.0 * det));
  Bivariate b;
  b.lambda1 = (-trace - disc) / 2.0;
  b.lambda2 = (-trace + disc) / 2.0;
  if (std::abs(b.lambda1 - b.lambda2) < 1e-8) throw Error(ErrorKind::BadInput, "closed forms need distinct roots");
  const Matrix noise = model.leading_noise();
  b.s2 = -noise;
  b.s1 = noise * adj.transpose() - adj * noise;
  b.s0 = adj * noise * adj.transpose();
  return b;
}

CMatrix alpha1(const Bivariate& b) {
  const Complex l1 = b.lambda1;
  const Complex l2 = b.lambda2;
  const CMatrix num = b.s2.cast<Complex>() * (l1 * l1) + b.s1.cast<Complex>() * l1 + b.s0.cast<Complex>();
  return num / (2.0 * l1 * (l1 * l1 - l2 * l2));
}

CMatrix alpha2(const Bivariate& b) {
  const Complex l1 = b.lambda1;
  const Complex l2 = b.lambda2;
  const CMatrix num = b.s2.cast<Complex>() * (l2 * l2) + b.s1.cast<Complex>() * l2 + b.s0.cast<Complex>();
  return -num / (2.0 * l2 * (l1 * l1 - l2 * l2));
}

std::vector<Matrix> theta(const Bivariate& b, int max_k) {
  const double sum = (b.lambda1 * b.lambda1 + b.lambda2 * b.lambda2).real();
  const double prod = (b.lambda1 * b.lambda1 * b.lambda2 * b.lambda2).real();
  std::vector<Matrix> t(static_cast<std::size_t>(std::max(max_k, 4) + 1), Matrix::Zero(2, 2));
  t[1] = b.s2;
  t[2] = b.s1;
  t[3] = b.s0 + sum * t[1];
  t[4] = sum * t[2];
  for (int k = 5; k <= max_k; ++k)
    t[static_cast<std::size_t>(k)] = sum * t[static_cast<std::size_t>(k - 2)] - prod * t[static_cast<std::size_t>(k - 4)];
  t.resize(static_cast<std::size_t>(max_k + 1));
  return t;
}

CMatrix f_ma(const Bivariate& b, double delta, double omega) {
  const Complex l1 = b.lambda1;
  const Complex l2 = b.lambda2;
  const Complex sh1 = std::sinh(l1 * delta);
  const Complex sh2 = std::sinh(l2 * delta);
  const Complex ch1 = std::cosh(l1 * delta);
  const Complex ch2 = std::cosh(l2 * delta);
  const CMatrix s0 = b.s0.cast<Complex>();
  const CMatrix s1 = b.s1.cast<Complex>();
  const CMatrix s2 = b.s2.cast<Complex>();
  const Complex i(0.0, 1.0);

  const CMatrix bracket = std::cos(omega) * (s0 * (sh1 / l1 - sh2 / l2) + s2 * (l1 * sh1 - l2 * sh2)) +
                          (i * std::sin(omega) * (ch1 - ch2)) * s1 +
                          s0 * (ch1 * sh2 / l2 - ch2 * sh1 / l1) +
                          s2 * (l2 * ch1 * sh2 - l1 * ch2 * sh1);
  return (2.0 * std::exp(delta * (l1 + l2)) / (2.0 * kPi * (l1 * l1 - l2 * l2))) * bracket;
}

CMatrix f_ma_expansion(const Bivariate& b, double delta, double omega) {
  const Complex l1 = b.lambda1;
  const Complex l2 = b.lambda2;
  const Complex sum = l1 + l2;
  const Complex sq = l1 * l1 + l2 * l2;
  const CMatrix s0 = b.s0.cast<Complex>();
  const CMatrix s1 = b.s1.cast<Complex>();
  const CMatrix s2 = b.s2.cast<Complex>();
  const Complex i_sin(0.0, std::sin(omega));
  const double c = 1.0 - std::cos(omega);

  const CMatrix first = -2.0 * c * s2;
  const CMatrix second = (-2.0 * sum * c) * s2 + i_sin * s1;
  const CMatrix third = -(c * ((s0 + sq * s2) / 3.0 + (sum * sum) * s2) - s0 - (i_sin * sum) * s1);
  return (delta / (2.0 * kPi)) * (first + delta * second + delta * delta * third);
}

std::vector<GoldenCheck> run_suite() {
  std::vector<GoldenCheck> out;
  const McarmaModel m1 = validate_model(model_m1());
  const Bivariate b = bivariate(m1);
  const RationalSpectrum spectrum(m1);

  {
    const std::vector<Matrix> want = theta(b, 12);
    const std::vector<Matrix> got = spectrum.theta_recursion(12);
    double err = 0.0;
    for (int k = 1; k <= 12; ++k)
      err = std::max(err, (got[static_cast<std::size_t>(k)] - want[static_cast<std::size_t>(k)]).norm() /
                              want[static_cast<std::size_t>(k)].norm());
    out.push_back({"theta recursion k<=12", err, 1e-12, err <= 1e-12});
  }
  {
    // roots are sorted by real part: lambda1 = -3 first
    const auto& terms = spectrum.partial_fractions().terms;
    double err = 0.0;
    for (const auto& t : terms) {
      const CMatrix want = std::abs(t.lambda - b.lambda1) < 1e-6 ? alpha1(b) : alpha2(b);
      err = std::max(err, relative(t.alphas.front(), want));
    }
    out.push_back({"partial fraction alpha(1), alpha(2)", err, 1e-10, err <= 1e-10});
  }
  for (double delta : {0.05, 0.1, 0.5}) {
    const FilteredSpectrum fs = filtered_spectrum(spectrum, delta);
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < 101; ++j) {
      const double w = -kPi + 2.0 * kPi * j / 100.0;
      const CMatrix want = f_ma(b, delta, w);
      num = std::max(num, (fs.poly(w) - want).norm());
      den = std::max(den, want.norm());
    }
    const double err = num / den;
    out.push_back({"filtered spectrum closed form, delta=" + std::to_string(delta).substr(0, 4), err, 1e-9,
                   err <= 1e-9});
  }
  {
    // error of the second-order expansion must shrink like delta^4
    auto expansion_error = [&](double delta) {
      double e = 0.0;
      for (int j = 0; j < 101; ++j) {
        const double w = -kPi + 2.0 * kPi * j / 100.0;
        e = std::max(e, (f_ma_expansion(b, delta, w) - f_ma(b, delta, w)).norm());
      }
      return e;
    };
    const double ratio = expansion_error(0.02) / expansion_error(0.01);
    const double err = std::abs(std::log2(ratio) - 4.0);
    out.push_back({"second-order expansion converges at order delta^4", err, 0.25, err <= 0.25});
  }
  {
    const AsymptoticMa asym = asymptotic_ma(m1);
    const double err = (asym.sigma_z(0.01) - 0.01 * m1.leading_noise()).norm() / (0.01 * m1.leading_noise().norm());
    const bool shape = asym.unit_root_multiplicity == 1 && asym.eta_roots.empty() && asym.poly.size() == 2;
    out.push_back({"asymptotic MA (1 - B), Sigma_Z = delta B0 SigmaL B0^T", err, 1e-14, shape && err <= 1e-14});
  }
  return out;
}

}  // namespace mcarma::golden
