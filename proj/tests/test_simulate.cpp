#include <doctest.h>

#include <random>

#include "mcarma/error.hpp"
#include "mcarma/filter_ma.hpp"
#include "mcarma/golden.hpp"
#include "mcarma/simulate.hpp"
#include "mcarma/spectral.hpp"
#include "support.hpp"

using namespace mcarma;
using mcarma::testing::mat;
using mcarma::testing::rel_err;

namespace {

StateSpace ou(double a, double sigma) {
  StateSpace ss;
  ss.a_mat = Matrix::Constant(1, 1, -a);
  ss.b_mat = Matrix::Constant(1, 1, sigma);
  ss.c_mat = Matrix::Ones(1, 1);
  return ss;
}

Matrix series_expm(const Matrix& a) {
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 20; ++k) {
    term = (term * a / k).eval();
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("stationary state covariance") {
  const McarmaModel m1 = validate_model(golden::model_m1());
  const StationaryCov c1 = stationary_state_cov(state_space(m1), m1.sigma_l);
  CHECK(rel_err(c1.gamma_g, mat(2, 2, {11.0 / 60, -0.05, -0.05, 0.25})) < 1e-13);
  CHECK(c1.residual < 1e-12);

  const McarmaModel m2 = validate_model(golden::model_m2());
  CHECK(stationary_state_cov(state_space(m2), m2.sigma_l).gamma_g(0, 0) == doctest::Approx(1.0 / 12.0));

  const StationaryCov c3 = stationary_state_cov(ou(2.0, 1.5), Matrix::Ones(1, 1));
  CHECK(c3.gamma_g(0, 0) == doctest::Approx(1.5 * 1.5 / 4.0).epsilon(1e-14));

  for (const McarmaModel& raw : testing::random_models(10, 41)) {
    const McarmaModel m = validate_model(raw);
    const StateSpace ss = state_space(m);
    const Matrix g = stationary_state_cov(ss, m.sigma_l).gamma_g;
    const Matrix q = ss.b_mat * m.sigma_l * ss.b_mat.transpose();
    CHECK((ss.a_mat * g + g * ss.a_mat.transpose() + q).norm() <= 1e-9 * q.norm());
    CHECK((g - g.transpose()).norm() == 0.0);
  }
}

TEST_CASE("discretize") {
  const McarmaModel m1 = validate_model(golden::model_m1());
  const StateSpace ss = state_space(m1);
  const StationaryCov cov = stationary_state_cov(ss, m1.sigma_l);
  const Discretization law = discretize(ss, cov, 0.1);
  CHECK(rel_err(law.transition, series_expm(Matrix(-0.1 * m1.ar[0]))) < 1e-13);
  CHECK((law.noise_cov - law.noise_cov.transpose()).norm() == 0.0);
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(law.noise_cov).eigenvalues().minCoeff() >= 0.0);
  // one-step fixed point
  CHECK(rel_err(Matrix(law.transition * cov.gamma_g * law.transition.transpose() + law.noise_cov), cov.gamma_g) <
        1e-10);

  const Discretization tiny = discretize(ss, cov, 1e-6);
  const Matrix q = ss.b_mat * m1.sigma_l * ss.b_mat.transpose();
  CHECK(rel_err(Matrix(tiny.noise_cov / 1e-6), q) < 1e-3);

  const StateSpace o = ou(2.0, 1.5);
  const Discretization lo = discretize(o, stationary_state_cov(o, Matrix::Ones(1, 1)), 0.3);
  CHECK(lo.noise_cov(0, 0) == doctest::Approx(2.25 * (1.0 - std::exp(-1.2)) / 4.0).epsilon(1e-12));
  CHECK(lo.transition(0, 0) == doctest::Approx(std::exp(-0.6)).epsilon(1e-14));

  StationaryCov bad = cov;
  bad.gamma_g = -cov.gamma_g;
  CHECK_THROWS_AS(discretize(ss, bad, 0.1), Error);
}

TEST_CASE("counter rng is keyed and reproducible") {
  CounterRng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 8; ++i) {
    va.push_back(a());
    vb.push_back(b());
    vc.push_back(c());
    vd.push_back(d());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
  CHECK(a.counter() == 8);
}

TEST_CASE("simulate_path determinism and thread independence") {
  const McarmaModel m1 = validate_model(golden::model_m1());
  const SimulationPath p = simulate_path(m1, 0.5, 1000, 7, 0);
  const SimulationPath q = simulate_path(m1, 0.5, 1000, 7, 0);
  CHECK(p.obs.leftCols(10) == q.obs.leftCols(10));
  CHECK(p.obs.allFinite());
  CHECK(p.length() == 1000);

  const auto one = simulate_replications(m1, 0.5, 500, 3, 4, 1);
  const auto many = simulate_replications(m1, 0.5, 500, 3, 4, 4);
  REQUIRE(one.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(one[i].obs == many[i].obs);
    CHECK(one[i].replication_id == i);
  }
  CHECK(one[0].obs != one[1].obs);
}

TEST_CASE("simulated moments") {
  const McarmaModel m1 = validate_model(golden::model_m1());
  const SimulationPath p = simulate_path(m1, 0.5, 100000, 11, 0);
  const Eigen::VectorXd mean = p.obs.rowwise().mean();
  const Matrix g0 = RationalSpectrum(m1).autocovariance(0.0);
  // effective sample size is reduced by the AR(1)-like dependence at lag 0.5
  for (int i = 0; i < 2; ++i) CHECK(std::abs(mean(i)) <= 4.0 * std::sqrt(g0(i, i) * 3.0 / 100000.0));

  const McarmaModel m2 = validate_model(golden::model_m2());
  const SimulationPath p2 = simulate_path(m2, 0.5, 200000, 1, 0);
  const auto g = sample_acov(p2, 2);
  const double want = std::exp(-0.5) / 6.0 - std::exp(-1.0) / 12.0;
  CHECK(want == doctest::Approx(0.070442).epsilon(1e-5));
  CHECK(g[1](0, 0) == doctest::Approx(want).epsilon(0.05));
  CHECK_THROWS_AS(sample_acov(p2.obs.leftCols(20), 2), Error);
}

TEST_CASE("white noise hook and filter application") {
  Discretization law;
  law.transition = Matrix::Zero(2, 2);
  law.noise_cov = Matrix::Identity(2, 2);
  const Matrix obs = simulate_chain(law, Matrix::Identity(2, 2), Matrix::Identity(2, 2), 50000, 5, 0);
  const auto g = sample_acov(obs, 1);
  CHECK(g[1].cwiseAbs().maxCoeff() < 4.0 / std::sqrt(50000.0));
  CHECK(rel_err(g[0], Matrix(Matrix::Identity(2, 2))) < 0.05);

  Matrix y(1, 5);
  y << 1, 2, 3, 4, 5;
  const Matrix x = apply_filter(y, {1.0, -1.0});
  REQUIRE(x.cols() == 4);
  CHECK(x(0, 0) == 1.0);
  CHECK(x(0, 3) == 1.0);
}

TEST_CASE("verify_model") {
  const McarmaModel m1 = validate_model(golden::model_m1());
  const VerifyReport ok = verify_model(m1, 0.5, 200000, 1, 5);
  CHECK(ok.pass);
  bool has_pd_lag = false;
  for (const auto& c : ok.checks) has_pd_lag = has_pd_lag || (c.quantity.rfind("gamma_x", 0) == 0 && c.lag == 2);
  CHECK(has_pd_lag);

  VerifyOptions wrong;
  wrong.gamma_scale = 1.5;
  CHECK_FALSE(verify_model(m1, 0.5, 200000, 1, 5, wrong).pass);

  const VerifyReport filtered = verify_model(m1, 0.1, 200000, 2, 2);
  for (const auto& c : filtered.checks)
    if (c.quantity.rfind("gamma_x", 0) == 0 && c.lag == 2) CHECK(std::abs(c.z) <= 4.0);
}
