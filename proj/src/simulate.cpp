#include "mcarma/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "mcarma/error.hpp"
#include "mcarma/filter_ma.hpp"
#include "mcarma/spectral.hpp"

namespace mcarma {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Symmetric square-root factor L with L L^T = m after clipping eigenvalues
// in [-clip * scale, 0) to zero.
Matrix psd_factor(const Matrix& m, double clip, const char* what) {
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const double scale = std::max(sym.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  if (es.eigenvalues().minCoeff() < -clip * scale)
    throw Error(ErrorKind::NotPSD, std::string(what) + " has a negative eigenvalue " +
                                       std::to_string(es.eigenvalues().minCoeff()));
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

std::vector<Matrix> acov_unchecked(const Matrix& obs, int h_max) {
  const Eigen::Index n = obs.cols();
  std::vector<Matrix> out;
  for (int h = 0; h <= h_max; ++h) {
    const Eigen::Index len = n - h;
    out.push_back(obs.rightCols(len) * obs.leftCols(len).transpose() / static_cast<double>(n));
  }
  return out;
}

void add_checks(VerifyReport& report, const char* name, const Matrix& obs, const std::vector<Matrix>& expected,
                const VerifyOptions& options) {
  const int h_max = static_cast<int>(expected.size()) - 1;
  const Eigen::Index n = obs.cols();
  const Eigen::Index batch_len = n / options.batches;
  const std::vector<Matrix> full = acov_unchecked(obs, h_max);
  std::vector<std::vector<Matrix>> batch;
  for (int b = 0; b < options.batches; ++b) batch.push_back(acov_unchecked(obs.middleCols(b * batch_len, batch_len), h_max));

  const double nb = options.batches;
  for (int h = 0; h <= h_max; ++h) {
    for (Eigen::Index i = 0; i < obs.rows(); ++i) {
      for (Eigen::Index j = 0; j < obs.rows(); ++j) {
        double mean = 0.0;
        for (const auto& bt : batch) mean += bt[static_cast<std::size_t>(h)](i, j);
        mean /= nb;
        double var = 0.0;
        for (const auto& bt : batch) var += std::pow(bt[static_cast<std::size_t>(h)](i, j) - mean, 2);
        var /= (nb - 1.0);
        const double se = std::sqrt(var / nb);
        VerifyCheck c;
        c.quantity = std::string(name) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        c.lag = h;
        c.estimate = full[static_cast<std::size_t>(h)](i, j);
        c.expected = options.gamma_scale * expected[static_cast<std::size_t>(h)](i, j);
        const double diff = c.estimate - c.expected;
        c.z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        c.pass = std::abs(c.z) <= options.z_limit;
        report.max_abs_z = std::max(report.max_abs_z, std::abs(c.z));
        report.checks.push_back(std::move(c));
      }
    }
  }
}

}  // namespace

StationaryCov stationary_state_cov(const StateSpace& ss, const Matrix& sigma_l) {
  const Matrix& a = ss.a_mat;
  const Eigen::Index n = a.rows();
  const Matrix q = ss.b_mat * sigma_l * ss.b_mat.transpose();
  const Matrix id = Matrix::Identity(n, n);
  Matrix kron = Matrix::Zero(n * n, n * n);
  // column-major vec: vec(A X) = (I kron A) vec X, vec(X A^T) = (A kron I) vec X
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      kron.block(i * n, j * n, n, n) += id(i, j) * a;
      kron.block(i * n, j * n, n, n) += a(i, j) * id;
    }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  const Eigen::VectorXd x = kron.partialPivLu().solve(rhs);
  StationaryCov out;
  out.gamma_g = Eigen::Map<const Matrix>(x.data(), n, n);
  out.gamma_g = 0.5 * (out.gamma_g + out.gamma_g.transpose()).eval();
  const double scale = std::max(q.norm(), std::numeric_limits<double>::min());
  out.residual = (a * out.gamma_g + out.gamma_g * a.transpose() + q).norm() / scale;
  if (!(out.residual <= 1e-7))
    throw Error(ErrorKind::LyapunovIllConditioned,
                "Lyapunov residual " + std::to_string(out.residual) + " exceeds 1e-7");
  return out;
}

Matrix discretize_transition(const StateSpace& ss, double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorKind::BadInput, "delta must be non-negative");
  return (ss.a_mat * delta).exp();
}

Discretization discretize(const StateSpace& ss, const StationaryCov& cov, double delta) {
  Discretization out;
  out.transition = discretize_transition(ss, delta);
  Matrix s = cov.gamma_g - out.transition * cov.gamma_g * out.transition.transpose();
  s = 0.5 * (s + s.transpose()).eval();
  const Matrix factor = psd_factor(s, 1e-10, "one-step noise covariance");
  out.noise_cov = factor * factor.transpose();
  return out;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t replication_id)
    : key_(splitmix64(splitmix64(seed) ^ (replication_id * kGolden + 0x632BE59BD9B4E019ULL))) {}

CounterRng::result_type CounterRng::operator()() { return splitmix64(key_ + (++counter_) * kGolden); }

Matrix simulate_chain(const Discretization& law, const Matrix& start_cov, const Matrix& observation,
                      Eigen::Index n, std::uint64_t seed, std::uint64_t replication_id) {
  if (n < 1) throw Error(ErrorKind::BadInput, "path length must be at least 1");
  const Eigen::Index dim = law.transition.rows();
  const Matrix start = psd_factor(start_cov, 1e-10, "stationary state covariance");
  const Matrix noise = psd_factor(law.noise_cov, 1e-10, "one-step noise covariance");
  CounterRng rng(seed, replication_id);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(dim);
  auto draw = [&]() {
    for (Eigen::Index i = 0; i < dim; ++i) z(i) = normal(rng);
    return z;
  };

  Matrix out(observation.rows(), n);
  Eigen::VectorXd g = start * draw();
  out.col(0) = observation * g;
  for (Eigen::Index k = 1; k < n; ++k) {
    g = law.transition * g + noise * draw();
    out.col(k) = observation * g;
  }
  return out;
}

SimulationPath simulate_path(const McarmaModel& model, double delta, Eigen::Index n, std::uint64_t seed,
                             std::uint64_t replication_id) {
  const StateSpace ss = state_space(model);
  const StationaryCov cov = stationary_state_cov(ss, model.sigma_l);
  const Discretization law = discretize(ss, cov, delta);
  SimulationPath path;
  path.delta = delta;
  path.seed = seed;
  path.replication_id = replication_id;
  path.obs = simulate_chain(law, cov.gamma_g, ss.c_mat, n, seed, replication_id);
  return path;
}

std::vector<SimulationPath> simulate_replications(const McarmaModel& model, double delta, Eigen::Index n,
                                                  std::uint64_t seed, int count, int threads) {
  std::vector<SimulationPath> out(static_cast<std::size_t>(std::max(count, 0)));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < count; i = next++)
      out[static_cast<std::size_t>(i)] = simulate_path(model, delta, n, seed, static_cast<std::uint64_t>(i));
  };
  const int workers = std::clamp(threads, 1, std::max(count, 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<Matrix> sample_acov(const Matrix& obs, int h_max) {
  if (h_max < 0 || static_cast<double>(h_max) >= static_cast<double>(obs.cols()) / 10.0)
    throw Error(ErrorKind::BadInput, "h_max must be below n/10");
  return acov_unchecked(obs, h_max);
}

std::vector<Matrix> sample_acov(const SimulationPath& path, int h_max) { return sample_acov(path.obs, h_max); }

Matrix apply_filter(const Matrix& obs, const std::vector<double>& coeffs) {
  const auto order = static_cast<Eigen::Index>(coeffs.size()) - 1;
  const Eigen::Index len = obs.cols() - order;
  if (len < 1) throw Error(ErrorKind::BadInput, "path shorter than the filter");
  Matrix out = Matrix::Zero(obs.rows(), len);
  for (Eigen::Index j = 0; j <= order; ++j) out += coeffs[static_cast<std::size_t>(j)] * obs.middleCols(order - j, len);
  return out;
}

VerifyReport verify_model(const McarmaModel& model, double delta, Eigen::Index n, std::uint64_t seed,
                          int h_max, const VerifyOptions& options) {
  if (options.batches < 2) throw Error(ErrorKind::BadInput, "need at least two batches");
  const RationalSpectrum spectrum(model);
  const SimulationPath path = simulate_path(model, delta, n, seed, 0);
  const Filter filter = sampling_filter(spectrum.roots(), delta);
  const Matrix filtered = apply_filter(path.obs, filter.coeffs);
  const int filtered_max = std::max(h_max, model.state_dim());
  if (static_cast<double>(filtered_max) * options.batches * 10.0 > static_cast<double>(filtered.cols()))
    throw Error(ErrorKind::BadInput, "path too short for the requested lags and batches");

  std::vector<Matrix> gamma_y;
  for (int h = 0; h <= h_max; ++h) gamma_y.push_back(spectrum.autocovariance(delta * h));
  std::vector<Matrix> gamma_x;
  for (int h = 0; h <= filtered_max; ++h) gamma_x.push_back(filtered_acov(spectrum, filter, h));

  VerifyReport report;
  add_checks(report, "gamma_y", path.obs, gamma_y, options);
  add_checks(report, "gamma_x", filtered, gamma_x, options);
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const VerifyCheck& c) { return c.pass; });
  return report;
}

}  // namespace mcarma
