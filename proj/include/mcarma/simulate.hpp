#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mcarma/model.hpp"

namespace mcarma {

/// Stationary covariance of the state G(t): A G + G A^T + B Sigma_L B^T = 0.
struct StationaryCov {
  Matrix gamma_g;
  double residual = 0.0;  ///< relative Frobenius residual of the Lyapunov equation
};

StationaryCov stationary_state_cov(const StateSpace& ss, const Matrix& sigma_l);

/// Exact one-step law of the state chain: G_{k+1} = T G_k + eps_k,
/// eps_k ~ N(0, noise_cov).
struct Discretization {
  Matrix transition;
  Matrix noise_cov;
};

/// e^{A delta} by scaling and squaring, delta >= 0.
Matrix discretize_transition(const StateSpace& ss, double delta);
Discretization discretize(const StateSpace& ss, const StationaryCov& cov, double delta);

/// Counter-based generator: output k of stream s is splitmix64(s + k * golden).
/// Streams are keyed by hash(seed, replication_id); there is no shared state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t replication_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct SimulationPath {
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t replication_id = 0;
  /// d x n, column k is Y_{k delta}.
  Matrix obs;

  Eigen::Index length() const noexcept { return obs.cols(); }
};

SimulationPath simulate_path(const McarmaModel& model, double delta, Eigen::Index n, std::uint64_t seed,
                             std::uint64_t replication_id = 0);

/// Runs replications 0..count-1 on up to `threads` workers; the result does
/// not depend on the thread count.
std::vector<SimulationPath> simulate_replications(const McarmaModel& model, double delta, Eigen::Index n,
                                                  std::uint64_t seed, int count, int threads);

/// Simulates a chain with the given transition and noise law directly.
/// Setting transition to zero yields i.i.d. draws (white noise).
Matrix simulate_chain(const Discretization& law, const Matrix& start_cov, const Matrix& observation,
                      Eigen::Index n, std::uint64_t seed, std::uint64_t replication_id);

/// Biased sample autocovariances (1/n) sum_k Y_{k+h} Y_k^T for h = 0..h_max.
std::vector<Matrix> sample_acov(const Matrix& obs, int h_max);
std::vector<Matrix> sample_acov(const SimulationPath& path, int h_max);

/// X_n = sum_j phi_j Y_{n-j}, defined for n >= order; output has n - order columns.
Matrix apply_filter(const Matrix& obs, const std::vector<double>& coeffs);

struct VerifyCheck {
  std::string quantity;  ///< "gamma_y(i,j)" or "gamma_x(i,j)", 1-based
  int lag = 0;
  double estimate = 0.0;
  double expected = 0.0;
  double z = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool pass = false;
  double max_abs_z = 0.0;
};

struct VerifyOptions {
  int batches = 20;
  double z_limit = 4.0;
  /// Multiplies the analytic autocovariances (harness self-test hook).
  double gamma_scale = 1.0;
};

/// Compares sample autocovariances of a simulated path (and of its filtered
/// version) against the analytic values with batch-means standard errors.
/// The filtered comparison always includes lag pd.
VerifyReport verify_model(const McarmaModel& model, double delta, Eigen::Index n, std::uint64_t seed,
                          int h_max, const VerifyOptions& options = {});

}  // namespace mcarma
