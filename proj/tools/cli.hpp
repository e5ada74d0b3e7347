#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace mcarma::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 2,
  kNumericalFailure = 3,
  kVerificationFailed = 4,
};

struct RunConfig {
  std::string command;     ///< model, spectrum, theta, pfrac, acov, polys, filter, ma, asymptotic, simulate, verify, golden
  std::string action;      ///< "validate" for the model command
  std::string model_path;
  std::string kind = "sampled-exact";
  double delta = 0.1;
  double omega_min = -3.14;
  double omega_max = 3.14;
  int omega_count = 101;
  int order = 40;          ///< Taylor order K, theta length
  int k = 6;               ///< polys: number of q / r polynomials
  long long n = 200000;
  std::uint64_t seed = 1;
  int h_max = 5;
  int replications = 1;
  double t_max = 10.0;
  int t_count = 101;
  std::string method = "innovations";
  std::string output_path;
  std::string format = "csv";
  int threads = 0;         ///< 0: MCARMA_THREADS or hardware concurrency
};

/// Executes one command. Output goes to config.output_path (atomically) or to
/// `out`; diagnostics go to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// argv front end.
int main_entry(int argc, char** argv);

}  // namespace mcarma::cli
