#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mcarma/error.hpp"
#include "mcarma/eulerian.hpp"
#include "mcarma/filter_ma.hpp"
#include "mcarma/golden.hpp"
#include "mcarma/io.hpp"
#include "mcarma/simulate.hpp"
#include "mcarma/spectral.hpp"

namespace mcarma::cli {

namespace {

using nlohmann::json;

json complex_json(Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json cmatrix_json(const CMatrix& m) {
  return json{{"re", matrix_to_json(m.real())}, {"im", matrix_to_json(m.imag())}};
}

std::string index_suffix(Eigen::Index i, Eigen::Index j) { return std::to_string(i + 1) + std::to_string(j + 1); }

std::vector<std::string> complex_columns(const std::string& first, Eigen::Index d) {
  std::vector<std::string> cols{first};
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      cols.push_back("re_" + index_suffix(i, j));
      cols.push_back("im_" + index_suffix(i, j));
    }
  return cols;
}

std::vector<std::string> real_columns(const std::string& first, const std::string& prefix, Eigen::Index d) {
  std::vector<std::string> cols{first};
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) cols.push_back(prefix + "_" + index_suffix(i, j));
  return cols;
}

std::vector<double> complex_row(double x, const CMatrix& m) {
  std::vector<double> row{x};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j).real());
      row.push_back(m(i, j).imag());
    }
  return row;
}

std::vector<double> real_row(double x, const Matrix& m) {
  std::vector<double> row{x};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
  return row;
}

std::vector<double> omega_grid(const RunConfig& c, bool exclude_zero) {
  if (c.omega_count < 2) throw Error(ErrorKind::BadInput, "omega grid needs at least two points");
  if (!(c.omega_min > -std::numbers::pi && c.omega_max < std::numbers::pi && c.omega_min < c.omega_max))
    throw Error(ErrorKind::BadInput, "omega grid must lie inside (-pi, pi)");
  std::vector<double> grid;
  for (int i = 0; i < c.omega_count; ++i) {
    const double w = c.omega_min + (c.omega_max - c.omega_min) * i / (c.omega_count - 1);
    if (exclude_zero && w == 0.0) continue;
    grid.push_back(w);
  }
  return grid;
}

int thread_count(const RunConfig& c) {
  if (c.threads > 0) return c.threads;
  if (const char* env = std::getenv("MCARMA_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string render(const Table& table, const RunConfig& c) {
  if (c.format == "json") return table.to_json().dump(2) + "\n";
  return table.to_csv();
}

void require_delta(const RunConfig& c) {
  if (!(c.delta > 0.0)) throw Error(ErrorKind::BadInput, "--delta must be positive");
}

McarmaModel load(const RunConfig& c) {
  if (c.model_path.empty()) throw Error(ErrorKind::BadInput, "--model is required for '" + c.command + "'");
  return validate_model(load_model(c.model_path));
}

std::string root_text(Complex r) {
  if (std::abs(r.imag()) <= 1e-9 * std::max(1.0, std::abs(r))) return format_number(r.real());
  return format_number(r.real()) + (r.imag() < 0 ? "" : "+") + format_number(r.imag()) + "i";
}

std::string polys_csv(int k_max) {
  std::string out = "poly,index,coefficients_high_to_low...,roots...\n";
  auto emit = [&](const char* name, int index, const IntPolynomial& p, const std::vector<Complex>& roots) {
    out += name;
    out += ',' + std::to_string(index);
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) out += ',' + it->str();
    for (const Complex& r : roots) out += ',' + root_text(r);
    out += '\n';
  };
  for (int k = 1; k <= k_max; ++k) {
    const QrPolys polys = qr_polys(k);
    emit("q", k - 1, polys.q, k > 1 ? qr_roots(k, XiParity::Odd) : std::vector<Complex>{});
  }
  for (int k = 1; k <= k_max; ++k) {
    const QrPolys polys = qr_polys(k);
    emit("r", k - 1, polys.r, k > 1 ? qr_roots(k, XiParity::Even) : std::vector<Complex>{});
  }
  return out;
}

json report_json(const VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"quantity", c.quantity},
                      {"lag", c.lag},
                      {"estimate", c.estimate},
                      {"expected", c.expected},
                      {"z", c.z},
                      {"pass", c.pass}});
  return json{{"checks", checks}, {"max_abs_z", report.max_abs_z}, {"pass", report.pass}};
}

struct Outcome {
  std::string text;
  int code = kOk;
};

Outcome dispatch(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "model") {
    if (c.action != "validate") throw Error(ErrorKind::BadInput, "usage: model validate --model PATH");
    const McarmaModel m = load(c);
    json roots = json::array();
    for (const auto& r : char_roots(m).roots)
      roots.push_back({{"re", r.value.real()}, {"im", r.value.imag()}, {"multiplicity", r.multiplicity}});
    return {json{{"valid", true}, {"p", m.p}, {"q", m.q}, {"d", m.d}, {"roots", roots}}.dump(2) + "\n"};
  }
  if (cmd == "spectrum") {
    const McarmaModel m = load(c);
    const RationalSpectrum spectrum(m);
    std::string kind = c.kind == "sampled" ? "sampled-exact" : c.kind;
    Table table;
    table.columns = complex_columns(kind == "exact" ? "lambda" : "omega", m.d);
    if (kind == "exact") {
      for (double w : omega_grid(c, false)) table.rows.push_back(complex_row(w, spectrum.f_y(w)));
    } else if (kind == "sampled-exact") {
      require_delta(c);
      for (double w : omega_grid(c, false)) table.rows.push_back(complex_row(w, spectrum.f_sampled_exact(c.delta, w)));
    } else if (kind == "sampled-taylor") {
      require_delta(c);
      for (double w : omega_grid(c, true))
        table.rows.push_back(complex_row(w, spectrum.f_sampled_taylor(c.delta, w, c.order)));
    } else if (kind == "filtered") {
      require_delta(c);
      const FilteredSpectrum fs = filtered_spectrum(spectrum, c.delta);
      for (double w : omega_grid(c, false)) table.rows.push_back(complex_row(w, fs.poly(w)));
    } else {
      throw Error(ErrorKind::BadInput, "unknown spectrum kind '" + c.kind + "'");
    }
    return {render(table, c)};
  }
  if (cmd == "theta") {
    const McarmaModel m = load(c);
    const ThetaSeries theta = RationalSpectrum(m).theta_series(std::max(c.order, 2 * (m.p - m.q) - 1));
    Table table;
    table.columns = real_columns("k", "theta", m.d);
    for (int k = theta.start; k <= theta.last(); ++k) table.rows.push_back(real_row(k, theta[k]));
    return {render(table, c)};
  }
  if (cmd == "pfrac") {
    const McarmaModel m = load(c);
    json terms = json::array();
    for (const auto& t : partial_fractions(m).terms) {
      json alphas = json::array();
      for (const auto& a : t.alphas) alphas.push_back(cmatrix_json(a));
      terms.push_back({{"lambda", complex_json(t.lambda)}, {"multiplicity", t.multiplicity}, {"alphas", alphas}});
    }
    return {json{{"terms", terms}}.dump(2) + "\n"};
  }
  if (cmd == "acov") {
    const McarmaModel m = load(c);
    if (c.t_count < 2 || !(c.t_max > 0.0)) throw Error(ErrorKind::BadInput, "need --t-max > 0 and --t-count >= 2");
    const RationalSpectrum spectrum(m);
    Table table;
    table.columns = real_columns("t", "gamma", m.d);
    for (int i = 0; i < c.t_count; ++i) {
      const double t = c.t_max * i / (c.t_count - 1);
      table.rows.push_back(real_row(t, spectrum.autocovariance(t)));
    }
    return {render(table, c)};
  }
  if (cmd == "polys") {
    if (c.k < 1 || c.k > 32) throw Error(ErrorKind::BadInput, "--k must be in [1, 32]");
    return {polys_csv(c.k)};
  }
  if (cmd == "filter") {
    require_delta(c);
    const Filter f = sampling_filter(load(c), c.delta);
    Table table;
    table.columns = {"j", "phi"};
    for (int j = 0; j <= f.order(); ++j) table.rows.push_back({static_cast<double>(j), f.coeffs[static_cast<std::size_t>(j)]});
    return {render(table, c)};
  }
  if (cmd == "ma") {
    require_delta(c);
    const McarmaModel m = load(c);
    const RationalSpectrum spectrum(m);
    const Filter f = sampling_filter(spectrum.roots(), c.delta);
    std::vector<Matrix> acov;
    for (int h = 0; h < m.state_dim(); ++h) acov.push_back(filtered_acov(spectrum, f, h));
    MaRepresentation ma;
    if (c.method == "scalar") {
      if (m.d != 1) throw Error(ErrorKind::BadInput, "scalar factorization needs d = 1");
      std::vector<double> g;
      for (const Matrix& a : acov) g.push_back(a(0, 0));
      ma = scalar_factorization(g);
    } else if (c.method == "innovations") {
      ma = innovations_factorization(acov, {1e-10, default_max_iters(c.delta)});
    } else {
      throw Error(ErrorKind::BadInput, "unknown --method '" + c.method + "'");
    }
    json psi = json::array();
    for (const Matrix& p : ma.psi) psi.push_back(matrix_to_json(p));
    return {json{{"delta", c.delta},
                 {"method", c.method},
                 {"psi", psi},
                 {"sigma_z", matrix_to_json(ma.sigma_z)},
                 {"residual", ma.residual},
                 {"iterations", ma.iterations}}
                .dump(2) +
            "\n"};
  }
  if (cmd == "asymptotic") {
    const McarmaModel m = load(c);
    const AsymptoticMa asym = asymptotic_ma(m);
    json xi = json::array();
    for (const Complex& x : asym.xi) xi.push_back(complex_json(x));
    json eta = json::array();
    for (const Complex& e : asym.eta_roots) eta.push_back(complex_json(e));
    json doc{{"unit_root_multiplicity", asym.unit_root_multiplicity},
             {"poly", asym.poly},
             {"xi", xi},
             {"eta", eta},
             {"sigma_z", {{"delta_exponent", asym.delta_exponent}, {"factor", matrix_to_json(asym.sigma_factor)}}}};
    if (c.delta > 0.0) doc["sigma_z_at_delta"] = {{"delta", c.delta}, {"value", matrix_to_json(asym.sigma_z(c.delta))}};
    return {doc.dump(2) + "\n"};
  }
  if (cmd == "simulate") {
    require_delta(c);
    const McarmaModel m = load(c);
    if (c.n < 1) throw Error(ErrorKind::BadInput, "--n must be positive");
    const auto paths = simulate_replications(m, c.delta, c.n, c.seed, std::max(c.replications, 1), thread_count(c));
    Table table;
    table.columns = {"t"};
    if (paths.size() > 1) table.columns.insert(table.columns.begin(), "replication");
    for (int i = 0; i < m.d; ++i) table.columns.push_back("y_" + std::to_string(i + 1));
    for (const auto& path : paths) {
      for (Eigen::Index k = 0; k < path.length(); ++k) {
        std::vector<double> row;
        if (paths.size() > 1) row.push_back(static_cast<double>(path.replication_id));
        row.push_back(c.delta * static_cast<double>(k));
        for (Eigen::Index i = 0; i < m.d; ++i) row.push_back(path.obs(i, k));
        table.rows.push_back(std::move(row));
      }
    }
    return {render(table, c)};
  }
  if (cmd == "verify") {
    require_delta(c);
    const McarmaModel m = load(c);
    const VerifyReport report = verify_model(m, c.delta, c.n, c.seed, c.h_max);
    return {report_json(report).dump(2) + "\n", report.pass ? kOk : kVerificationFailed};
  }
  if (cmd == "golden") {
    std::ostringstream os;
    bool all = true;
    for (const auto& check : golden::run_suite()) {
      all = all && check.pass;
      os << (check.pass ? "PASS" : "FAIL") << "  " << check.name << "  error=" << format_number(check.error)
         << "  tol=" << format_number(check.tolerance) << "\n";
    }
    return {os.str(), all ? kOk : kVerificationFailed};
  }
  throw Error(ErrorKind::BadInput, "unknown command '" + cmd + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "csv" && config.format != "json")
      throw Error(ErrorKind::BadInput, "--format must be csv or json");
    const Outcome outcome = dispatch(config);
    if (config.output_path.empty()) {
      out << outcome.text;
    } else {
      write_file_atomic(config.output_path, outcome.text);
    }
    if (outcome.code == kVerificationFailed) err << "verification FAILED\n";
    return outcome.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_validation_error(e.kind()) ? kValidationError : kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"MCARMA spectral toolkit"};
  app.require_subcommand(1);
  RunConfig c;

  app.add_option("--model", c.model_path, "Model JSON file");
  app.add_option("--delta", c.delta, "Sampling step");
  app.add_option("--omega-min", c.omega_min, "Lower end of the frequency grid");
  app.add_option("--omega-max", c.omega_max, "Upper end of the frequency grid");
  app.add_option("--omega-count", c.omega_count, "Number of grid points");
  app.add_option("--order", c.order, "Taylor order K / theta length");
  app.add_option("--n", c.n, "Simulated path length");
  app.add_option("--seed", c.seed, "Simulation seed");
  app.add_option("--out", c.output_path, "Output file (written atomically)");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", c.threads, "Worker threads (default: MCARMA_THREADS or hardware)");

  auto* model = app.add_subcommand("model", "Validate a model file")->fallthrough();
  model->add_option("action", c.action, "validate")->required();
  auto* spectrum = app.add_subcommand("spectrum", "Spectral densities on a frequency grid")->fallthrough();
  spectrum->add_option("--kind", c.kind, "exact | sampled-taylor | sampled-exact | sampled | filtered");
  app.add_subcommand("theta", "Theta_k coefficient matrices")->fallthrough();
  app.add_subcommand("pfrac", "Partial fraction coefficients of R(z)")->fallthrough();
  auto* acov = app.add_subcommand("acov", "Autocovariance Gamma(t)")->fallthrough();
  acov->add_option("--t-max", c.t_max, "Largest lag time");
  acov->add_option("--t-count", c.t_count, "Number of lag times");
  auto* polys = app.add_subcommand("polys", "q/r polynomial tables and roots")->fallthrough();
  polys->add_option("--k", c.k, "Number of polynomials of each family");
  app.add_subcommand("filter", "Sampling filter coefficients")->fallthrough();
  auto* ma = app.add_subcommand("ma", "MA representation of the filtered process")->fallthrough();
  ma->add_option("--method", c.method, "innovations | scalar");
  app.add_subcommand("asymptotic", "Small-delta MA representation")->fallthrough();
  auto* sim = app.add_subcommand("simulate", "Simulate the sampled process")->fallthrough();
  sim->add_option("--replications", c.replications, "Independent replications");
  auto* verify = app.add_subcommand("verify", "Monte Carlo check of the autocovariances")->fallthrough();
  verify->add_option("--h-max", c.h_max, "Largest lag checked");
  app.add_subcommand("golden", "Worked bivariate example checks")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationError;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, std::cout, std::cerr);
}

}  // namespace mcarma::cli
