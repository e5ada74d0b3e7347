#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcarma/error.hpp"
#include "mcarma/eulerian.hpp"
#include "mcarma/filter_ma.hpp"
#include "mcarma/io.hpp"
#include "mcarma/simulate.hpp"
#include "mcarma/spectral.hpp"

namespace py = pybind11;
using namespace mcarma;

namespace {

McarmaModel make_model(const std::vector<Matrix>& ar, const std::vector<Matrix>& ma, const Matrix& sigma_l) {
  if (ar.empty() || ma.empty()) throw Error(ErrorKind::BadInput, "need at least one AR and one MA matrix");
  McarmaModel m;
  m.p = static_cast<int>(ar.size());
  m.q = static_cast<int>(ma.size()) - 1;
  m.d = static_cast<int>(sigma_l.rows());
  m.ar = ar;
  m.ma = ma;
  m.sigma_l = sigma_l;
  return validate_model(m);
}

std::vector<long long> to_ll(const IntPolynomial& p) {
  std::vector<long long> out;
  for (const BigInt& c : p.coeffs) out.push_back(c.convert_to<long long>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_mcarma, m) {
  m.doc() = "MCARMA spectral toolkit";

  py::register_exception<Error>(m, "McarmaError", PyExc_ValueError);

  py::class_<McarmaModel>(m, "Model")
      .def(py::init(&make_model), py::arg("ar"), py::arg("ma"), py::arg("sigma_l"))
      .def_static("from_json", [](const std::string& s) { return validate_model(model_from_json(nlohmann::json::parse(s))); })
      .def_static("load", [](const std::string& path) { return validate_model(load_model(path)); })
      .def("to_json", [](const McarmaModel& self) { return model_to_json(self).dump(); })
      .def_readonly("p", &McarmaModel::p)
      .def_readonly("q", &McarmaModel::q)
      .def_readonly("d", &McarmaModel::d)
      .def_readonly("ar", &McarmaModel::ar)
      .def_readonly("ma", &McarmaModel::ma)
      .def_readonly("sigma_l", &McarmaModel::sigma_l);

  m.def("state_space", [](const McarmaModel& model) {
    const StateSpace ss = state_space(model);
    return py::make_tuple(ss.a_mat, ss.b_mat, ss.c_mat);
  });
  m.def("det_poly", [](const McarmaModel& model) { return det_poly(model).coeffs(); });
  m.def("char_roots", [](const McarmaModel& model) {
    std::vector<std::pair<Complex, int>> out;
    for (const auto& r : char_roots(model).roots) out.emplace_back(r.value, r.multiplicity);
    return out;
  });
  m.def("s_tilde", &s_tilde);

  m.def("r_eval", py::overload_cast<const McarmaModel&, Complex>(&r_eval), py::arg("model"), py::arg("z"));
  m.def("f_y", py::overload_cast<const McarmaModel&, double>(&f_y), py::arg("model"), py::arg("lam"));
  m.def("theta_series", [](const McarmaModel& model, int max_k) {
    const ThetaSeries t = theta_series(model, max_k);
    return py::make_tuple(t.start, t.coeffs);
  }, py::arg("model"), py::arg("max_k"));
  m.def("partial_fractions", [](const McarmaModel& model) {
    py::list out;
    for (const auto& t : partial_fractions(model).terms) out.append(py::make_tuple(t.lambda, t.multiplicity, t.alphas));
    return out;
  });
  m.def("autocovariance", py::overload_cast<const McarmaModel&, double>(&autocovariance), py::arg("model"), py::arg("t"));
  m.def("f_sampled_exact", py::overload_cast<const McarmaModel&, double, double>(&f_sampled_exact),
        py::arg("model"), py::arg("delta"), py::arg("omega"));
  m.def("f_sampled_taylor", py::overload_cast<const McarmaModel&, double, double, int>(&f_sampled_taylor),
        py::arg("model"), py::arg("delta"), py::arg("omega"), py::arg("order") = 40);
  m.def("f_sampled_reference", [](const McarmaModel& model, double delta, double omega, double tol) {
    return f_sampled_reference(model, delta, omega, tol).value;
  }, py::arg("model"), py::arg("delta"), py::arg("omega"), py::arg("tol") = 1e-12);

  m.def("eulerian_row", [](int n) {
    std::vector<long long> out;
    for (const BigInt& c : shared_eulerian_table().row(n)) out.push_back(c.convert_to<long long>());
    return out;
  });
  m.def("c_tilde", &c_tilde, py::arg("k"), py::arg("omega"));
  m.def("qr_polys", [](int k) {
    const QrPolys p = qr_polys(k);
    return py::make_tuple(to_ll(p.q), to_ll(p.r));
  }, "Coefficients of q_{k-1} and r_{k-1} in increasing powers (k <= 12 fits in 64 bits).");
  m.def("xi_roots", [](int k, bool odd) { return xi_roots(k, odd ? XiParity::Odd : XiParity::Even); },
        py::arg("k"), py::arg("odd") = true);
  m.def("eta", &eta);

  m.def("sampling_filter", [](const McarmaModel& model, double delta) { return sampling_filter(model, delta).coeffs; });
  m.def("filtered_spectrum", [](const McarmaModel& model, double delta) {
    return filtered_spectrum(model, delta).poly.coeffs;
  }, "Fourier coefficients F_{-m}..F_m of the filtered spectral density.");
  m.def("filtered_acov", py::overload_cast<const McarmaModel&, double, int>(&filtered_acov),
        py::arg("model"), py::arg("delta"), py::arg("h"));
  m.def("innovations_factorization", [](const std::vector<Matrix>& acov, double tol, int max_iters) {
    const MaRepresentation ma = innovations_factorization(acov, {tol, max_iters});
    return py::make_tuple(ma.psi, ma.sigma_z);
  }, py::arg("acov"), py::arg("tol") = 1e-10, py::arg("max_iters") = 100000);
  m.def("scalar_factorization", [](const std::vector<double>& acov) {
    const MaRepresentation ma = scalar_factorization(acov);
    return py::make_tuple(ma.psi, ma.sigma_z);
  });
  m.def("asymptotic_ma", [](const McarmaModel& model, double delta) {
    const AsymptoticMa a = asymptotic_ma(model);
    return py::dict(py::arg("unit_root_multiplicity") = a.unit_root_multiplicity, py::arg("eta") = a.eta_roots,
                    py::arg("poly") = a.poly, py::arg("sigma_z") = a.sigma_z(delta));
  }, py::arg("model"), py::arg("delta"));

  m.def("simulate", [](const McarmaModel& model, double delta, Eigen::Index n, std::uint64_t seed, std::uint64_t rep) {
    py::gil_scoped_release release;
    return simulate_path(model, delta, n, seed, rep).obs;
  }, py::arg("model"), py::arg("delta"), py::arg("n"), py::arg("seed"), py::arg("replication_id") = 0);
  m.def("verify", [](const McarmaModel& model, double delta, Eigen::Index n, std::uint64_t seed, int h_max) {
    VerifyReport r;
    {
      py::gil_scoped_release release;
      r = verify_model(model, delta, n, seed, h_max);
    }
    py::list checks;
    for (const auto& c : r.checks)
      checks.append(py::dict(py::arg("quantity") = c.quantity, py::arg("lag") = c.lag, py::arg("z") = c.z,
                             py::arg("pass") = c.pass));
    return py::dict(py::arg("pass") = r.pass, py::arg("max_abs_z") = r.max_abs_z, py::arg("checks") = checks);
  }, py::arg("model"), py::arg("delta"), py::arg("n"), py::arg("seed"), py::arg("h_max") = 5);
}
