#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qloop/modrep.hpp"
#include "qloop/weyl.hpp"
#include "suites.hpp"

namespace py = pybind11;
using namespace qloop;

namespace {

std::vector<std::string> coeff_strs(const ZPoly& p) {
  std::vector<std::string> r;
  for (const auto& c : p.coeffs()) r.push_back(c.str());
  return r;
}

ZPoly from_strs(const std::vector<std::string>& cs) {
  std::vector<Scalar> v;
  for (const auto& c : cs) v.push_back(parse_scalar(c));
  return ZPoly(v);
}

cli::Config config_from(const py::dict& d) {
  cli::Config c;
  for (auto [k, v] : d) {
    std::string key = py::str(k);
    if (key == "M") c.M = v.cast<int>();
    else if (key == "N") c.N = v.cast<int>();
    else if (key == "a") c.a = py::str(v);
    else if (key == "b") c.b = py::str(v);
    else if (key == "window") c.window = v.cast<int>();
    else if (key == "order") c.order = v.cast<int>();
    else if (key == "degree_bound" || key == "degree-bound") c.degree_bound = v.cast<int>();
    else if (key == "height") c.height = v.cast<int>();
    else if (key == "nmax") c.nmax = v.cast<int>();
    else if (key == "count") c.count = v.cast<int>();
    else if (key == "seed") c.seed = v.cast<std::uint64_t>();
    else if (key == "Q") c.Q = py::str(v);
    else if (key == "Pprev") c.Pprev = py::str(v);
    else throw py::key_error("unknown config key " + key);
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_qloop, m) {
  m.doc() = "Exact arithmetic and module checks for quantum loop superalgebras";

  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Scalar>(m, "Scalar")
      .def(py::init([](const std::string& s) { return parse_scalar(s); }))
      .def(py::init<long>())
      .def("__str__", &Scalar::str)
      .def("__repr__", [](const Scalar& s) { return "Scalar('" + s.str() + "')"; })
      .def("__eq__", [](const Scalar& x, const Scalar& y) { return x == y; })
      .def("__add__", [](const Scalar& x, const Scalar& y) { return x + y; })
      .def("__sub__", [](const Scalar& x, const Scalar& y) { return x - y; })
      .def("__mul__", [](const Scalar& x, const Scalar& y) { return x * y; })
      .def("__truediv__", [](const Scalar& x, const Scalar& y) { return x / y; })
      .def("__neg__", [](const Scalar& x) { return -x; })
      .def("is_zero", &Scalar::is_zero);

  py::class_<TorsionTriple>(m, "TorsionTriple")
      .def(py::init([](const std::string& c, const std::vector<std::string>& Q, const std::vector<std::string>& P) {
             return TorsionTriple{parse_scalar(c), from_strs(Q), from_strs(P)};
           }),
           py::arg("c"), py::arg("Q"), py::arg("P"))
      .def_property_readonly("c", [](const TorsionTriple& t) { return t.c.str(); })
      .def_property_readonly("Q", [](const TorsionTriple& t) { return coeff_strs(t.Q); })
      .def_property_readonly("P", [](const TorsionTriple& t) { return coeff_strs(t.P); })
      .def("invariant_error", &TorsionTriple::invariant_error)
      .def("__eq__", [](const TorsionTriple& x, const TorsionTriple& y) { return x == y; })
      .def("__mul__", [](const TorsionTriple& x, const TorsionTriple& y) { return torsion_product(x, y); })
      .def("__repr__", &TorsionTriple::str);

  m.def(
      "torsion_to_f",
      [](const TorsionTriple& t, int order) {
        auto f = torsion_to_series(t, order).f;
        std::vector<std::string> r;
        for (int n = -order; n <= order; ++n) r.push_back(f.at(n).str());
        return r;
      },
      "f_{-order}..f_{order} of the triple", py::arg("t"), py::arg("order"));
  m.def(
      "f_to_torsion",
      [](const std::vector<std::string>& f, const std::string& c, int bound) {
        if (f.size() % 2 == 0) throw py::value_error("window must have odd length");
        FWindow w(int(f.size() / 2));
        for (int n = -w.order; n <= w.order; ++n) w.at(n) = parse_scalar(f[size_t(n + w.order)]);
        return series_to_torsion(w, parse_scalar(c), bound);
      },
      py::arg("f"), py::arg("c"), py::arg("degree_bound"));

  py::class_<LoopModule>(m, "LoopModule")
      .def_property_readonly("dim", &LoopModule::dim)
      .def_readonly("label", &LoopModule::label)
      .def(
          "check_relations",
          [](LoopModule& lm, int window) {
            CatalogOptions o;
            o.window = window;
            o.chevalley = true;
            auto r = check_relations(lm, o);
            return py::make_tuple(r.checked, r.failures);
          },
          py::arg("window") = 1)
      .def("highest_weight", [](LoopModule& lm) { return highest_weight(lm).str(); });

  m.def(
      "fundamental_evaluation",
      [](int M, int N, const std::string& a) { return fundamental_evaluation(M, N, parse_scalar(a)); }, py::arg("M"),
      py::arg("N"), py::arg("a") = "a");
  m.def("tensor", [](LoopModule& x, LoopModule& y) { return tensor(x, y); });

  m.def("suite_names", &cli::suite_names);
  m.def(
      "run_suite",
      [](const std::string& suite, const py::dict& cfg) {
        auto c = config_from(cfg);
        return cli::report(suite, c, cli::run_suite(suite, c)).dump();
      },
      "JSON report, as the command line tool prints it", py::arg("suite"), py::arg("config") = py::dict());
}
