#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tinv/classical.hpp"
#include "tinv/oracle.hpp"
#include "tinv/report.hpp"

namespace py = pybind11;
using namespace tinv;

namespace {

std::map<std::pair<int, int>, int> khovanov(const Diagram& d, bool reduced, const std::string& field) {
  return kh_homology(d, KhVariant::Standard, reduced, field_by_name(field));
}

std::string report(const Diagram& d, const std::vector<std::string>& fields, int ti, std::size_t cap,
                   const std::string& name) {
  ReportOptions opt;
  opt.fields.clear();
  for (const auto& f : fields) opt.fields.push_back(field_by_name(f).name());
  opt.i_max = ti;
  opt.scan.cap = cap ? cap : default_cap();
  InvariantReport r;
  {
    py::gil_scoped_release release;
    r = compute_report(d, opt);
  }
  r.name = name;
  return report_json(r, false).dump();
}

int t_of(const Diagram& d, const std::string& field) {
  py::gil_scoped_release release;
  ScanOptions opt;
  opt.cap = default_cap();
  return t_invariant(scan(decorate(d), opt), field_by_name(field));
}

}  // namespace

PYBIND11_MODULE(_tinv, m) {
  m.doc() = "Concordance invariants t and T_i of knots, with the signature and slice-genus bounds.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnsupportedDiagram>(m, "UnsupportedDiagram", PyExc_ValueError);
  py::register_exception<ResourceCapExceeded>(m, "ResourceCapExceeded", PyExc_MemoryError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::class_<Diagram>(m, "Diagram")
      .def_property_readonly("num_crossings", &Diagram::num_crossings)
      .def_property_readonly("num_components", [](const Diagram& d) { return d.num_components; })
      .def_property_readonly("writhe", &Diagram::writhe)
      .def_property_readonly("signs", [](const Diagram& d) { return d.signs; })
      .def("to_pd", &Diagram::to_pd)
      .def("mirror", &Diagram::mirror)
      .def("crossing_change", &Diagram::crossing_change, py::arg("crossing"))
      .def("__repr__", [](const Diagram& d) { return "<Diagram " + d.to_pd() + ">"; });

  m.def("parse_pd", &parse_pd, py::arg("text"), "Diagram from PD[X(a,b,c,d),...] text.");
  m.def("parse_braid", &parse_braid, py::arg("word"), py::arg("strands") = 0,
        "Closure of a braid word such as \"1 -2 1 -2\"; strands 0 infers the count.");
  m.def("signature", &signature, py::arg("diagram"));
  m.def("jones_polynomial", &jones_polynomial, py::arg("diagram"), "Jones polynomial as {power of q: coefficient}.");
  m.def("khovanov", &khovanov, py::arg("diagram"), py::arg("reduced") = true, py::arg("field") = "Q",
        "Khovanov homology ranks {(q, h): rank} from the cube of resolutions.");
  m.def("t_invariant", &t_of, py::arg("diagram"), py::arg("field") = "Q");
  m.def("torus_t_expected", &torus_t_expected, py::arg("p"), py::arg("q"));
  m.def("report_json", &report, py::arg("diagram"), py::arg("fields") = std::vector<std::string>{"Q"},
        py::arg("ti") = 4, py::arg("cap") = 0, py::arg("name") = "K");
}
