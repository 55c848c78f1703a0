#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "toric/certificate.hpp"
#include "toric/chern.hpp"
#include "toric/error.hpp"
#include "toric/fan.hpp"
#include "toric/io.hpp"
#include "toric/pipeline.hpp"
#include "toric/primitive.hpp"
#include "toric/report.hpp"

namespace py = pybind11;
using namespace toric;

namespace {

// Exact values cross the boundary as strings ("3/2"); Python callers use
// fractions.Fraction when they need arithmetic.
std::string str(const Rational& q) { return q.get_str(); }

std::vector<std::string> names(const LatticeFan& f, RaySet s) {
  std::vector<std::string> out;
  s.for_each([&](std::size_t i) { out.push_back(f.name(i)); });
  return out;
}

RaySet ray_set(const LatticeFan& f, const std::vector<std::string>& labels) {
  RaySet s;
  for (const auto& l : labels) {
    const auto i = f.find_label(l);
    if (!i) throw Error(ErrorKind::index, "no ray named '" + l + "'");
    s.insert(*i);
  }
  return s;
}

py::dict relation_dict(const LatticeFan& f, const PrimitiveRelation& r) {
  py::dict d;
  d["text"] = format_relation(f, r);
  d["collection"] = names(f, r.collection);
  d["focus"] = names(f, r.focus);
  std::vector<std::string> mu;
  for (const auto& c : r.coefficients) mu.push_back(c.get_str());
  d["coefficients"] = mu;
  d["degree"] = r.degree;
  return d;
}

}  // namespace

PYBIND11_MODULE(_toricfan, m) {
  m.doc() = "Primitive relations, birational surgery and 2-Fano screening for smooth toric fans";

  py::register_exception<Error>(m, "ToricError", PyExc_ValueError);

  py::class_<LatticeFan>(m, "Fan")
      .def_property_readonly("rank", &LatticeFan::rank)
      .def_property_readonly("ray_count", &LatticeFan::ray_count)
      .def_property_readonly("picard_rank", &LatticeFan::picard_rank)
      .def_property_readonly("labels",
                             [](const LatticeFan& f) {
                               std::vector<std::string> out;
                               for (std::size_t i = 0; i < f.ray_count(); ++i) out.push_back(f.name(i));
                               return out;
                             })
      .def("rays",
           [](const LatticeFan& f) {
             std::vector<std::vector<long>> out;
             for (const auto& r : f.rays()) {
               std::vector<long> v;
               for (const auto& x : r.vector) v.push_back(x.get_si());
               out.push_back(v);
             }
             return out;
           })
      .def("max_cones",
           [](const LatticeFan& f) {
             std::vector<std::vector<std::size_t>> out;
             for (const auto& c : f.max_cones()) out.push_back(c.indices());
             return out;
           })
      .def("to_text", [](const LatticeFan& f) { return emit_fan(f); })
      .def("__eq__", [](const LatticeFan& a, const LatticeFan& b) { return a == b; })
      .def("__repr__", [](const LatticeFan& f) {
        return "<Fan dim=" + std::to_string(f.rank()) + " rays=" + std::to_string(f.ray_count()) + ">";
      });

  m.def("parse_fan", &parse_fan, py::arg("text"));
  m.def("read_fan", &read_fan_file, py::arg("path"));
  m.def("projective_space", &projective_space, py::arg("n"));
  m.def("bundle_over_p1", &build_bundle_over_p1, py::arg("degrees"));
  m.def(
      "reconstruct", [](const std::string& text, int dim) { return reconstruct_fan(parse_relations(text), dim); },
      py::arg("relations"), py::arg("dim"));

  m.def("is_fano", &is_fano);
  m.def("is_projective", &is_projective);
  m.def("is_valid", [](const LatticeFan& f) { return validate(f).ok(); });
  m.def("minimal_p_dimension", &minimal_p_dimension);
  m.def("primitive_relations", [](const LatticeFan& f) {
    py::list out;
    for (const auto& r : primitive_relations(f)) out.append(relation_dict(f, r));
    return out;
  });
  m.def("relevant_relations", [](const LatticeFan& f, const std::vector<std::string>& centered) {
    py::list out;
    for (const auto& r : relevant_collections(f, ray_set(f, centered))) {
      auto d = relation_dict(f, r.relation);
      d["type"] = r.type;
      out.append(d);
    }
    return out;
  });

  m.def("screen", [](const LatticeFan& f) {
    py::dict d;
    const auto s = screen_2fano(f);
    py::list values;
    for (const auto& [tau, v] : s.values) values.append(py::make_tuple(names(f, tau), str(v)));
    d["values"] = values;
    d["minimum"] = s.minimum ? py::object(py::str(str(*s.minimum))) : py::object(py::none());
    return d;
  });

  m.def(
      "run_pipeline",
      [](const LatticeFan& f, const std::vector<std::string>& centered, std::size_t cut_out) {
        const auto res = run_step1(f.labeled(), ray_set(f.labeled(), centered));
        const auto cert = build_certificate(res.log, 2, cut_out);
        py::dict d;
        d["output"] = res.output;
        d["log"] = log_to_json(res.log);
        d["certificate"] = certificate_to_json(cert);
        d["verdict"] = std::string(to_string(check_certificate(cert)));
        return d;
      },
      py::arg("fan"), py::arg("centered"), py::arg("cut_out") = 2);

  m.def("check_certificate", [](const std::string& json) {
    return std::string(to_string(check_certificate(certificate_from_json(json))));
  });
}
