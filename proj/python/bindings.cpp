#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spsynth/closure.hpp"
#include "spsynth/oracle.hpp"
#include "spsynth/synth.hpp"

namespace py = pybind11;
using namespace spsynth;

namespace {

std::vector<Term> parse_all(const std::vector<std::string>& texts) {
  std::vector<Term> out;
  for (const auto& t : texts) out.push_back(parse_term(t));
  return out;
}

std::vector<std::string> strs(const std::vector<Term>& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.str());
  return out;
}

SynthOptions options(bool prune) {
  SynthOptions o;
  o.prune_dominated = prune;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structural descriptions of forbidden-suborder ideals of series-parallel orders";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SynthError>(m, "SynthError", PyExc_ValueError);
  py::register_exception<DescriptionError>(m, "DescriptionError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

  m.def("canonical", [](const std::string& text) { return parse_term(text).str(); }, py::arg("term"),
        "Canonical rendering of a term.");
  m.def("size", [](const std::string& text) { return parse_term(text).size(); }, py::arg("term"));
  m.def("is_suborder", [](const std::string& p, const std::string& q) { return is_suborder(parse_term(p), parse_term(q)); },
        py::arg("p"), py::arg("q"));
  m.def("enumerate", [](std::size_t n) { return strs(enumerate_sp(n)); }, py::arg("max_size"),
        "Every canonical term of size <= max_size, in total order.");
  m.def("member",
        [](const std::vector<std::string>& forbidden, const std::string& t) {
          return member(make_ideal(parse_all(forbidden)), parse_term(t));
        },
        py::arg("forbidden"), py::arg("term"));
  m.def("ideal_key", [](const std::vector<std::string>& forbidden) { return make_ideal(parse_all(forbidden)).key(); },
        py::arg("forbidden"));
  m.def("forb_upto",
        [](const std::vector<std::string>& forbidden, std::size_t n) {
          return strs(oracle::forb_upto(parse_all(forbidden), n));
        },
        py::arg("forbidden"), py::arg("max_size"));
  m.def("synthesize",
        [](const std::vector<std::string>& forbidden, bool prune) {
          return serialize(synthesize(parse_all(forbidden), options(prune)));
        },
        py::arg("forbidden"), py::arg("prune") = false, "Description as a JSON document.");
  m.def("validate", [](const std::string& document) { return validate(deserialize(document)).violations; },
        py::arg("document"), "List of violations; empty when the description is well formed.");
  m.def("generate",
        [](const std::string& document, std::size_t n) {
          const auto d = deserialize(document);
          return strs(generate_upto(d, d.root, n).terms);
        },
        py::arg("document"), py::arg("max_size"));
  m.def("verify",
        [](const std::vector<std::string>& forbidden, std::size_t n, bool prune) {
          const auto f = parse_all(forbidden);
          return oracle::verify_equivalence(f, synthesize(f, options(prune)), n).to_json();
        },
        py::arg("forbidden"), py::arg("max_size") = 7, py::arg("prune") = false, "Equivalence report as JSON.");
  m.def("diamond_free_shape", [](const std::string& t) { return oracle::diamond_free_shape(parse_term(t)); },
        py::arg("term"));
}
