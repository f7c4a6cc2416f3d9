#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "towerlab/ergodic_index.hpp"
#include "towerlab/io.hpp"
#include "towerlab/product_analysis.hpp"
#include "towerlab/synthesis.hpp"

namespace py = pybind11;
using namespace towerlab;

namespace {

// Big integers and rationals cross the boundary as decimal strings; the
// package wrapper turns them into int and Fraction.
std::vector<Rational> directions(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(parse_direction(s));
  return out;
}

std::vector<std::pair<std::string, std::string>> heights_of(const std::string& text, int up_to) {
  FamilyFile file = parse_family(text);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& hp : heights(file.family, up_to)) out.emplace_back(hp.H.get_str(), hp.h.get_str());
  return out;
}

std::string synthesize_text(const std::vector<std::string>& R, const std::vector<std::string>& S,
                            const std::vector<std::string>& R2, int stages) {
  DirectionSpec spec;
  if (R2.empty()) {
    spec.R = directions(R);
  } else {
    spec.mode = DirectionSpec::Mode::three_way;
    spec.R1 = directions(R);
    spec.R2 = directions(R2);
  }
  spec.S = directions(S);
  SynthesisResult result = synthesize(spec, stages);
  FamilyFile file;
  file.stages = stages;
  file.family = result.params;
  file.trace = result.trace;
  return serialize_family(file);
}

py::dict classify_text(const std::string& text, const std::string& p, const std::string& q, int horizon,
                       bool negative) {
  FamilyFile file = parse_family(text);
  if (!std::holds_alternative<AfsParams>(file.family)) throw std::invalid_argument("classify needs an afs4 family");
  const AfsParams& params = std::get<AfsParams>(file.family);
  if (horizon < 0) horizon = params.last_stage();
  Verdict v = classify(params, file.trace, BigInt(p), BigInt(q), horizon, negative);
  py::dict d;
  d["p"] = v.p.get_str();
  d["q"] = v.q.get_str();
  d["regime"] = to_string(v.regime);
  d["basis"] = to_string(v.basis);
  d["threshold"] = v.threshold;
  d["horizon"] = v.horizon;
  d["facts"] = v.facts;
  return d;
}

py::dict series_text(const std::string& text) {
  FamilyFile file = parse_family(text);
  if (!std::holds_alternative<VlSpec>(file.family)) throw std::invalid_argument("series needs a vl family");
  const VlSpec& spec = std::get<VlSpec>(file.family);
  SeriesReport r = series_index(spec.rule(), spec.L());
  py::dict d;
  py::list per_k;
  for (const auto& [k, s] : r.per_k) per_k.append(py::make_tuple(k, to_string(s)));
  d["per_k"] = per_k;
  d["ergodic_index"] = r.ergodic_index ? py::cast(*r.ergodic_index) : py::none();
  d["summary"] = r.summary;
  return d;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = towerlab::cli::run(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact rank-one tower constructions and product-action analysis.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InsufficientPrefix>(m, "InsufficientPrefix", PyExc_RuntimeError);

  m.def("heights", &heights_of, py::arg("family_json"), py::arg("up_to"),
        "Column and marker heights of stages 0..up_to as decimal strings.");
  m.def("digest", [](const std::string& text) { return family_digest(parse_family(text)); }, py::arg("family_json"));
  m.def("canonical", [](const std::string& text) { return serialize_family(parse_family(text)); },
        py::arg("family_json"));
  m.def("synthesize", &synthesize_text, py::arg("R"), py::arg("S"), py::arg("R2") = std::vector<std::string>{},
        py::arg("stages") = 8);
  m.def("classify", &classify_text, py::arg("family_json"), py::arg("p"), py::arg("q"), py::arg("horizon") = -1,
        py::arg("negative") = false);
  m.def("series_index", &series_text, py::arg("family_json"));
  m.def("run", &run_cli, py::arg("args"), "Runs the command-line tool; returns (exit_code, stdout, stderr).");
}
