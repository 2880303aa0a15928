#include "qrforce/appendix.hpp"
#include "qrforce/certifier.hpp"
#include "qrforce/exceptional.hpp"
#include "qrforce/json_io.hpp"
#include "qrforce/permuton.hpp"
#include "qrforce/perturbation.hpp"
#include "qrforce/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qrf;

// Results cross the boundary as JSON text; the Python package decodes them
// and turns "p/q" strings into Fractions.
namespace {

std::string dump(const Json &j)
{
  return j.dump();
}

StepPermuton permuton_arg(const std::string &json_text)
{
  return permuton_from_json(Json::parse(json_text));
}

RatVector alpha_arg(const std::vector<std::string> &alpha)
{
  RatVector a;
  for (const auto &s : alpha)
    a.push_back(parse_rational(s));
  return a;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Exact pattern-density and non-forcing certificate computations";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("version", &library_version);

  m.def("pattern_density", [](const std::string &sigma, const std::string &pi) {
    return to_string(pattern_density_perm(parse_permutation(sigma), parse_permutation(pi)));
  });

  m.def("density", [](const std::string &sigma, const std::string &permuton_json) {
    py::gil_scoped_release release;
    return to_string(density_in_step_permuton(parse_permutation(sigma), permuton_arg(permuton_json)));
  });

  m.def("uniform_permuton", [](int k) { return dump(to_json(StepPermuton::uniform(k))); });

  m.def("h_value", [](const std::string &sigma, int k, const std::vector<std::string> &x) {
    return to_string(h_value(parse_permutation(sigma), PerturbationPoint(k, alpha_arg(x))));
  });

  m.def("gradient", [](const std::string &sigma, int k) {
    py::gil_scoped_release release;
    return dump(to_json(h_gradient_at_zero(parse_permutation(sigma), k)));
  });

  m.def("hessian", [](const std::string &sigma, int k) {
    py::gil_scoped_release release;
    return dump(to_json(h_hessian_at_zero(parse_permutation(sigma), k)));
  });

  m.def("classify", [](const std::string &perms) {
    const auto c = classify_quadruple(parse_permutation_list(perms));
    return std::string(tag_name(c.tag));
  });

  m.def(
    "certify",
    [](const std::string &quad, int n, const std::vector<std::string> &alpha) {
      py::gil_scoped_release release;
      const auto q = parse_quadruple(quad);
      const auto ev = n > 0 ? certify_non_forcing(q, n, alpha_arg(alpha)) : certify_auto(q, alpha_arg(alpha));
      return dump(to_json(ev));
    },
    py::arg("quad"), py::arg("n"), py::arg("alpha") = std::vector<std::string>{});

  m.def("check_evidence", [](const std::string &evidence_json) {
    const auto r = check_evidence(evidence_from_json(Json::parse(evidence_json)));
    return std::make_pair(r.ok, r.problems);
  });

  m.def("enumerate_allone", []() {
    const auto e = enumerate_allone_quadruples();
    std::vector<std::string> classes;
    for (const auto &q : e.classes)
      classes.push_back(to_string(q));
    return py::make_tuple(e.latin_squares, e.quadruples, classes);
  });

  m.def("enumerate_zerocombo", []() {
    const auto e = enumerate_zerocombo_quadruples();
    std::vector<std::pair<std::string, std::string>> classes;
    for (const auto &q : e.classes)
      classes.emplace_back(q.plus[0].to_string() + "," + q.plus[1].to_string(),
                           q.minus[0].to_string() + "," + q.minus[1].to_string());
    return py::make_tuple(e.quadruples, classes);
  });

  m.def("exceptional_facts", [](int id) {
    py::gil_scoped_release release;
    return dump(to_json(verify_lemma_facts(build_case(id))));
  });

  m.def("exceptional_witness", [](int id) {
    py::gil_scoped_release release;
    const auto c = build_case(id);
    return dump(to_json(emit_witness(c, solve_case(c), false)));
  });

  m.def("mc_pattern_counts", [](const std::string &permuton_json, int m, std::uint64_t trials, std::uint64_t seed) {
    const auto p = permuton_arg(permuton_json);
    py::gil_scoped_release release;
    return mc_pattern_counts(p, m, trials, seed);
  });

  m.def(
    "reproduce",
    [](const std::vector<std::string> &only, std::uint64_t mc_trials) {
      py::gil_scoped_release release;
      ReproduceOptions opts;
      opts.only = {only.begin(), only.end()};
      opts.mc_trials = mc_trials;
      return dump(cmd_reproduce(opts).to_json());
    },
    py::arg("only") = std::vector<std::string>{}, py::arg("mc_trials") = 0);
}
