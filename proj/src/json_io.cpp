#include "qrforce/json_io.hpp"

#include <stdexcept>

namespace qrf {

Json to_json(const Rational &q)
{
  return to_string(q);
}

Json to_json(const RatVector &v)
{
  Json j = Json::array();
  for (const auto &x : v)
    j.push_back(to_string(x));
  return j;
}

Json to_json(const RatMatrix &m)
{
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    j.push_back(to_json(m.row(i)));
  return j;
}

Json to_json(const Permutation &p)
{
  return p.image();
}

Json to_json(const Inertia &in)
{
  return {{"n_pos", in.n_pos}, {"n_zero", in.n_zero}, {"n_neg", in.n_neg}};
}

Json to_json(const StepPermuton &p)
{
  return {{"k", p.k()}, {"A", to_json(p.matrix())}};
}

Json to_json(const NonForcingEvidence &e)
{
  Json j;
  j["quadruple"] = Json::array();
  for (const auto &p : e.quadruple)
    j["quadruple"].push_back(p.to_string());
  j["n"] = e.n;
  j["gradients"] = Json::array();
  for (const auto &g : e.gradients)
    j["gradients"].push_back(to_json(g));
  j["ordering"] = e.ordering;
  j["rank3_ok"] = e.rank3_ok;
  j["alpha"] = to_json(e.alpha);
  j["hessian_combo"] = to_json(e.hessian_combo);
  j["full_inertia"] = to_json(e.full_inertia);
  j["restricted_inertia"] = e.restricted_inertia ? to_json(*e.restricted_inertia) : Json(nullptr);
  j["verdict"] = std::string(verdict_name(e.verdict));
  if (e.witness) {
    j["witness"] = {{"w_plus", to_json(e.witness->w_plus)},
                    {"w_minus", to_json(e.witness->w_minus)},
                    {"value_plus", to_string(e.witness->value_plus)},
                    {"value_minus", to_string(e.witness->value_minus)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const AppendixItem &item)
{
  return {{"label", item.label},
          {"n", item.n},
          {"pass", item.ok()},
          {"gradient_entries", item.gradient_entries},
          {"gradient_mismatches", item.gradient_mismatches},
          {"hessian_entries", item.hessian_entries},
          {"hessian_mismatches", item.hessian_mismatches},
          {"listed_hessian_scale", to_string(listed_hessian_scale())},
          {"first_mismatch", item.first_mismatch},
          {"max_eigenvalue_error", item.max_eigenvalue_error},
          {"spectrum_ok", item.spectrum_ok},
          {"computed_inertia", to_json(item.computed_inertia)},
          {"expected_inertia", to_json(item.expected_inertia)}};
}

Json to_json(const FactReport &r)
{
  Json lines = Json::array();
  for (const auto &l : r.lines)
    lines.push_back({{"name", l.name}, {"pass", l.pass}, {"computed", l.computed}, {"expected", l.expected}});
  return {{"case", r.case_id}, {"pass", r.ok()}, {"lines", lines}};
}

Json to_json(const SolvedWitness &w)
{
  return {{"case", w.case_id},
          {"s", {to_string(w.s_lo), to_string(w.s_hi)}},
          {"t", {to_string(w.t_lo), to_string(w.t_hi)}},
          {"s_mid", to_string(w.s_mid)},
          {"t_mid", to_string(w.t_mid)},
          {"s_mid_approx", to_double(w.s_mid)},
          {"t_mid_approx", to_double(w.t_mid)},
          {"residual_g1", to_string(w.residual_g1)},
          {"residual_g2", to_string(w.residual_g2)},
          {"residual_g1_approx", to_double(w.residual_g1)},
          {"residual_g2_approx", to_double(w.residual_g2)},
          {"outer_iterations", w.outer_iterations},
          {"bracket_signs_ok", w.bracket_signs_ok},
          {"lipschitz_s", to_string(w.lipschitz_s)},
          {"lipschitz_t", to_string(w.lipschitz_t)}};
}

Json to_json(const WitnessBundle &b)
{
  Json j = to_json(b.permuton);
  j["enclosure"] = to_json(b.solved);
  j["densities"] = Json::object();
  for (const auto &[sigma, d] : b.densities)
    j["densities"][sigma.to_string()] = {{"exact", to_string(d)}, {"approx", to_double(d)}};
  j["densities_cross_checked"] = b.densities_cross_checked;
  j["nonuniform_cell"] = {b.nonuniform_cell.first, b.nonuniform_cell.second};
  j["nonuniform_mass"] = to_string(b.nonuniform_mass);
  j["note"] = b.note;
  return j;
}

Json to_json(const BivariatePoly &p)
{
  Json j = Json::array();
  for (const auto &[e, c] : p.terms())
    j.push_back({{"exponents", {e[0], e[1]}}, {"coefficient", to_string(c)}});
  return j;
}

Rational rational_from_json(const Json &j)
{
  if (j.is_number_integer())
    return Rational(Integer(std::to_string(j.get<long long>())));
  return parse_rational(j.get<std::string>());
}

RatVector vector_from_json(const Json &j)
{
  RatVector v;
  for (const auto &x : j)
    v.push_back(rational_from_json(x));
  return v;
}

RatMatrix matrix_from_json(const Json &j)
{
  std::vector<RatVector> rows;
  for (const auto &r : j)
    rows.push_back(vector_from_json(r));
  return RatMatrix::from_rows(rows);
}

Permutation permutation_from_json(const Json &j)
{
  if (j.is_string())
    return parse_permutation(j.get<std::string>());
  return Permutation(j.get<std::vector<int>>());
}

Inertia inertia_from_json(const Json &j)
{
  return {j.at("n_pos").get<std::size_t>(), j.at("n_zero").get<std::size_t>(), j.at("n_neg").get<std::size_t>()};
}

StepPermuton permuton_from_json(const Json &j)
{
  if (j.contains("A")) {
    StepPermuton p(matrix_from_json(j.at("A")));
    if (j.contains("k") && j.at("k").get<int>() != p.k())
      throw std::invalid_argument("permuton JSON: k does not match the matrix size");
    return p;
  }
  std::vector<Permutation> perms;
  for (const auto &p : j.at("perms"))
    perms.push_back(permutation_from_json(p));
  return mixture_of_permutation_matrices(perms, vector_from_json(j.at("weights")));
}

NonForcingEvidence evidence_from_json(const Json &j)
{
  NonForcingEvidence e;
  for (std::size_t i = 0; i < 4; ++i)
    e.quadruple[i] = permutation_from_json(j.at("quadruple")[i]);
  e.n = j.at("n").get<int>();
  for (const auto &g : j.at("gradients"))
    e.gradients.push_back(vector_from_json(g));
  e.ordering = j.at("ordering").get<std::array<int, 4>>();
  e.rank3_ok = j.at("rank3_ok").get<bool>();
  e.alpha = vector_from_json(j.at("alpha"));
  e.hessian_combo = matrix_from_json(j.at("hessian_combo"));
  e.full_inertia = inertia_from_json(j.at("full_inertia"));
  if (!j.at("restricted_inertia").is_null())
    e.restricted_inertia = inertia_from_json(j.at("restricted_inertia"));
  const auto v = j.at("verdict").get<std::string>();
  if (v == "CorollaryApplies")
    e.verdict = Verdict::CorollaryApplies;
  else if (v == "KernelRestrictedApplies")
    e.verdict = Verdict::KernelRestrictedApplies;
  else if (v == "Inconclusive")
    e.verdict = Verdict::Inconclusive;
  else
    throw std::invalid_argument("evidence JSON: unknown verdict " + v);
  if (!j.at("witness").is_null()) {
    const auto &w = j.at("witness");
    e.witness = WitnessPair{vector_from_json(w.at("w_plus")), vector_from_json(w.at("w_minus")),
                            rational_from_json(w.at("value_plus")), rational_from_json(w.at("value_minus"))};
  }
  return e;
}

} // namespace qrf
