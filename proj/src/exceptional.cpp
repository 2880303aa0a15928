#include "qrforce/exceptional.hpp"

#include "qrforce/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace qrf {

namespace {

using nlohmann::json;

const std::array<char, 1> s_name{'s'};

const json &case_json(int id)
{
  for (const auto &c : fixtures::exceptional().at("cases"))
    if (c.at("id").get<int>() == id)
      return c;
  throw std::invalid_argument("exceptional case " + std::to_string(id) + " does not exist");
}

Rational rat(const json &j)
{
  return parse_rational(j.get<std::string>());
}

template<std::size_t N>
Polynomial<N> poly(const json &j, const std::array<char, N> &names)
{
  return parse_polynomial<N>(j.get<std::string>(), names);
}

// {"scale": ..., "poly": ...} -> poly / scale.
template<std::size_t N>
Polynomial<N> scaled(const json &j, const std::array<char, N> &names)
{
  return poly<N>(j.at("poly"), names) * (Rational(1) / rat(j.at("scale")));
}

Poly1 in_s(const BivariatePoly &p, const Rational &t)
{
  return remap<2, 1>(p.substitute(1, t), {0, -1});
}

Poly1 in_t(const BivariatePoly &p, const Rational &s)
{
  return remap<2, 1>(p.substitute(0, s), {-1, 0});
}

// p(s, t) = sum_i coefficient_i(t) s^i.
std::vector<Poly1> s_coefficients(const BivariatePoly &p)
{
  std::vector<Poly1> c(p.degree(0) + 1);
  for (const auto &[e, a] : p.terms())
    c[e[0]].add_term({e[1]}, a);
  return c;
}

Poly1 quadratic_discriminant_in_s(const BivariatePoly &p)
{
  auto c = s_coefficients(p);
  if (c.size() != 3)
    throw std::invalid_argument("expected a quadratic in s");
  return c[1] * c[1] - Rational(4) * (c[2] * c[0]);
}

// Lower bound of p on [lo, hi] from Bernstein coefficients.
Rational lower_bound(const Poly1 &p, const Rational &lo, const Rational &hi)
{
  return bernstein_range(remap<1, 2>(p, {0}), Box{lo, hi, 0, 0}).first;
}

Rational one_over(long d)
{
  return Rational(1, d);
}

std::string sign_text(int s)
{
  return s > 0 ? "positive" : s < 0 ? "negative" : "zero";
}

class Recorder
{
public:
  explicit Recorder(FactReport &r) : r_(r) {}

  void check(std::string name, bool pass, std::string computed, std::string expected)
  {
    r_.lines.push_back({std::move(name), pass, std::move(computed), std::move(expected)});
  }

  void equal(std::string name, const Rational &computed, const Rational &expected)
  {
    check(std::move(name), computed == expected, to_string(computed), to_string(expected));
  }

  void sign(std::string name, const Rational &value, int expected)
  {
    check(std::move(name), sgn(value) == expected, to_string(value), sign_text(expected));
  }

  template<std::size_t N>
  void equal(std::string name, const Polynomial<N> &computed, const Polynomial<N> &expected,
             const std::array<char, N> &names)
  {
    check(std::move(name), computed == expected, computed.to_string(names), expected.to_string(names));
  }

  void certified(std::string name, const SignCertificate &cert, int expected)
  {
    std::string detail = cert.certified ? std::to_string(cert.leaves) + " leaves, margin " + to_string(cert.margin)
                                        : "not certified";
    if (cert.counterexample)
      detail += ", counterexample (" + to_string((*cert.counterexample)[0]) + ", " +
                to_string((*cert.counterexample)[1]) + ")";
    check(std::move(name), cert.certified, detail, sign_text(expected));
  }

private:
  FactReport &r_;
};

void replay_case1_monotonicity(const ExceptionalCase &c, const json &m, Recorder &rec)
{
  const std::array<char, 1> t_name{'t'};
  const auto numerator = poly<2>(m.at("derivative").at("poly"), st_names);
  const Rational scale = rat(m.at("derivative").at("scale"));
  rec.equal("d/ds(g1+g2) numerator", (c.g1 + c.g2).derivative(0) * scale, numerator, st_names);

  const Poly1 at_s0 = in_t(numerator, 0);
  rec.equal("numerator at s = 0", at_s0, poly<1>(m.at("at_s0"), t_name), t_name);
  rec.certified("numerator at s = 0 positive on [0,1]", certify_sign(at_s0, 0, 1, 1), 1);

  const Poly1 d_expanded = poly<1>(m.at("discriminant_expanded"), t_name);
  rec.equal("D(t) displayed expansion", poly<1>(m.at("discriminant"), t_name), d_expanded, t_name);
  rec.equal("D(t) = discriminant of the numerator in s", quadratic_discriminant_in_s(numerator), d_expanded,
            t_name);
  const Poly1 dd = poly<1>(m.at("discriminant_derivative"), t_name);
  rec.equal("dD/dt", d_expanded.derivative(0), dd, t_name);

  std::vector<Rational> values;
  for (const auto &v : m.at("derivative_values")) {
    const Rational t = rat(v[0]);
    const Rational got = dd.evaluate({t});
    values.push_back(got);
    rec.equal("dD/dt(" + v[0].get<std::string>() + ")", got, rat(v[1]));
  }
  const Rational lo = rat(m.at("peak_bracket")[0]);
  const Rational hi = rat(m.at("peak_bracket")[1]);
  const bool one_root_in_bracket = dd.degree(0) == 3 && count_sign_changes(values) == 3 &&
                                   sgn(dd.evaluate({Rational(0)})) > 0 && sgn(dd.evaluate({lo})) > 0 &&
                                   sgn(dd.evaluate({hi})) < 0 && sgn(dd.evaluate({Rational(1)})) < 0;
  rec.check("dD/dt has its only root in [0,1] inside (" + to_string(lo) + ", " + to_string(hi) + ")",
            one_root_in_bracket, one_root_in_bracket ? "three sign changes, bracketed" : "bracketing failed",
            "bracketed");

  // Each monomial bounded at whichever bracket end maximizes it.
  Rational bound = 0;
  for (const auto &[e, a] : d_expanded.terms())
    bound += a * pow(sgn(a) > 0 ? hi : lo, static_cast<unsigned>(e[0]));
  rec.equal("bound on D(t0)", bound, rat(m.at("peak_bound")));
  rec.sign("bound on D(t0) is negative", bound, -1);
  rec.certified("D(t) < 0 on [0,1] (Bernstein)", certify_sign(d_expanded, 0, 1, -1), -1);
}

void replay_case2_monotonicity(const ExceptionalCase &c, const json &m, Recorder &rec)
{
  const std::array<char, 1> t_name{'t'};
  const auto numerator = poly<2>(m.at("derivative").at("poly"), st_names);
  const Rational scale = rat(m.at("derivative").at("scale"));
  rec.equal("d/ds(g1+g2) numerator", (c.g1 + c.g2).derivative(0) * scale, numerator, st_names);

  const auto coeffs = s_coefficients(numerator);
  const Poly1 leading = poly<1>(m.at("leading").at("poly"), t_name);
  rec.equal("leading coefficient f3", coeffs.at(3), leading, t_name);
  const Poly1 f3 = leading * (Rational(1) / rat(m.at("leading").at("scale")));

  const Rational disc_shown = poly<1>(m.at("leading_discriminant"), t_name).coefficient({0});
  rec.equal("discriminant of f3", discriminant(f3), disc_shown);
  rec.sign("discriminant of f3 is negative", discriminant(f3), -1);
  for (const auto &v : m.at("leading_values")) {
    const Rational t = rat(v[0]);
    rec.equal("f3(" + v[0].get<std::string>() + ") displayed value", f3.evaluate({t}), rat(v[1]));
    rec.sign("f3(" + v[0].get<std::string>() + ") sign", f3.evaluate({t}), sgn(rat(v[1])));
  }
  rec.certified("f3 > 0 on [3/20,1] (Bernstein)", certify_sign(f3, c.t_lo, c.t_hi, 1), 1);

  // f3 s^3 <= f3 s^2 on [0,1] when f3 > 0.
  BivariatePoly valid_bound;
  for (const auto &[e, a] : numerator.terms())
    valid_bound.add_term({e[0] == 3 ? 2 : e[0], e[1]}, a);
  const auto shown_bound = poly<2>(m.at("bound").at("poly"), st_names);
  rec.equal("b(s,t) = numerator with f3 s^3 replaced by f3 s^2", valid_bound, shown_bound, st_names);
  rec.equal("b(0,t)", in_t(shown_bound, 0), poly<1>(m.at("bound_at_s0"), t_name), t_name);
  rec.certified("displayed b(s,t) < 0 on [0,1]x[3/20,1] (Bernstein)",
                certify_sign(shown_bound, Box{0, 1, c.t_lo, c.t_hi}, -1), -1);
  rec.certified("corrected bound < 0 on [0,1]x[3/20,1] (Bernstein)",
                certify_sign(valid_bound, Box{0, 1, c.t_lo, c.t_hi}, -1), -1);

  const Poly1 d_expanded = poly<1>(m.at("discriminant_expanded"), t_name);
  rec.equal("D(t) displayed expansion", poly<1>(m.at("discriminant"), t_name), d_expanded, t_name);
  rec.equal("D(t) = discriminant of displayed b in s", quadratic_discriminant_in_s(shown_bound), d_expanded,
            t_name);
  const Poly1 dd = poly<1>(m.at("discriminant_derivative"), t_name);
  rec.equal("dD/dt", d_expanded.derivative(0), dd, t_name);
  rec.sign("discriminant of dD/dt is negative", discriminant(dd), -1);
  for (const auto &v : m.at("derivative_signs")) {
    const Rational t = rat(v[0]);
    const int expected = v[1].get<std::string>() == ">" ? 1 : -1;
    rec.sign("dD/dt(" + v[0].get<std::string>() + ") sign", dd.evaluate({t}), expected);
  }
  rec.certified("dD/dt < 0 on [3/20,1] (Bernstein)", certify_sign(dd, c.t_lo, c.t_hi, -1), -1);

  const Rational t0 = rat(m.at("discriminant_value")[0]);
  const Rational shown = rat(m.at("discriminant_value")[1]);
  const Rational d_t0 = d_expanded.evaluate({t0});
  rec.equal("D(" + m.at("discriminant_value")[0].get<std::string>() + ") displayed value", d_t0, shown);
  const Rational rounded(Integer(static_cast<long>(std::lround(to_double(d_t0)))));
  rec.check("D(" + m.at("discriminant_value")[0].get<std::string>() + ") rounds to displayed value and is negative",
            rounded == shown && sgn(d_t0) < 0, to_string(d_t0), to_string(shown));
}

void replay_crossing(const ExceptionalCase &c, const json &x, Recorder &rec)
{
  const std::array<char, 1> t_name{'t'};
  const Rational twelfth = one_over(12);
  const auto &at0 = x.at("g_at_s0");
  const Poly1 g1_0 = in_t(c.g1, 0), g2_0 = in_t(c.g2, 0);
  rec.check("g1(0,t) independent of t", g1_0.is_constant(), g1_0.to_string(t_name), "constant");
  rec.check("g2(0,t) independent of t", g2_0.is_constant(), g2_0.to_string(t_name), "constant");
  rec.equal("g1(0,t)", g1_0.coefficient({0}), rat(at0.at("g1")));
  rec.equal("g2(0,t)", g2_0.coefficient({0}), rat(at0.at("g2")));
  const Rational sum0 = g1_0.coefficient({0}) + g2_0.coefficient({0});
  rec.equal("g1(0,t)+g2(0,t)", sum0, rat(at0.at("sum")));
  rec.sign("g1(0,t)+g2(0,t) - 1/12", sum0 - twelfth, -c.monotone_sign);

  const Poly1 sum1 = in_t(c.g1 + c.g2, 1);
  Poly1 shown = scaled<1>(x.at("sum_at_s1"), t_name);
  if (x.at("sum_at_s1").contains("offset"))
    shown += Poly1(rat(x.at("sum_at_s1").at("offset")));
  rec.equal("g1(1,t)+g2(1,t)", sum1, shown, t_name);
  const Rational scale = rat(x.at("sum_at_s1").at("scale"));
  const Poly1 numerator = poly<1>(x.at("sum_at_s1").at("poly"), t_name);

  if (x.contains("sum_at_s1_lower")) {
    const Poly1 lower = poly<1>(x.at("sum_at_s1_lower"), t_name);
    const Rational gap = lower_bound(numerator - lower, c.t_lo, c.t_hi);
    rec.check("displayed lower bound for g1(1,t)+g2(1,t) holds", sgn(gap) >= 0, to_string(gap), ">= 0");
    const Poly1 rewritten = poly<1>(x.at("sum_at_s1_lower_rewritten"), t_name);
    rec.equal("lower bound rewritten", lower, rewritten, t_name);
    rec.certified("rewritten lower bound positive", certify_sign(rewritten, c.t_lo, c.t_hi, 1), 1);
  }
  if (x.contains("sum_at_s1_upper")) {
    const Poly1 upper = poly<1>(x.at("sum_at_s1_upper").at("poly"), t_name);
    const Rational gap = lower_bound(upper - numerator, c.t_lo, c.t_hi);
    rec.check("displayed upper bound for g1(1,t)+g2(1,t) holds", sgn(gap) >= 0, to_string(gap), ">= 0");
    const Poly1 completed = poly<1>(x.at("sum_at_s1_completed"), t_name);
    rec.equal("upper bound completed square", upper * (Rational(1) / scale), completed, t_name);
    rec.certified("completed square below 1/12", certify_sign(Poly1(twelfth) - completed, c.t_lo, c.t_hi, 1), 1);
  }
  rec.certified("g1(1,t)+g2(1,t) - 1/12 keeps its sign on the t-domain",
                certify_sign(sum1 - Poly1(twelfth), c.t_lo, c.t_hi, c.monotone_sign), c.monotone_sign);
}

void replay_endpoint(const ExceptionalCase &c, const json &e, bool first, Recorder &rec)
{
  const std::string tt = e.at("t").get<std::string>();
  const Rational t = rat(e.at("t"));
  const Poly1 g1 = in_s(c.g1, t), g2 = in_s(c.g2, t);
  rec.equal("g1(s," + tt + ")", g1, scaled<1>(e.at("g1"), s_name), s_name);
  rec.equal("g2(s," + tt + ")", g2, scaled<1>(e.at("g2"), s_name), s_name);

  const std::string sp = e.at("sum_probe").at("s").get<std::string>();
  const Rational s_probe = rat(e.at("sum_probe").at("s"));
  const Rational sum = g1.evaluate({s_probe}) + g2.evaluate({s_probe});
  rec.equal("g1(" + sp + "," + tt + ")+g2(" + sp + "," + tt + ")", sum, rat(e.at("sum_probe").at("value")));
  // The root s(t) lies on the side of the probe fixed by the monotone direction.
  const int above = first ? 1 : -1;
  rec.sign("g1(" + sp + "," + tt + ")+g2(" + sp + "," + tt + ") - 1/12", sum - one_over(12), above);
  const bool root_left = (above > 0) == (c.monotone_sign > 0);
  const Rational lo = root_left ? Rational(0) : s_probe;
  const Rational hi = root_left ? s_probe : Rational(1);

  const Poly1 dg1 = g1.derivative(0);
  rec.equal("d/ds g1(s," + tt + ")", dg1, scaled<1>(e.at("dg1"), s_name), s_name);
  Poly1 governing = dg1;
  if (e.contains("dg1_bound")) {
    const Poly1 bound = scaled<1>(e.at("dg1_bound"), s_name);
    const Rational gap = lower_bound(bound - dg1, 0, 1);
    rec.check("displayed bound on d/ds g1(s," + tt + ") holds on [0,1]", sgn(gap) >= 0, to_string(gap), ">= 0");
    governing = bound;
  }

  const std::string gp = e.at("g1_probe").at("s").get<std::string>();
  const Rational g_probe_s = rat(e.at("g1_probe").at("s"));
  // The probe is the left end of the root interval; g1 must be extremal there.
  const bool need_upper = first;
  const int slope = need_upper ? -1 : 1;
  const Rational i_lo = std::min(lo, g_probe_s);
  rec.certified("g1(s," + tt + ") monotone on [" + to_string(i_lo) + "," + to_string(hi) + "]",
                certify_sign(governing, i_lo, hi, slope), slope);
  const Rational g_probe = g1.evaluate({g_probe_s});
  rec.equal("g1(" + gp + "," + tt + ")", g_probe, rat(e.at("g1_probe").at("value")));
  rec.sign("g1(" + gp + "," + tt + ") - 1/24", g_probe - one_over(24), first ? -1 : 1);
}

} // namespace

BivariatePoly substitute_st(const QuarticXYZ &d)
{
  const BivariatePoly s = BivariatePoly::variable(0);
  const BivariatePoly t = BivariatePoly::variable(1);
  const BivariatePoly one(1L);
  return compose<3, 2>(d, {s * t, s * (one - t), one - s});
}

ExceptionalCase build_case(int id)
{
  const json &j = case_json(id);
  ExceptionalCase c;
  c.id = id;
  c.k = j.at("k").get<int>();
  for (std::size_t i = 0; i < 3; ++i)
    c.triple[i] = parse_permutation(j.at("perms")[i].get<std::string>());
  for (std::size_t i = 0; i < 4; ++i)
    c.targets[i] = parse_permutation(j.at("targets")[i].get<std::string>());
  for (std::size_t i = 0; i < 2; ++i)
    c.g_patterns[i] = parse_permutation(j.at("g_patterns")[i].get<std::string>());
  for (const auto &p : c.triple)
    if (p.size() != c.k)
      throw std::logic_error("exceptional fixture: permutation size differs from k");
  const std::vector<Permutation> triple(c.triple.begin(), c.triple.end());
  for (const auto &sigma : c.targets)
    c.d_polys.emplace(sigma, mixture_density_polynomial(sigma, triple));
  c.g1 = substitute_st(c.d_polys.at(c.g_patterns[0]));
  c.g2 = substitute_st(c.d_polys.at(c.g_patterns[1]));
  c.t_lo = rat(j.at("t_domain")[0]);
  c.t_hi = rat(j.at("t_domain")[1]);
  c.monotone_sign = j.at("monotone").get<std::string>() == "increasing" ? 1 : -1;
  return c;
}

StepPermuton case_permuton(const ExceptionalCase &c, const Rational &s, const Rational &t)
{
  return mixture_of_permutation_matrices({c.triple.begin(), c.triple.end()},
                                         {s * t, s * (1 - t), 1 - s});
}

bool FactReport::ok() const
{
  for (const auto &l : lines)
    if (!l.pass)
      return false;
  return true;
}

const FactLine *FactReport::find(std::string_view name) const
{
  for (const auto &l : lines)
    if (l.name == name)
      return &l;
  return nullptr;
}

FactReport verify_lemma_facts(const ExceptionalCase &c)
{
  const json &j = case_json(c.id);
  FactReport report;
  report.case_id = c.id;
  Recorder rec(report);

  for (const auto &[name, entry] : j.at("d_polys").items()) {
    const Permutation sigma = parse_permutation(name);
    const QuarticXYZ shown = scaled<3>(entry, xyz_names);
    rec.equal("d(" + name + ") polynomial", c.d_polys.at(sigma), shown, xyz_names);
    const std::string g = sigma == c.g_patterns[0] ? "g1" : "g2";
    rec.equal(g + " from displayed d(" + name + ")", substitute_st(shown), scaled<2>(j.at("g").at(g), st_names),
              st_names);
  }
  rec.equal("g1 polynomial", c.g1, scaled<2>(j.at("g").at("g1"), st_names), st_names);
  rec.equal("g2 polynomial", c.g2, scaled<2>(j.at("g").at("g2"), st_names), st_names);
  for (const auto &pair : j.at("symmetric_pairs")) {
    const Permutation a = parse_permutation(pair[0].get<std::string>());
    const Permutation b = parse_permutation(pair[1].get<std::string>());
    rec.equal("d(" + a.to_string() + ") = d(" + b.to_string() + ")", c.d_polys.at(a), c.d_polys.at(b),
              xyz_names);
  }

  if (c.id == 1)
    replay_case1_monotonicity(c, j.at("monotonicity"), rec);
  else
    replay_case2_monotonicity(c, j.at("monotonicity"), rec);
  const BivariatePoly ds = (c.g1 + c.g2).derivative(0);
  rec.certified(std::string("d/ds(g1+g2) ") + (c.monotone_sign > 0 ? "> 0" : "< 0") +
                  " on the domain (Bernstein)",
                certify_sign(ds, Box{0, 1, c.t_lo, c.t_hi}, c.monotone_sign), c.monotone_sign);

  replay_crossing(c, j.at("crossing"), rec);
  const auto &ends = j.at("endpoints");
  for (std::size_t i = 0; i < ends.size(); ++i)
    replay_endpoint(c, ends[i], i == 0, rec);
  return report;
}

namespace {

// Sign of g1(s(t), t) - 1/24, refining the inner bracket until the Lipschitz
// bound separates the value from zero.
int h_sign(const ExceptionalCase &c, const Rational &t)
{
  const Poly1 g = in_s(c.g1, t) - Poly1(one_over(24));
  const Rational lip = g.derivative_bound_unit_box(0);
  for (int bits = 52; bits <= 1024; bits += 32) {
    const auto [lo, hi] = solve_inner(c, t, bits);
    const Rational v = g.evaluate({lo});
    if (lo == hi)
      return sgn(v);
    if (abs(v) > lip * (hi - lo))
      return sgn(v);
  }
  throw std::runtime_error("solve_case: could not separate h(t) from 1/24 at t = " + to_string(t));
}

Rational pow2(int e)
{
  Rational r = 1;
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
  return r;
}

} // namespace

std::pair<Rational, Rational> solve_inner(const ExceptionalCase &c, const Rational &t, int bits)
{
  const Poly1 f = in_s(c.g1 + c.g2, t) - Poly1(one_over(12));
  const int dir = c.monotone_sign;
  Rational lo = 0, hi = 1;
  if (sgn(f.evaluate({lo})) != -dir || sgn(f.evaluate({hi})) != dir)
    throw std::runtime_error("solve_inner: g1+g2-1/12 does not change sign on [0,1] at t = " + to_string(t));
  const Rational width = pow2(bits);
  while (hi - lo > width) {
    const Rational mid = midpoint(lo, hi);
    const int s = sgn(f.evaluate({mid}));
    if (s == 0)
      return {mid, mid};
    (s == -dir ? lo : hi) = mid;
  }
  return {lo, hi};
}

SolvedWitness solve_case(const ExceptionalCase &c, int t_bits)
{
  SolvedWitness w;
  w.case_id = c.id;
  Rational t_lo = c.t_lo, t_hi = c.t_hi;
  if (h_sign(c, t_lo) >= 0 || h_sign(c, t_hi) <= 0)
    throw std::runtime_error("solve_case: endpoint signs of h(t) - 1/24 are not (-, +)");
  const Rational width = pow2(t_bits);
  bool exact = false;
  while (t_hi - t_lo > width) {
    const Rational mid = midpoint(t_lo, t_hi);
    const int s = h_sign(c, mid);
    ++w.outer_iterations;
    if (s == 0) {
      t_lo = t_hi = mid;
      exact = true;
      break;
    }
    (s < 0 ? t_lo : t_hi) = mid;
  }
  w.t_lo = t_lo;
  w.t_hi = t_hi;
  w.bracket_signs_ok = exact || (h_sign(c, t_lo) < 0 && h_sign(c, t_hi) > 0);
  w.t_mid = midpoint(t_lo, t_hi);

  const auto [sa, sb] = solve_inner(c, w.t_mid, t_bits + 12);
  w.s_mid = midpoint(sa, sb);

  // |s'(t)| = |F_t / F_s| <= M / m on a box around the inner bracket.
  const BivariatePoly f = c.g1 + c.g2 - BivariatePoly(one_over(12));
  const Rational delta = pow2(20);
  const Box local{std::max(Rational(0), Rational(sa - delta)), std::min(Rational(1), Rational(sb + delta)), t_lo, t_hi};
  const auto fs = bernstein_range(f.derivative(0), local);
  const auto ft = bernstein_range(f.derivative(1), local);
  const Rational m = c.monotone_sign > 0 ? fs.first : -fs.second;
  if (sgn(m) <= 0)
    throw std::runtime_error("solve_case: d/ds(g1+g2) not bounded away from zero near the solution");
  const Rational big_m = std::max(abs(ft.first), abs(ft.second));
  const Rational radius = big_m / m * (t_hi - t_lo);
  if (radius >= delta)
    throw std::runtime_error("solve_case: s-enclosure leaves the local box");
  w.s_lo = sa - radius;
  w.s_hi = sb + radius;

  const std::array<Rational, 2> mid{w.s_mid, w.t_mid};
  w.residual_g1 = c.g1.evaluate(mid) - one_over(24);
  w.residual_g2 = c.g2.evaluate(mid) - one_over(24);
  w.lipschitz_s = std::max(c.g1.derivative_bound_unit_box(0), c.g2.derivative_bound_unit_box(0));
  w.lipschitz_t = std::max(c.g1.derivative_bound_unit_box(1), c.g2.derivative_bound_unit_box(1));
  return w;
}

WitnessBundle emit_witness(const ExceptionalCase &c, const SolvedWitness &w, bool cross_check)
{
  WitnessBundle b{w, case_permuton(c, w.s_mid, w.t_mid), {}, false, {0, 0}, 0, {}};
  const Rational x = w.s_mid * w.t_mid, y = w.s_mid * (1 - w.t_mid), z = 1 - w.s_mid;
  for (const auto &sigma : c.targets)
    b.densities.emplace_back(sigma, c.d_polys.at(sigma).evaluate({x, y, z}));
  if (cross_check) {
    b.densities_cross_checked = true;
    for (const auto &[sigma, d] : b.densities)
      b.densities_cross_checked = b.densities_cross_checked && density_in_step_permuton(sigma, b.permuton) == d;
  }
  const Rational uniform(1, c.k);
  for (int i = 0; i < c.k && b.nonuniform_cell.first == 0; ++i)
    for (int j = 0; j < c.k; ++j)
      if (b.permuton.matrix()(i, j) != uniform) {
        b.nonuniform_cell = {i + 1, j + 1};
        b.nonuniform_mass = b.permuton.matrix()(i, j) / c.k;
        break;
      }
  b.note = "Densities are exact at the rational midpoint of the enclosure; equality with 1/24 holds only at the "
           "enclosed irrational root.";
  return b;
}

} // namespace qrf
