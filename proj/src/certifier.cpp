#include "qrforce/certifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace qrf {

std::string_view tag_name(QuadrupleTag t)
{
  switch (t) {
  case QuadrupleTag::AllOne:
    return "all-one";
  case QuadrupleTag::ZeroCombo:
    return "zero-combination";
  case QuadrupleTag::Independent:
    return "independent";
  }
  return "?";
}

std::string_view verdict_name(Verdict v)
{
  switch (v) {
  case Verdict::CorollaryApplies:
    return "CorollaryApplies";
  case Verdict::KernelRestrictedApplies:
    return "KernelRestrictedApplies";
  case Verdict::Inconclusive:
    return "Inconclusive";
  }
  return "?";
}

namespace {

// Sum of signed permutation matrices as a flat k*k integer grid.
std::vector<int> signed_sum(const std::vector<Permutation> &perms, const std::vector<int> &signs)
{
  const int k = perms[0].size();
  std::vector<int> grid(static_cast<std::size_t>(k * k), 0);
  for (std::size_t q = 0; q < perms.size(); ++q)
    for (int i = 1; i <= k; ++i)
      grid[(i - 1) * k + perms[q](i) - 1] += signs[q];
  return grid;
}

void check_quadruple(const std::vector<Permutation> &q)
{
  if (q.size() != 4)
    throw std::invalid_argument("quadruple: expected four permutations, got " + std::to_string(q.size()));
  for (const auto &p : q)
    if (p.size() != 4)
      throw std::invalid_argument("quadruple: " + p.to_string() + " is not a 4-point permutation");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (q[i] == q[j])
        throw std::invalid_argument("quadruple: duplicate permutation " + q[i].to_string());
}

template<std::size_t N>
std::array<Permutation, N> sorted_image(Symmetry g, const std::array<Permutation, N> &ps)
{
  std::array<Permutation, N> r;
  for (std::size_t i = 0; i < N; ++i)
    r[i] = apply(g, ps[i]);
  std::sort(r.begin(), r.end());
  return r;
}

} // namespace

QuadrupleClass classify_quadruple(const std::vector<Permutation> &q)
{
  check_quadruple(q);
  QuadrupleClass c;
  const auto sum = signed_sum(q, {1, 1, 1, 1});
  if (std::all_of(sum.begin(), sum.end(), [](int v) { return v == 1; })) {
    c.tag = QuadrupleTag::AllOne;
    return c;
  }
  // Index 0 is paired with each of the others in turn.
  for (int partner = 1; partner < 4; ++partner) {
    std::vector<int> signs(4, -1);
    signs[0] = signs[partner] = 1;
    const auto combo = signed_sum(q, signs);
    if (std::all_of(combo.begin(), combo.end(), [](int v) { return v == 0; })) {
      c.tag = QuadrupleTag::ZeroCombo;
      std::vector<Permutation> plus, minus;
      for (int i = 0; i < 4; ++i)
        (signs[i] > 0 ? plus : minus).push_back(q[i]);
      c.plus = {plus[0], plus[1]};
      c.minus = {minus[0], minus[1]};
      return c;
    }
  }
  return c;
}

Quadruple canonical_allone(const Quadruple &q)
{
  Quadruple best = sorted_image(Symmetry::identity, q);
  for (Symmetry g : all_symmetries)
    best = std::min(best, sorted_image(g, q));
  return best;
}

ZeroComboQuadruple canonical_zerocombo(const ZeroComboQuadruple &q)
{
  std::optional<ZeroComboQuadruple> best;
  for (Symmetry g : all_symmetries) {
    const auto a = sorted_image(g, q.plus);
    const auto b = sorted_image(g, q.minus);
    for (const auto &cand : {ZeroComboQuadruple{a, b}, ZeroComboQuadruple{b, a}})
      if (!best || cand < *best)
        best = cand;
  }
  return *best;
}

AllOneEnumeration enumerate_allone_quadruples()
{
  const auto s4 = enumerate_Sk(4);
  AllOneEnumeration r;
  std::set<Quadruple> unordered;
  std::set<Quadruple> classes;
  // Ordered tuples of permutation matrices partitioning the all-one matrix are
  // exactly the Latin squares L(i, pi_q(i)) = q.
  for (const auto &a : s4)
    for (const auto &b : s4)
      for (const auto &c : s4)
        for (const auto &d : s4) {
          const auto sum = signed_sum({a, b, c, d}, {1, 1, 1, 1});
          if (!std::all_of(sum.begin(), sum.end(), [](int v) { return v == 1; }))
            continue;
          ++r.latin_squares;
          Quadruple q{a, b, c, d};
          std::sort(q.begin(), q.end());
          unordered.insert(q);
          classes.insert(canonical_allone(q));
        }
  r.quadruples = unordered.size();
  r.classes.assign(classes.begin(), classes.end());
  return r;
}

ZeroComboEnumeration enumerate_zerocombo_quadruples()
{
  const auto s4 = enumerate_Sk(4);
  ZeroComboEnumeration r;
  std::set<std::pair<std::array<Permutation, 2>, std::array<Permutation, 2>>> unordered;
  std::set<ZeroComboQuadruple> classes;
  for (const auto &a : s4)
    for (const auto &b : s4)
      for (const auto &c : s4)
        for (const auto &d : s4) {
          if (a == b || a == c || a == d || b == c || b == d || c == d)
            continue;
          const auto combo = signed_sum({a, b, c, d}, {1, 1, -1, -1});
          if (!std::all_of(combo.begin(), combo.end(), [](int v) { return v == 0; }))
            continue;
          ++r.ordered_tuples;
          std::array<Permutation, 2> plus{a, b}, minus{c, d};
          std::sort(plus.begin(), plus.end());
          std::sort(minus.begin(), minus.end());
          unordered.insert(std::min(std::make_pair(plus, minus), std::make_pair(minus, plus)));
          classes.insert(canonical_zerocombo({plus, minus}));
        }
  r.quadruples = unordered.size();
  r.classes.assign(classes.begin(), classes.end());
  return r;
}

TrichotomyScan scan_trichotomy()
{
  const auto s4 = enumerate_Sk(4);
  const auto allone = enumerate_allone_quadruples();
  const auto zero = enumerate_zerocombo_quadruples();
  const std::set<Quadruple> allone_classes(allone.classes.begin(), allone.classes.end());
  const std::set<ZeroComboQuadruple> zero_classes(zero.classes.begin(), zero.classes.end());

  std::vector<BivariatePoly> polys;
  for (const auto &p : s4)
    polys.push_back(gradient_polynomial(p));

  TrichotomyScan scan;
  for (std::size_t a = 0; a < 24; ++a)
    for (std::size_t b = a + 1; b < 24; ++b)
      for (std::size_t c = b + 1; c < 24; ++c)
        for (std::size_t d = c + 1; d < 24; ++d) {
          ++scan.total;
          const Quadruple q{s4[a], s4[b], s4[c], s4[d]};
          const auto cls = classify_quadruple({q.begin(), q.end()});
          const bool in_allone = allone_classes.count(canonical_allone(q)) > 0;
          switch (cls.tag) {
          case QuadrupleTag::AllOne:
            ++scan.all_one;
            scan.orbits_consistent = scan.orbits_consistent && in_allone;
            break;
          case QuadrupleTag::ZeroCombo: {
            ++scan.zero_combo;
            ZeroComboQuadruple z{cls.plus, cls.minus};
            std::sort(z.plus.begin(), z.plus.end());
            std::sort(z.minus.begin(), z.minus.end());
            scan.orbits_consistent =
              scan.orbits_consistent && !in_allone && zero_classes.count(canonical_zerocombo(z)) > 0;
            break;
          }
          case QuadrupleTag::Independent: {
            ++scan.independent;
            scan.orbits_consistent = scan.orbits_consistent && !in_allone;
            std::set<Exponent<2>> monomials;
            for (std::size_t i : {a, b, c, d})
              for (const auto &[e, coef] : polys[i].terms())
                monomials.insert(e);
            RatMatrix m(monomials.size(), 4);
            std::size_t row = 0;
            for (const auto &e : monomials) {
              std::size_t col = 0;
              for (std::size_t i : {a, b, c, d})
                m(row, col++) = polys[i].coefficient(e);
              ++row;
            }
            scan.independent_polys = scan.independent_polys && rank(m) == 4;
            break;
          }
          }
        }
  return scan;
}

RatMatrix hessian_combination(const Quadruple &q, int n, const RatVector &alpha)
{
  if (alpha.size() != 4)
    throw std::invalid_argument("hessian_combination: expected four coefficients");
  const std::size_t dim = static_cast<std::size_t>((n - 1) * (n - 1));
  RatMatrix h(dim, dim);
  for (std::size_t i = 0; i < 4; ++i)
    if (sgn(alpha[i]) != 0)
      h += h_hessian_at_zero(q[i], n).scaled(alpha[i]);
  return h;
}

namespace {

RatMatrix stack_columns(const std::vector<RatVector> &vs)
{
  return RatMatrix::from_columns(vs);
}

RatVector combine(const std::vector<RatVector> &vs, const RatVector &alpha)
{
  RatVector r(vs.front().size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      r[j] += alpha[i] * vs[i][j];
  return r;
}

bool is_zero_vector(const RatVector &v)
{
  return std::all_of(v.begin(), v.end(), [](const Rational &x) { return sgn(x) == 0; });
}

std::vector<RatVector> leading_gradients(const NonForcingEvidence &e)
{
  return {e.gradients[e.ordering[0]], e.gradients[e.ordering[1]], e.gradients[e.ordering[2]]};
}

} // namespace

NonForcingEvidence certify_non_forcing(const Quadruple &q, int n, const RatVector &alpha)
{
  check_quadruple({q.begin(), q.end()});
  if ((n - 1) * (n - 1) < 6)
    throw std::invalid_argument("certify_non_forcing: need (n-1)^2 >= 6, got n = " + std::to_string(n));

  NonForcingEvidence e;
  e.quadruple = q;
  e.n = n;
  std::vector<RatMatrix> hessians;
  for (const auto &p : q) {
    auto d = h_derivatives_at_zero(p, n);
    e.gradients.push_back(std::move(d.gradient));
    hessians.push_back(std::move(d.hessian));
  }

  const RatMatrix stack = stack_columns(e.gradients);
  if (rank(stack) == 4)
    throw std::invalid_argument("gradients independent; use the gradient-polynomial route instead");

  if (alpha.empty()) {
    e.alpha = primitive_integer_vector(kernel_basis(stack).front());
  } else {
    if (alpha.size() != 4)
      throw std::invalid_argument("certify_non_forcing: expected four coefficients");
    e.alpha = alpha;
  }
  if (is_zero_vector(e.alpha))
    throw std::invalid_argument("certify_non_forcing: coefficients are all zero");
  const RatVector residual = combine(e.gradients, e.alpha);
  if (!is_zero_vector(residual))
    throw std::invalid_argument("certify_non_forcing: the coefficients do not annihilate the gradients");

  // First three-element subset (in lexicographic order) of full rank 3.
  for (int skip = 3; skip >= 0 && !e.rank3_ok; --skip) {
    std::vector<RatVector> three;
    std::array<int, 4> order{};
    int pos = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) {
        three.push_back(e.gradients[i]);
        order[pos++] = i;
      }
    order[3] = skip;
    if (rank(stack_columns(three)) == 3) {
      e.rank3_ok = true;
      e.ordering = order;
    }
  }

  e.hessian_combo = RatMatrix(hessians[0].rows(), hessians[0].cols());
  for (std::size_t i = 0; i < 4; ++i)
    if (sgn(e.alpha[i]) != 0)
      e.hessian_combo += hessians[i].scaled(e.alpha[i]);
  e.full_inertia = inertia(e.hessian_combo);

  if (!e.rank3_ok)
    return e;
  if (e.full_inertia.n_pos >= 4 && e.full_inertia.n_neg >= 4) {
    e.verdict = Verdict::CorollaryApplies;
    return e;
  }

  const auto basis = orth_complement_basis(RatMatrix::from_rows(leading_gradients(e)));
  const RatMatrix restricted = restrict_form(e.hessian_combo, basis);
  const auto diag = congruence_diagonalize(restricted);
  e.restricted_inertia = diag.inertia;
  if (diag.inertia.n_pos == 0 || diag.inertia.n_neg == 0)
    return e;

  const RatMatrix v = RatMatrix::from_columns(basis);
  WitnessPair w;
  bool have_plus = false, have_minus = false;
  for (std::size_t i = 0; i < diag.diagonal.size(); ++i) {
    const int s = sgn(diag.diagonal[i]);
    if ((s > 0 && have_plus) || (s < 0 && have_minus) || s == 0)
      continue;
    RatVector vec = primitive_integer_vector(v * diag.transform.column(i));
    if (s > 0) {
      w.w_plus = std::move(vec);
      have_plus = true;
    } else {
      w.w_minus = std::move(vec);
      have_minus = true;
    }
  }
  w.value_plus = quadratic_form(e.hessian_combo, w.w_plus);
  w.value_minus = quadratic_form(e.hessian_combo, w.w_minus);
  e.witness = std::move(w);
  e.verdict = Verdict::KernelRestrictedApplies;
  return e;
}

NonForcingEvidence certify_auto(const Quadruple &q, const RatVector &alpha)
{
  std::optional<NonForcingEvidence> last;
  for (int n = 4; n <= 7; ++n) {
    last = certify_non_forcing(q, n, alpha);
    if (last->verdict != Verdict::Inconclusive)
      break;
  }
  return *last;
}

EvidenceCheck check_evidence(const NonForcingEvidence &e)
{
  EvidenceCheck c;
  auto fail = [&](std::string what) {
    c.ok = false;
    c.problems.push_back(std::move(what));
  };
  const std::size_t dim = static_cast<std::size_t>((e.n - 1) * (e.n - 1));
  if (e.gradients.size() != 4 || e.alpha.size() != 4) {
    fail("expected four gradients and four coefficients");
    return c;
  }
  for (const auto &g : e.gradients)
    if (g.size() != dim) {
      fail("gradient length does not match n");
      return c;
    }
  if (e.hessian_combo.rows() != dim || !e.hessian_combo.is_symmetric()) {
    fail("Hessian combination is not a symmetric matrix of the right size");
    return c;
  }
  if (is_zero_vector(e.alpha))
    fail("coefficients are all zero");
  if (!is_zero_vector(combine(e.gradients, e.alpha)))
    fail("coefficients do not annihilate the gradients");
  std::array<int, 4> sorted_order = e.ordering;
  std::sort(sorted_order.begin(), sorted_order.end());
  if (sorted_order != std::array<int, 4>{0, 1, 2, 3}) {
    fail("ordering is not a permutation of 0..3");
    return c;
  }
  const auto lead = leading_gradients(e);
  if ((rank(stack_columns(lead)) == 3) != e.rank3_ok)
    fail("rank3_ok disagrees with the leading gradients");
  if (inertia(e.hessian_combo) != e.full_inertia)
    fail("full inertia does not match the Hessian combination");

  switch (e.verdict) {
  case Verdict::CorollaryApplies:
    if (!e.rank3_ok || e.full_inertia.n_pos < 4 || e.full_inertia.n_neg < 4)
      fail("CorollaryApplies without four positive and four negative directions");
    break;
  case Verdict::KernelRestrictedApplies: {
    const auto basis = orth_complement_basis(RatMatrix::from_rows(lead));
    const Inertia r = restricted_inertia(e.hessian_combo, basis);
    if (!e.restricted_inertia || *e.restricted_inertia != r)
      fail("restricted inertia does not match the gradient complement");
    if (r.n_pos == 0 || r.n_neg == 0)
      fail("restricted form is not indefinite");
    if (!e.witness) {
      fail("witness vectors missing");
      break;
    }
    const auto &w = *e.witness;
    if (w.w_plus.size() != dim || w.w_minus.size() != dim) {
      fail("witness vectors have the wrong length");
      break;
    }
    for (const auto &g : lead)
      if (sgn(dot(g, w.w_plus)) != 0 || sgn(dot(g, w.w_minus)) != 0)
        fail("witness vector not orthogonal to a leading gradient");
    const Rational vp = quadratic_form(e.hessian_combo, w.w_plus);
    const Rational vm = quadratic_form(e.hessian_combo, w.w_minus);
    if (vp != w.value_plus || vm != w.value_minus)
      fail("stored quadratic values do not match");
    if (sgn(vp) <= 0 || sgn(vm) >= 0)
      fail("witness values do not have opposite strict signs");
    break;
  }
  case Verdict::Inconclusive:
    break;
  }
  return c;
}

ZeroWitness witness_from_zero(const std::vector<Permutation> &q, const PerturbationPoint &p)
{
  if (p.is_zero())
    throw std::invalid_argument("witness_from_zero: x = 0 gives the uniform permuton");
  const Rational quarter(1, 4);
  for (std::size_t t = 0; t < p.x.size(); ++t)
    if (abs(p.x[t]) > quarter)
      throw std::invalid_argument("witness_from_zero: |x_" + std::to_string(t + 1) + "| exceeds 1/4");
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Rational h = h_value(q[i], p);
    if (sgn(h) != 0)
      throw std::invalid_argument("witness_from_zero: h(" + q[i].to_string() + ") = " + to_string(h) +
                                  " at permutation index " + std::to_string(i + 1));
  }
  ZeroWitness w{StepPermuton(b_matrix(p).scaled(Rational(1, p.k))), 0, {}};
  for (std::size_t t = 0; t < p.x.size(); ++t)
    if (sgn(p.x[t]) != 0) {
      w.nonuniform_index = t + 1;
      break;
    }
  for (const auto &pi : q)
    w.densities.push_back(density_in_step_permuton(pi, w.permuton));
  return w;
}

Quadruple parse_quadruple(std::string_view text)
{
  const auto perms = parse_permutation_list(text);
  check_quadruple(perms);
  return {perms[0], perms[1], perms[2], perms[3]};
}

std::string to_string(const Quadruple &q)
{
  return q[0].to_string() + "," + q[1].to_string() + "," + q[2].to_string() + "," + q[3].to_string();
}

} // namespace qrf
