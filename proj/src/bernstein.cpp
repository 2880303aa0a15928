#include "qrforce/bernstein.hpp"

#include <algorithm>

namespace qrf {

namespace {

BivariatePoly to_unit_box(const BivariatePoly &p, const Box &box)
{
  BivariatePoly s = BivariatePoly(box.s_lo) + BivariatePoly::variable(0) * (box.s_hi - box.s_lo);
  BivariatePoly t = BivariatePoly(box.t_lo) + BivariatePoly::variable(1) * (box.t_hi - box.t_lo);
  return compose<2, 2>(p, {s, t});
}

void certify_rec(const BivariatePoly &p, const Box &box, int expected, int depth,
                 SignCertificate &cert, bool &failed)
{
  if (failed)
    return;
  auto b = bernstein_coefficients(p, box);
  Rational lowest;
  bool first = true;
  for (const auto &row : b)
    for (const auto &c : row) {
      Rational v = expected * c;
      if (first || v < lowest)
        lowest = v;
      first = false;
    }
  if (sgn(lowest) > 0) {
    if (cert.leaves == 0 || lowest < cert.margin)
      cert.margin = lowest;
    ++cert.leaves;
    return;
  }
  // The corner coefficients are exact values of p at the corners.
  const std::array<std::array<Rational, 2>, 4> corners = {{{box.s_lo, box.t_lo},
                                                           {box.s_lo, box.t_hi},
                                                           {box.s_hi, box.t_lo},
                                                           {box.s_hi, box.t_hi}}};
  for (const auto &pt : corners)
    if (expected * sgn(p.evaluate(pt)) <= 0) {
      cert.counterexample = pt;
      failed = true;
      return;
    }
  if (depth == 0) {
    failed = true;
    return;
  }
  Rational sm = midpoint(box.s_lo, box.s_hi);
  Rational tm = midpoint(box.t_lo, box.t_hi);
  bool split_t = box.t_hi != box.t_lo;
  std::vector<Box> parts;
  if (split_t)
    parts = {{box.s_lo, sm, box.t_lo, tm},
             {sm, box.s_hi, box.t_lo, tm},
             {box.s_lo, sm, tm, box.t_hi},
             {sm, box.s_hi, tm, box.t_hi}};
  else
    parts = {{box.s_lo, sm, box.t_lo, box.t_hi}, {sm, box.s_hi, box.t_lo, box.t_hi}};
  for (const auto &part : parts)
    certify_rec(p, part, expected, depth - 1, cert, failed);
}

} // namespace

std::vector<std::vector<Rational>> bernstein_coefficients(const BivariatePoly &p, const Box &box)
{
  BivariatePoly q = to_unit_box(p, box);
  const int n = std::max(q.degree(0), p.degree(0));
  const int m = std::max(q.degree(1), p.degree(1));
  std::vector<std::vector<Rational>> b(n + 1, std::vector<Rational>(m + 1));
  for (const auto &[e, a] : q.terms()) {
    const int i = e[0], j = e[1];
    Rational base = a / (Rational(binomial(n, i)) * Rational(binomial(m, j)));
    for (int k = i; k <= n; ++k)
      for (int l = j; l <= m; ++l)
        b[k][l] += base * Rational(binomial(k, i) * binomial(l, j));
  }
  return b;
}

std::pair<Rational, Rational> bernstein_range(const BivariatePoly &p, const Box &box)
{
  auto b = bernstein_coefficients(p, box);
  Rational lo = b[0][0], hi = b[0][0];
  for (const auto &row : b)
    for (const auto &c : row) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
  return {lo, hi};
}

SignCertificate certify_sign(const BivariatePoly &p, const Box &box, int expected_sign,
                             int max_depth)
{
  SignCertificate cert;
  cert.expected_sign = expected_sign;
  bool failed = false;
  certify_rec(p, box, expected_sign, max_depth, cert, failed);
  cert.certified = !failed;
  return cert;
}

SignCertificate certify_sign(const Poly1 &p, const Rational &lo, const Rational &hi,
                             int expected_sign, int max_depth)
{
  BivariatePoly q = remap<1, 2>(p, {0});
  return certify_sign(q, Box{lo, hi, 0, 0}, expected_sign, max_depth);
}

} // namespace qrf
