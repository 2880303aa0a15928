#pragma once

#include "qrforce/polynomial.hpp"

#include <optional>

namespace qrf {

struct Box
{
  Rational s_lo, s_hi, t_lo, t_hi;
};

// Outcome of an attempt to prove that p has a fixed strict sign on a closed box.
struct SignCertificate
{
  bool certified = false;
  int expected_sign = 0;
  std::size_t leaves = 0;
  // Over certified leaves: min of expected_sign * (Bernstein coefficient); a
  // positive lower bound on expected_sign * p over the box when certified.
  Rational margin;
  std::optional<std::array<Rational, 2>> counterexample;
};

// Bernstein coefficients of p on the box, indexed [i][j] for degrees
// (deg_s, deg_t).
std::vector<std::vector<Rational>> bernstein_coefficients(const BivariatePoly &p, const Box &box);

// Adaptive subdivision; each level splits the box into four.
SignCertificate certify_sign(const BivariatePoly &p, const Box &box, int expected_sign,
                             int max_depth = 14);

SignCertificate certify_sign(const Poly1 &p, const Rational &lo, const Rational &hi,
                             int expected_sign, int max_depth = 30);

// Lower and upper bounds of p on the box from its Bernstein coefficients.
std::pair<Rational, Rational> bernstein_range(const BivariatePoly &p, const Box &box);

} // namespace qrf
