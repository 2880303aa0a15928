#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qrf {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

class ParseError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Accepts "p", "p/q" and finite decimals such as "939.5" or "-0.50788".
Rational parse_rational(std::string_view text);

// "p/q", or "p" when q = 1.
std::string to_string(const Rational &q);

double to_double(const Rational &q);

int sign(const Rational &q);

Rational abs(const Rational &q);

Rational pow(const Rational &q, unsigned e);

Integer factorial(unsigned n);

Integer binomial(unsigned n, unsigned k);

// Dyadic midpoint helper used by the bisections: (a + b) / 2.
Rational midpoint(const Rational &a, const Rational &b);

RatVector parse_rational_vector(const std::vector<std::string> &items);

Rational dot(const RatVector &a, const RatVector &b);

} // namespace qrf
