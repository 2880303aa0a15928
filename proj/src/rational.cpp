#include "qrforce/rational.hpp"

#include <cctype>

namespace qrf {

namespace {

bool all_digits(std::string_view s)
{
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

Rational parse_rational(std::string_view text)
{
  std::string_view s = trim(text);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("invalid rational '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0)
      throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
    auto whole = body.substr(0, dot_pos);
    auto frac = body.substr(dot_pos + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw ParseError("invalid decimal '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    value = Rational(digits, scale);
    value.canonicalize();
  } else {
    if (!all_digits(body))
      throw ParseError("invalid rational '" + std::string(text) + "'");
    value = Rational(Integer(std::string(body), 10));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational &q)
{
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational &q)
{
  return q.get_d();
}

int sign(const Rational &q)
{
  return sgn(q);
}

Rational abs(const Rational &q)
{
  return sgn(q) < 0 ? Rational(-q) : q;
}

Rational pow(const Rational &q, unsigned e)
{
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

Integer factorial(unsigned n)
{
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned n, unsigned k)
{
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational midpoint(const Rational &a, const Rational &b)
{
  Rational m = a + b;
  mpq_div_2exp(m.get_mpq_t(), m.get_mpq_t(), 1);
  return m;
}

RatVector parse_rational_vector(const std::vector<std::string> &items)
{
  RatVector v;
  v.reserve(items.size());
  for (const auto &s : items)
    v.push_back(parse_rational(s));
  return v;
}

Rational dot(const RatVector &a, const RatVector &b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("dot: length mismatch");
  Rational r = 0;
  for (size_t i = 0; i < a.size(); ++i)
    r += a[i] * b[i];
  return r;
}

} // namespace qrf
