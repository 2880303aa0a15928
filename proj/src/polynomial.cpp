#include "qrforce/polynomial.hpp"

#include <stdexcept>

namespace qrf {

Rational discriminant(const Poly1 &p)
{
  auto c = [&](int i) { return p.coefficient({i}); };
  switch (p.degree(0)) {
  case 2:
    return c(1) * c(1) - 4 * c(2) * c(0);
  case 3: {
    Rational a = c(3), b = c(2), cc = c(1), d = c(0);
    return 18 * a * b * cc * d - 4 * b * b * b * d + b * b * cc * cc - 4 * a * cc * cc * cc -
           27 * a * a * d * d;
  }
  default:
    throw std::invalid_argument("discriminant: only degrees 2 and 3 are supported");
  }
}

int count_sign_changes(const std::vector<Rational> &values)
{
  int changes = 0;
  int last = 0;
  for (const auto &v : values) {
    int s = sgn(v);
    if (s == 0)
      continue;
    if (last != 0 && s != last)
      ++changes;
    last = s;
  }
  return changes;
}

} // namespace qrf
