#pragma once

#include "qrforce/rational.hpp"

#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace qrf {

template<std::size_t N>
using Exponent = std::array<int, N>;

// Graded lexicographic order: lower total degree first, then lexicographic.
template<std::size_t N>
struct GradedLex
{
  bool operator()(const Exponent<N> &a, const Exponent<N> &b) const
  {
    int da = 0, db = 0;
    for (std::size_t i = 0; i < N; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db)
      return da < db;
    return a < b;
  }
};

// Sparse polynomial in N variables with rational coefficients. No zero
// coefficients are stored.
template<std::size_t N>
class Polynomial
{
public:
  using Terms = std::map<Exponent<N>, Rational, GradedLex<N>>;

  Polynomial() = default;
  Polynomial(const Rational &c) { add_term(Exponent<N>{}, c); }
  Polynomial(long c) : Polynomial(Rational(c)) {}

  static Polynomial variable(std::size_t i)
  {
    Exponent<N> e{};
    e[i] = 1;
    Polynomial p;
    p.add_term(e, 1);
    return p;
  }

  static Polynomial monomial(const Exponent<N> &e, const Rational &c)
  {
    Polynomial p;
    p.add_term(e, c);
    return p;
  }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponent<N> &e) const
  {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponent<N> &e, const Rational &c)
  {
    if (sgn(c) == 0)
      return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0)
        terms_.erase(it);
    }
  }

  int degree(std::size_t var) const
  {
    int d = 0;
    for (const auto &[e, c] : terms_)
      d = std::max(d, e[var]);
    return d;
  }

  int total_degree() const
  {
    int d = 0;
    for (const auto &[e, c] : terms_) {
      int s = 0;
      for (int x : e)
        s += x;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_constant() const
  {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent<N>{});
  }

  Polynomial &operator+=(const Polynomial &o)
  {
    for (const auto &[e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }
  Polynomial &operator-=(const Polynomial &o)
  {
    for (const auto &[e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }
  Polynomial &operator*=(const Rational &c)
  {
    if (sgn(c) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto &[e, x] : terms_)
      x *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
  friend Polynomial operator-(Polynomial a)
  {
    a *= Rational(-1);
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Rational &c) { return a *= c; }
  friend Polynomial operator*(const Rational &c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
  {
    Polynomial r;
    for (const auto &[ea, ca] : a.terms_)
      for (const auto &[eb, cb] : b.terms_) {
        Exponent<N> e;
        for (std::size_t i = 0; i < N; ++i)
          e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  bool operator==(const Polynomial &o) const { return terms_ == o.terms_; }

  Polynomial pow(unsigned e) const
  {
    Polynomial r(1L);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1U)
        r = r * base;
      e >>= 1U;
      if (e > 0)
        base = base * base;
    }
    return r;
  }

  Rational evaluate(const std::array<Rational, N> &point) const
  {
    Rational total = 0;
    for (const auto &[e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < N; ++i)
        if (e[i] > 0)
          term *= qrf::pow(point[i], static_cast<unsigned>(e[i]));
      total += term;
    }
    return total;
  }

  Polynomial derivative(std::size_t var) const
  {
    Polynomial r;
    for (const auto &[e, c] : terms_) {
      if (e[var] == 0)
        continue;
      Exponent<N> d = e;
      --d[var];
      r.add_term(d, c * e[var]);
    }
    return r;
  }

  // Fixes one variable to a value; the exponent slot is kept (always 0).
  Polynomial substitute(std::size_t var, const Rational &value) const
  {
    Polynomial r;
    for (const auto &[e, c] : terms_) {
      Exponent<N> d = e;
      d[var] = 0;
      r.add_term(d, c * qrf::pow(value, static_cast<unsigned>(e[var])));
    }
    return r;
  }

  // Sum of absolute coefficient values times the exponent of var: a bound on
  // |d/dvar p| over the unit box.
  Rational derivative_bound_unit_box(std::size_t var) const
  {
    Rational b = 0;
    for (const auto &[e, c] : terms_)
      b += abs(c) * e[var];
    return b;
  }

  std::string to_string(const std::array<char, N> &names) const
  {
    if (terms_.empty())
      return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto &[e, c] = *it;
      Rational mag = abs(c);
      bool constant = e == Exponent<N>{};
      if (s.empty())
        s += sgn(c) < 0 ? "-" : "";
      else
        s += sgn(c) < 0 ? " - " : " + ";
      if (constant || mag != 1)
        s += qrf::to_string(mag);
      for (std::size_t i = 0; i < N; ++i) {
        if (e[i] == 0)
          continue;
        s += names[i];
        if (e[i] > 1)
          s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }

private:
  Terms terms_;
};

using Poly1 = Polynomial<1>;
using BivariatePoly = Polynomial<2>;
using QuarticXYZ = Polynomial<3>;

// Substitutes polynomials in M variables for each of the N variables of p.
template<std::size_t N, std::size_t M>
Polynomial<M> compose(const Polynomial<N> &p, const std::array<Polynomial<M>, N> &values)
{
  Polynomial<M> r;
  for (const auto &[e, c] : p.terms()) {
    Polynomial<M> term(c);
    for (std::size_t i = 0; i < N; ++i)
      if (e[i] > 0)
        term = term * values[i].pow(static_cast<unsigned>(e[i]));
    r += term;
  }
  return r;
}

// Drops or embeds variables: result variable i takes source variable map[i].
template<std::size_t N, std::size_t M>
Polynomial<M> remap(const Polynomial<N> &p, const std::array<int, N> &target)
{
  Polynomial<M> r;
  for (const auto &[e, c] : p.terms()) {
    Exponent<M> d{};
    for (std::size_t i = 0; i < N; ++i) {
      if (e[i] == 0)
        continue;
      if (target[i] < 0)
        throw std::invalid_argument("remap: variable with positive degree has no target");
      d[target[i]] += e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

namespace detail {

template<std::size_t N>
class PolyParser
{
public:
  PolyParser(std::string_view text, const std::array<char, N> &names)
  : text_(text), names_(names)
  {}

  Polynomial<N> parse()
  {
    Polynomial<N> p = expr();
    skip();
    if (pos_ != text_.size())
      fail("unexpected character");
    return p;
  }

private:
  std::string_view text_;
  std::array<char, N> names_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string &what) const
  {
    throw ParseError("polynomial parse error (" + what + ") at offset " + std::to_string(pos_) +
                     " in '" + std::string(text_) + "'");
  }

  void skip()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  int peek()
  {
    skip();
    return pos_ < text_.size() ? text_[pos_] : -1;
  }

  int var_index(int c) const
  {
    for (std::size_t i = 0; i < N; ++i)
      if (names_[i] == c)
        return static_cast<int>(i);
    return -1;
  }

  bool starts_factor(int c) const
  {
    return c == '(' || c == '.' || std::isdigit(c) || var_index(c) >= 0;
  }

  Polynomial<N> expr()
  {
    Polynomial<N> p = term();
    while (true) {
      int c = peek();
      if (c == '+') {
        ++pos_;
        p += term();
      } else if (c == '-') {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  Polynomial<N> term()
  {
    Polynomial<N> p = unary();
    while (true) {
      int c = peek();
      if (c == '*') {
        ++pos_;
        p = p * unary();
      } else if (c == '/') {
        ++pos_;
        Polynomial<N> d = unary();
        if (!d.is_constant() || d.is_zero())
          fail("division by a non-constant or zero expression");
        p *= Rational(1) / d.coefficient(Exponent<N>{});
      } else if (c >= 0 && starts_factor(c)) {
        p = p * unary();
      } else {
        return p;
      }
    }
  }

  Polynomial<N> unary()
  {
    int c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial<N> power()
  {
    Polynomial<N> base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (start == pos_)
        fail("expected integer exponent");
      return base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial<N> primary()
  {
    int c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial<N> p = expr();
      if (peek() != ')')
        fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c >= 0 && (std::isdigit(c) || c == '.')) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return Polynomial<N>(parse_rational(text_.substr(start, pos_ - start)));
    }
    int v = c >= 0 ? var_index(c) : -1;
    if (v >= 0) {
      ++pos_;
      return Polynomial<N>::variable(static_cast<std::size_t>(v));
    }
    fail("expected a number, variable or '('");
  }
};

} // namespace detail

// Parses +, -, *, / (by constants), ^ (integer exponents), parentheses and
// implicit multiplication; variables are single characters.
template<std::size_t N>
Polynomial<N> parse_polynomial(std::string_view text, const std::array<char, N> &names)
{
  return detail::PolyParser<N>(text, names).parse();
}

inline const std::array<char, 1> poly1_names{'t'};
inline const std::array<char, 2> st_names{'s', 't'};
inline const std::array<char, 3> xyz_names{'x', 'y', 'z'};

// Univariate helpers; the variable is index 0.
Rational discriminant(const Poly1 &p);

int count_sign_changes(const std::vector<Rational> &values);

} // namespace qrf
