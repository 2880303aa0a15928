#include "qrforce/perturbation.hpp"

#include <array>
#include <functional>
#include <set>
#include <stdexcept>

namespace qrf {

PerturbationPoint::PerturbationPoint(int k_, RatVector x_)
: k(k_), x(std::move(x_))
{
  if (k < 2)
    throw std::invalid_argument("perturbation point: k must be at least 2");
  if (x.size() != static_cast<std::size_t>((k - 1) * (k - 1)))
    throw std::invalid_argument("perturbation point: expected " + std::to_string((k - 1) * (k - 1)) +
                                " coordinates, got " + std::to_string(x.size()));
}

PerturbationPoint PerturbationPoint::zero(int k)
{
  return PerturbationPoint(k, RatVector(static_cast<std::size_t>((k - 1) * (k - 1))));
}

bool PerturbationPoint::is_zero() const
{
  for (const auto &v : x)
    if (sgn(v) != 0)
      return false;
  return true;
}

RatMatrix z_basis(int k, int j, int jp)
{
  if (k < 2 || j < 1 || jp < 1 || j > k - 1 || jp > k - 1)
    throw std::invalid_argument("z_basis: indices must lie in 1..k-1");
  RatMatrix z(k, k);
  z(j - 1, jp - 1) = 1;
  z(j, jp) = 1;
  z(j, jp - 1) = -1;
  z(j - 1, jp) = -1;
  return z;
}

RatMatrix b_matrix(const PerturbationPoint &p)
{
  const int k = p.k;
  RatMatrix b(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      b(i, j) = 1;
  for (int j = 1; j < k; ++j)
    for (int jp = 1; jp < k; ++jp) {
      const Rational &x = p.x[z_index(k, j, jp)];
      if (sgn(x) == 0)
        continue;
      b(j - 1, jp - 1) += x;
      b(j, jp) += x;
      b(j, jp - 1) -= x;
      b(j - 1, jp) -= x;
    }
  return b;
}

namespace {

void for_each_nondecreasing(int m, int k, const std::function<void(const std::vector<int> &)> &visit)
{
  std::vector<int> f(m, 0);
  while (true) {
    visit(f);
    int i = m - 1;
    while (i >= 0 && f[i] == k - 1)
      --i;
    if (i < 0)
      return;
    ++f[i];
    for (int j = i + 1; j < m; ++j)
      f[j] = f[i];
  }
}

// m! / prod(multiplicity!) of a sorted sequence.
long long multinomial(const std::vector<int> &v)
{
  long long r = 1;
  for (std::size_t i = 2; i <= v.size(); ++i)
    r *= static_cast<long long>(i);
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    long long run = 1;
    while (j < v.size() && v[j] == v[i]) {
      ++j;
      run *= static_cast<long long>(j - i);
    }
    r /= run;
    i = j;
  }
  return r;
}

// Sparse affine part of the entry B_ab (0-based): list of (coordinate, +-1).
struct EntryForm
{
  std::array<std::pair<int, int>, 4> terms{};
  int size = 0;
};

std::vector<EntryForm> entry_forms(int k)
{
  std::vector<EntryForm> forms(static_cast<std::size_t>(k * k));
  auto add = [&](int a, int b, int j, int jp, int s) {
    if (j < 1 || jp < 1 || j > k - 1 || jp > k - 1)
      return;
    auto &f = forms[a * k + b];
    f.terms[f.size++] = {static_cast<int>(z_index(k, j, jp)), s};
  };
  for (int a = 1; a <= k; ++a)
    for (int b = 1; b <= k; ++b) {
      add(a - 1, b - 1, a, b, 1);
      add(a - 1, b - 1, a - 1, b - 1, 1);
      add(a - 1, b - 1, a - 1, b, -1);
      add(a - 1, b - 1, a, b - 1, -1);
    }
  return forms;
}

} // namespace

Rational h_value(const Permutation &sigma, const PerturbationPoint &p)
{
  const int m = sigma.size();
  const int k = p.k;
  const RatMatrix b = b_matrix(p);
  Integer den = 1;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), b(i, j).get_den_mpz_t());
  std::vector<Integer> scaled(static_cast<std::size_t>(k * k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      scaled[i * k + j] = b(i, j).get_num() * (den / b(i, j).get_den());

  std::vector<std::vector<int>> maps;
  for_each_nondecreasing(m, k, [&](const std::vector<int> &g) { maps.push_back(g); });
  std::vector<long long> weights;
  for (const auto &g : maps)
    weights.push_back(multinomial(g));

  Integer acc = 0, term;
  for (std::size_t fi = 0; fi < maps.size(); ++fi) {
    const auto &f = maps[fi];
    for (std::size_t gi = 0; gi < maps.size(); ++gi) {
      const auto &g = maps[gi];
      term = static_cast<long>(weights[fi] * weights[gi]);
      for (int i = 0; i < m && term != 0; ++i)
        term *= scaled[f[i] * k + g[sigma.image()[i] - 1]];
      acc += term;
    }
  }
  Integer dm, kk;
  mpz_pow_ui(dm.get_mpz_t(), den.get_mpz_t(), m);
  mpz_ui_pow_ui(kk.get_mpz_t(), k, 2 * m);
  const Integer mf = factorial(m);
  Rational h = Rational(acc, dm * mf) - Rational(kk, mf);
  h.canonicalize();
  return h;
}

HDerivatives h_derivatives_at_zero(const Permutation &sigma, int k)
{
  const int m = sigma.size();
  if (k < 2)
    throw std::invalid_argument("h derivatives: k must be at least 2");
  const std::size_t n = static_cast<std::size_t>((k - 1) * (k - 1));
  const auto forms = entry_forms(k);
  std::vector<std::vector<int>> maps;
  for_each_nondecreasing(m, k, [&](const std::vector<int> &g) { maps.push_back(g); });
  std::vector<long long> weights;
  for (const auto &g : maps)
    weights.push_back(multinomial(g));

  std::vector<long long> grad(n, 0);
  std::vector<long long> hess(n * n, 0);
  std::vector<const EntryForm *> factors(m);
  for (std::size_t fi = 0; fi < maps.size(); ++fi) {
    const auto &f = maps[fi];
    for (std::size_t gi = 0; gi < maps.size(); ++gi) {
      const auto &g = maps[gi];
      const long long w = weights[fi] * weights[gi];
      for (int i = 0; i < m; ++i)
        factors[i] = &forms[f[i] * k + g[sigma.image()[i] - 1]];
      for (int i = 0; i < m; ++i) {
        const EntryForm &a = *factors[i];
        for (int u = 0; u < a.size; ++u)
          grad[a.terms[u].first] += w * a.terms[u].second;
        for (int j = 0; j < m; ++j) {
          if (j == i)
            continue;
          const EntryForm &b = *factors[j];
          for (int u = 0; u < a.size; ++u)
            for (int v = 0; v < b.size; ++v)
              hess[a.terms[u].first * n + b.terms[v].first] += w * a.terms[u].second * b.terms[v].second;
        }
      }
    }
  }

  const Rational scale(1, factorial(m));
  HDerivatives d;
  d.gradient.resize(n);
  d.hessian = RatMatrix(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    d.gradient[s] = Rational(Integer(static_cast<long>(grad[s]))) * scale;
    for (std::size_t t = 0; t < n; ++t)
      d.hessian(s, t) = Rational(Integer(static_cast<long>(hess[s * n + t]))) * scale;
  }
  return d;
}

RatVector h_gradient_at_zero(const Permutation &sigma, int k)
{
  return h_derivatives_at_zero(sigma, k).gradient;
}

RatMatrix h_hessian_at_zero(const Permutation &sigma, int k)
{
  return h_derivatives_at_zero(sigma, k).hessian;
}

namespace {

// (k-m)/(1-v) - (m-1)/v times v^(m-1) (1-v)^(k-m), as a polynomial in variable var.
BivariatePoly edge_factor(int k, int m, std::size_t var)
{
  const BivariatePoly v = BivariatePoly::variable(var);
  const BivariatePoly w = BivariatePoly(1L) - v;
  BivariatePoly r;
  if (k - m > 0)
    r += Rational(k - m) * (v.pow(m - 1) * w.pow(k - m - 1));
  if (m - 1 > 0)
    r -= Rational(m - 1) * (v.pow(m - 2) * w.pow(k - m));
  return r;
}

} // namespace

BivariatePoly gradient_polynomial(const Permutation &pi)
{
  const int k = pi.size();
  if (k < 2)
    throw std::invalid_argument("gradient_polynomial: size must be at least 2");
  BivariatePoly p;
  for (int m = 1; m <= k; ++m) {
    const int pm = pi(m);
    const Rational c(factorial(k), factorial(m - 1) * factorial(k - m) * factorial(pm - 1) * factorial(k - pm));
    p += c * (edge_factor(k, m, 0) * edge_factor(k, pm, 1));
  }
  return p;
}

GradPolyDependence grad_poly_dependence(const std::vector<Permutation> &perms)
{
  if (perms.empty())
    throw std::invalid_argument("grad_poly_dependence: empty set");
  const int k = perms[0].size();
  for (const auto &p : perms)
    if (p.size() != k)
      throw std::invalid_argument("grad_poly_dependence: permutations of mixed sizes");

  std::vector<BivariatePoly> polys;
  std::set<Exponent<2>> monomials;
  for (const auto &p : perms) {
    polys.push_back(gradient_polynomial(p));
    for (const auto &[e, c] : polys.back().terms())
      monomials.insert(e);
  }
  RatMatrix coeffs(monomials.size(), perms.size());
  std::size_t row = 0;
  for (const auto &e : monomials) {
    for (std::size_t j = 0; j < polys.size(); ++j)
      coeffs(row, j) = polys[j].coefficient(e);
    ++row;
  }

  GradPolyDependence r;
  r.rank = rank(coeffs);
  r.independent = r.rank == perms.size();
  if (r.independent)
    return r;
  r.t = primitive_integer_vector(kernel_basis(coeffs).front());
  r.combination = RatMatrix(k, k);
  for (std::size_t q = 0; q < perms.size(); ++q)
    for (int i = 1; i <= k; ++i)
      r.combination(i - 1, perms[q](i) - 1) += r.t[q];
  r.combination_constant = true;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      r.combination_constant = r.combination_constant && r.combination(i, j) == r.combination(0, 0);
  return r;
}

} // namespace qrf
