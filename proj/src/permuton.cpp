#include "qrforce/permuton.hpp"

#include "qrforce/workers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qrf {

StepPermuton::StepPermuton(RatMatrix a)
: a_(std::move(a))
{
  if (!a_.is_square() || a_.rows() == 0)
    throw std::invalid_argument("step permuton: matrix must be square and non-empty");
  const std::size_t k = a_.rows();
  for (std::size_t i = 0; i < k; ++i) {
    Rational row = 0, col = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (sgn(a_(i, j)) < 0)
        throw std::invalid_argument("step permuton: negative entry at (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ")");
      row += a_(i, j);
      col += a_(j, i);
    }
    if (row != 1)
      throw std::invalid_argument("step permuton: row " + std::to_string(i + 1) + " sums to " +
                                  to_string(row));
    if (col != 1)
      throw std::invalid_argument("step permuton: column " + std::to_string(i + 1) + " sums to " +
                                  to_string(col));
  }
}

StepPermuton StepPermuton::uniform(int k)
{
  RatMatrix a(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      a(i, j) = Rational(1, k);
  return StepPermuton(std::move(a));
}

bool StepPermuton::is_uniform() const
{
  const Rational u(1, k());
  for (std::size_t i = 0; i < a_.rows(); ++i)
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (a_(i, j) != u)
        return false;
  return true;
}

namespace {

// Calls visit(f) for every non-decreasing f: [m] -> [0, k).
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

// m! / prod(multiplicity!) for a sorted sequence.
long long multinomial_of_sorted(const std::vector<int> &v, const std::vector<long long> &fact)
{
  long long r = fact[v.size()];
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i])
      ++j;
    r /= fact[j - i];
    i = j;
  }
  return r;
}

std::vector<long long> factorials(int m)
{
  std::vector<long long> fact(m + 1, 1);
  for (int i = 1; i <= m; ++i)
    fact[i] = fact[i - 1] * i;
  return fact;
}

struct ScaledMatrix
{
  Integer denominator = 1;
  std::vector<std::vector<Integer>> numerators;
  std::vector<std::vector<int>> nonzero_cols;
};

ScaledMatrix scale_to_integers(const RatMatrix &a)
{
  ScaledMatrix s;
  const std::size_t k = a.rows();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(), a(i, j).get_den_mpz_t());
  s.numerators.assign(k, std::vector<Integer>(k));
  s.nonzero_cols.assign(k, {});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      s.numerators[i][j] = a(i, j).get_num() * (s.denominator / a(i, j).get_den());
      if (s.numerators[i][j] != 0)
        s.nonzero_cols[i].push_back(static_cast<int>(j));
    }
  return s;
}

Rational normalize(const Integer &acc, int m, int k, const Integer &denominator)
{
  Integer den = factorial(m);
  Integer kk;
  mpz_ui_pow_ui(kk.get_mpz_t(), k, m);
  Integer dm;
  mpz_pow_ui(dm.get_mpz_t(), denominator.get_mpz_t(), m);
  Rational d(acc, den * kk * dm);
  d.canonicalize();
  return d;
}

} // namespace

Rational density_in_step_permuton(const Permutation &sigma, const StepPermuton &p)
{
  const int m = sigma.size();
  const int k = p.k();
  if (m < 1)
    throw std::invalid_argument("density: empty pattern");
  const auto fact = factorials(m);
  const auto scaled = scale_to_integers(p.matrix());
  std::vector<int> sigma_inv(m);
  for (int i = 0; i < m; ++i)
    sigma_inv[sigma.image()[i] - 1] = i;

  Integer acc = 0;
  Integer term;
  std::vector<int> cols(m), g(m);
  for_each_nondecreasing(m, k, [&](const std::vector<int> &f) {
    const long long wf = multinomial_of_sorted(f, fact);
    std::function<void(int)> choose = [&](int i) {
      if (i == m) {
        for (int j = 0; j < m; ++j)
          g[j] = cols[sigma_inv[j]];
        for (int j = 1; j < m; ++j)
          if (g[j] < g[j - 1])
            return;
        term = static_cast<long>(wf * multinomial_of_sorted(g, fact));
        for (int t = 0; t < m; ++t)
          term *= scaled.numerators[f[t]][cols[t]];
        acc += term;
        return;
      }
      for (int c : scaled.nonzero_cols[f[i]]) {
        cols[i] = c;
        choose(i + 1);
      }
    };
    choose(0);
  });
  return normalize(acc, m, k, scaled.denominator);
}

Rational density_dense(const Permutation &sigma, const StepPermuton &p)
{
  const int m = sigma.size();
  const int k = p.k();
  const auto fact = factorials(m);
  const auto scaled = scale_to_integers(p.matrix());
  std::vector<std::vector<int>> all_g;
  for_each_nondecreasing(m, k, [&](const std::vector<int> &g) { all_g.push_back(g); });

  Integer acc = 0;
  Integer term;
  for_each_nondecreasing(m, k, [&](const std::vector<int> &f) {
    const long long wf = multinomial_of_sorted(f, fact);
    for (const auto &g : all_g) {
      term = static_cast<long>(wf * multinomial_of_sorted(g, fact));
      for (int i = 0; i < m && term != 0; ++i)
        term *= scaled.numerators[f[i]][g[sigma.image()[i] - 1]];
      acc += term;
    }
  });
  return normalize(acc, m, k, scaled.denominator);
}

StepPermuton mixture_of_permutation_matrices(const std::vector<Permutation> &perms,
                                             const std::vector<Rational> &weights)
{
  if (perms.empty() || perms.size() != weights.size())
    throw std::invalid_argument("mixture: need one weight per permutation");
  const int k = perms[0].size();
  Rational total = 0;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (perms[i].size() != k)
      throw std::invalid_argument("mixture: permutations of mixed sizes");
    if (sgn(weights[i]) < 0)
      throw std::invalid_argument("mixture: negative weight " + to_string(weights[i]));
    total += weights[i];
  }
  if (total != 1)
    throw std::invalid_argument("mixture: weights sum to " + to_string(total) + ", not 1");
  RatMatrix a(k, k);
  for (std::size_t q = 0; q < perms.size(); ++q)
    for (int i = 1; i <= k; ++i)
      a(i - 1, perms[q](i) - 1) += weights[q];
  return StepPermuton(std::move(a));
}

QuarticXYZ mixture_density_polynomial(const Permutation &sigma, const std::vector<Permutation> &perms)
{
  if (perms.empty() || perms.size() > 3)
    throw std::invalid_argument("mixture polynomial: between one and three permutations");
  const int m = sigma.size();
  const int k = perms[0].size();
  for (const auto &p : perms)
    if (p.size() != k)
      throw std::invalid_argument("mixture polynomial: permutations of mixed sizes");
  const int r = static_cast<int>(perms.size());
  const auto fact = factorials(m);
  std::vector<int> sigma_inv(m);
  for (int i = 0; i < m; ++i)
    sigma_inv[sigma.image()[i] - 1] = i;

  // coeff[a][b] accumulates the monomial x^a y^b z^(m-a-b).
  std::vector<std::vector<long long>> coeff(m + 1, std::vector<long long>(m + 1, 0));
  std::vector<int> choice(m), cols(m), g(m);
  for_each_nondecreasing(m, k, [&](const std::vector<int> &f) {
    const long long wf = multinomial_of_sorted(f, fact);
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      for (int i = 0; i < m; ++i)
        cols[i] = perms[choice[i]].image()[f[i]] - 1;
      for (int j = 0; j < m; ++j)
        g[j] = cols[sigma_inv[j]];
      bool monotone = true;
      for (int j = 1; j < m && monotone; ++j)
        monotone = g[j] >= g[j - 1];
      if (monotone) {
        int a = 0, b = 0;
        for (int i = 0; i < m; ++i) {
          a += choice[i] == 0;
          b += choice[i] == 1;
        }
        coeff[a][b] += wf * multinomial_of_sorted(g, fact);
      }
      int i = m - 1;
      while (i >= 0 && choice[i] == r - 1)
        choice[i--] = 0;
      if (i < 0)
        break;
      ++choice[i];
    }
  });

  Integer kk;
  mpz_ui_pow_ui(kk.get_mpz_t(), k, m);
  const Rational scale(1, factorial(m) * kk);
  QuarticXYZ poly;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; a + b <= m; ++b)
      if (coeff[a][b] != 0)
        poly.add_term({a, b, m - a - b}, Rational(Integer(std::to_string(coeff[a][b]))) * scale);
  return poly;
}

PermutonSampler::PermutonSampler(const StepPermuton &p)
: k_(p.k())
{
  double total = 0;
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) {
      const Rational &w = p.matrix()(i, j);
      if (sgn(w) == 0)
        continue;
      total += to_double(w);
      cells_.emplace_back(i, j);
      cumulative_.push_back(total);
    }
}

std::size_t PermutonSampler::sample_index(int m, Rng &rng) const
{
  std::array<double, 8> xs{}, ys{};
  if (m < 1 || m > 8)
    throw std::invalid_argument("sampler: m must be in 1..8");
  const double total = cumulative_.back();
  for (int n = 0; n < m; ++n) {
    while (true) {
      double u = rng.uniform01() * total;
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      if (it == cumulative_.end())
        --it;
      const auto [i, j] = cells_[it - cumulative_.begin()];
      const double x = (i + rng.uniform01()) / k_;
      const double y = (j + rng.uniform01()) / k_;
      bool tie = false;
      for (int q = 0; q < n; ++q)
        tie = tie || xs[q] == x || ys[q] == y;
      if (tie)
        continue;
      xs[n] = x;
      ys[n] = y;
      break;
    }
  }
  std::array<int, 8> order{};
  for (int i = 0; i < m; ++i)
    order[i] = i;
  std::sort(order.begin(), order.begin() + m, [&](int a, int b) { return xs[a] < xs[b]; });
  std::vector<int> image(m);
  for (int i = 0; i < m; ++i) {
    int rank = 1;
    for (int j = 0; j < m; ++j)
      rank += ys[order[j]] < ys[order[i]];
    image[i] = rank;
  }
  return permutation_rank(image);
}

Permutation PermutonSampler::sample(int m, Rng &rng) const
{
  static thread_local std::vector<std::vector<Permutation>> tables(9);
  if (m >= 1 && m <= 8 && tables[m].empty())
    tables[m] = enumerate_Sk(m);
  return tables[m].at(sample_index(m, rng));
}

Permutation sample_random_permutation(const StepPermuton &p, int m, std::uint64_t seed)
{
  if (m < 1)
    throw std::invalid_argument("sample: m must be positive");
  Rng rng(seed);
  return PermutonSampler(p).sample(m, rng);
}

std::vector<std::uint64_t> mc_pattern_counts(const StepPermuton &p, int m, std::uint64_t trials,
                                             std::uint64_t seed, unsigned workers)
{
  constexpr std::size_t chunks = 64;
  const PermutonSampler sampler(p);
  std::size_t patterns = 1;
  for (int i = 2; i <= m; ++i)
    patterns *= static_cast<std::size_t>(i);
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(patterns, 0));
  const Rng root(seed);
  parallel_for(
    chunks,
    [&](std::size_t c) {
      Rng rng = root.split(c);
      const std::uint64_t begin = trials * c / chunks;
      const std::uint64_t end = trials * (c + 1) / chunks;
      for (std::uint64_t t = begin; t < end; ++t)
        ++partial[c][sampler.sample_index(m, rng)];
    },
    workers);
  std::vector<std::uint64_t> counts(patterns, 0);
  for (const auto &part : partial)
    for (std::size_t i = 0; i < patterns; ++i)
      counts[i] += part[i];
  return counts;
}

McEstimate mc_density_estimate(const Permutation &sigma, const StepPermuton &p, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers)
{
  if (trials < 1)
    throw std::invalid_argument("mc_density_estimate: trials must be positive");
  auto counts = mc_pattern_counts(p, sigma.size(), trials, seed, workers);
  McEstimate e;
  e.trials = trials;
  e.estimate = static_cast<double>(counts[permutation_rank(sigma.image())]) / static_cast<double>(trials);
  e.stderr_ = std::sqrt(e.estimate * (1 - e.estimate) / static_cast<double>(trials));
  return e;
}

std::size_t permutation_rank(const std::vector<int> &image)
{
  const std::size_t m = image.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < m; ++j)
      smaller += image[j] < image[i];
    std::size_t f = 1;
    for (std::size_t q = 2; q < m - i; ++q)
      f *= q;
    rank += smaller * f;
  }
  return rank;
}

} // namespace qrf
