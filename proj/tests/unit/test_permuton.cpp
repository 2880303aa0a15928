#include "qrforce/exceptional.hpp"
#include "qrforce/permuton.hpp"

#include "../common/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qrf;

namespace {

StepPermuton identity2()
{
  return StepPermuton(RatMatrix::identity(2));
}

bool within_5_se(double estimate, double exact, std::uint64_t trials)
{
  const double se = std::sqrt(exact * (1 - exact) / static_cast<double>(trials));
  return std::abs(estimate - exact) <= 5 * se;
}

} // namespace

TEST_SUITE("step-permuton")
{
  TEST_CASE("validation")
  {
    RatMatrix bad = RatMatrix::identity(2);
    bad(0, 0) = Rational(1, 2);
    CHECK_THROWS_WITH_AS(StepPermuton{bad}, doctest::Contains("row 1"), std::invalid_argument);
    RatMatrix neg = RatMatrix::from_rows({{Rational(3, 2), Rational(-1, 2)}, {Rational(-1, 2), Rational(3, 2)}});
    CHECK_THROWS_WITH_AS(StepPermuton{neg}, doctest::Contains("negative"), std::invalid_argument);
    CHECK_THROWS(StepPermuton{RatMatrix(2, 3)});
    CHECK(StepPermuton::uniform(3).is_uniform());
    CHECK_FALSE(identity2().is_uniform());
  }

  TEST_CASE("uniform permuton gives 1/|sigma|!")
  {
    for (int k = 1; k <= 4; ++k)
      for (const auto &s : enumerate_Sk(4))
        CHECK(density_in_step_permuton(s, StepPermuton::uniform(k)) == Rational(1, 24));
  }

  TEST_CASE("two diagonal cells")
  {
    // Same-cell pairs are increasing with probability 1/2, cross-cell pairs always.
    CHECK(density_in_step_permuton(parse_permutation("12"), identity2()) == Rational(3, 4));
    CHECK(density_in_step_permuton(parse_permutation("21"), identity2()) == Rational(1, 4));
  }

  TEST_CASE("exact formula against the labeled-point oracle")
  {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
      const int k = 2 + trial % 2;
      const int m = trial < 6 ? 3 : 4;
      const RatMatrix a = oracle::random_doubly_stochastic(rng, k, 1 + trial % 3);
      const StepPermuton p(a);
      const auto dist = oracle::labeled_point_distribution(a, m);
      for (const auto &s : enumerate_Sk(m)) {
        const auto it = dist.find(s);
        CHECK(density_in_step_permuton(s, p) == (it == dist.end() ? Rational(0) : it->second));
      }
    }
  }

  TEST_CASE("sparse and dense paths agree")
  {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      const int k = 2 + trial % 4;
      const StepPermuton p(oracle::random_doubly_stochastic(rng, k, 1 + trial % 4));
      for (const char *s : {"1", "21", "132", "2413", "4231"})
        CHECK(density_in_step_permuton(parse_permutation(s), p) == density_dense(parse_permutation(s), p));
    }
  }

  TEST_CASE("densities of S_m sum to one")
  {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
      const StepPermuton p(oracle::random_doubly_stochastic(rng, 2 + trial % 5, 1 + trial % 3));
      for (int m = 1; m <= 4; ++m) {
        Rational total;
        for (const auto &s : enumerate_Sk(m))
          total += density_in_step_permuton(s, p);
        CHECK(total == 1);
      }
    }
  }

  TEST_CASE("dihedral invariance")
  {
    std::mt19937_64 rng(8);
    const StepPermuton p(oracle::random_doubly_stochastic(rng, 4, 3));
    for (auto g : all_symmetries) {
      const int w = oracle::coordinate_map_for([g](const Permutation &q) { return apply(g, q); });
      const StepPermuton pg(oracle::map_matrix(w, p.matrix()));
      for (const auto &s : enumerate_Sk(4))
        CHECK(density_in_step_permuton(apply(g, s), pg) == density_in_step_permuton(s, p));
    }
  }

  TEST_CASE("mixtures of permutation matrices")
  {
    const auto pi = parse_permutation("2413");
    CHECK(mixture_of_permutation_matrices({pi}, {Rational(1)}).matrix() == oracle::perm_matrix(pi));

    const auto c = build_case(1);
    const Rational third(1, 3);
    const auto mix = mixture_of_permutation_matrices({c.triple.begin(), c.triple.end()}, {third, third, third});
    CHECK(mix.k() == 32);
    for (int i = 0; i < 32; ++i) {
      int nonzero = 0;
      for (int j = 0; j < 32; ++j)
        nonzero += sgn(mix.matrix()(i, j)) != 0;
      CHECK(nonzero <= 3);
    }

    const Rational half(1, 2);
    CHECK_THROWS_WITH(mixture_of_permutation_matrices({pi, pi, pi}, {half, half, half}), doctest::Contains("sum"));
    CHECK_THROWS_WITH(mixture_of_permutation_matrices({pi, pi}, {Rational(3, 2), -half}), doctest::Contains("negative"));
    CHECK_THROWS_WITH(mixture_of_permutation_matrices({pi, parse_permutation("12")}, {half, half}),
                      doctest::Contains("mixed"));
  }

  TEST_CASE("symbolic mixture density")
  {
    const auto c = build_case(1);
    const std::vector<Permutation> triple(c.triple.begin(), c.triple.end());
    const auto d = mixture_density_polynomial(parse_permutation("1234"), triple);
    CHECK(d.coefficient({0, 0, 4}) == oracle::frac(24839424, 603979776));

    // Point values agree with the numeric formula on the mixture.
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 3; ++trial) {
      const Rational x = oracle::random_rational(rng, 1, 5, 17), y = oracle::random_rational(rng, 1, 5, 17);
      const Rational z = 1 - x - y;
      const auto p = mixture_of_permutation_matrices(triple, {x, y, z});
      CHECK(d.evaluate({x, y, z}) == density_in_step_permuton(parse_permutation("1234"), p));
    }

    const auto small = mixture_density_polynomial(parse_permutation("12"), {parse_permutation("12"), parse_permutation("21")});
    CHECK(small.evaluate({Rational(1), Rational(0), Rational(0)}) == oracle::frac(3, 4));
    CHECK(small.evaluate({Rational(0), Rational(1), Rational(0)}) == oracle::frac(1, 4));
  }

  TEST_CASE("sampling is deterministic per seed")
  {
    std::mt19937_64 rng(3);
    const StepPermuton p(oracle::random_doubly_stochastic(rng, 5, 3));
    CHECK(sample_random_permutation(p, 6, 42) == sample_random_permutation(p, 6, 42));
    CHECK(mc_pattern_counts(p, 4, 20000, 9, 1) == mc_pattern_counts(p, 4, 20000, 9, 3));
  }

  TEST_CASE("Monte Carlo agrees with exact densities")
  {
    const std::uint64_t n = 1000000;
    CHECK(within_5_se(mc_density_estimate(parse_permutation("12"), StepPermuton::uniform(1), n, 1).estimate, 0.5, n));
    CHECK(within_5_se(mc_density_estimate(parse_permutation("12"), identity2(), n, 2).estimate, 0.75, n));
    CHECK(within_5_se(mc_density_estimate(parse_permutation("1234"), StepPermuton::uniform(4), n, 3).estimate,
                      1.0 / 24, n));

    std::mt19937_64 rng(77);
    const StepPermuton p(oracle::random_doubly_stochastic(rng, 3, 2));
    const auto counts = mc_pattern_counts(p, 4, n, 5);
    const auto s4 = enumerate_Sk(4);
    for (std::size_t i = 0; i < s4.size(); ++i)
      CHECK(within_5_se(static_cast<double>(counts[i]) / n, to_double(density_in_step_permuton(s4[i], p)), n));
  }

  TEST_CASE("permutation rank follows enumeration order")
  {
    const auto s4 = enumerate_Sk(4);
    for (std::size_t i = 0; i < s4.size(); ++i)
      CHECK(permutation_rank(s4[i].image()) == i);
  }
}
