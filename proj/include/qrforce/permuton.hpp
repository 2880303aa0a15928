#pragma once

#include "qrforce/matrix.hpp"
#include "qrforce/permutation.hpp"
#include "qrforce/polynomial.hpp"
#include "qrforce/rng.hpp"

#include <cstdint>
#include <vector>

namespace qrf {

// mu[A] for a k x k doubly stochastic rational matrix A: cell (i, j) carries
// mass A_ij / k spread uniformly.
class StepPermuton
{
public:
  explicit StepPermuton(RatMatrix a);

  static StepPermuton uniform(int k);

  int k() const { return static_cast<int>(a_.rows()); }
  const RatMatrix &matrix() const { return a_; }

  bool is_uniform() const;

private:
  RatMatrix a_;
};

// Exact d(sigma, mu[A]) through the sparse enumeration: for every
// non-decreasing row assignment, only non-zero columns of each row are tried.
Rational density_in_step_permuton(const Permutation &sigma, const StepPermuton &p);

// Same formula with the two non-decreasing maps enumerated independently.
Rational density_dense(const Permutation &sigma, const StepPermuton &p);

StepPermuton mixture_of_permutation_matrices(const std::vector<Permutation> &perms,
                                             const std::vector<Rational> &weights);

// d(sigma, mu[x A_1 + y A_2 + z A_3]) as a homogeneous polynomial of degree
// |sigma| in (x, y, z); fewer than three permutations leave the trailing
// variables unused.
QuarticXYZ mixture_density_polynomial(const Permutation &sigma,
                                      const std::vector<Permutation> &perms);

class PermutonSampler
{
public:
  explicit PermutonSampler(const StepPermuton &p);

  Permutation sample(int m, Rng &rng) const;
  // Index of the sampled pattern in enumerate_Sk(m) order (m <= 8).
  std::size_t sample_index(int m, Rng &rng) const;

private:
  int k_;
  std::vector<std::pair<int, int>> cells_;
  std::vector<double> cumulative_;
};

Permutation sample_random_permutation(const StepPermuton &p, int m, std::uint64_t seed);

struct McEstimate
{
  double estimate = 0;
  double stderr_ = 0;
  std::uint64_t trials = 0;
};

// Counts of every pattern in enumerate_Sk(m) order. Trials are split into
// fixed chunks with their own streams, so results do not depend on the
// number of workers.
std::vector<std::uint64_t> mc_pattern_counts(const StepPermuton &p, int m, std::uint64_t trials,
                                             std::uint64_t seed, unsigned workers = 0);

McEstimate mc_density_estimate(const Permutation &sigma, const StepPermuton &p,
                               std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

// Lexicographic rank of a permutation of size <= 8 within S_m.
std::size_t permutation_rank(const std::vector<int> &image);

} // namespace qrf
