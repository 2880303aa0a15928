#pragma once

#include "qrforce/matrix.hpp"
#include "qrforce/permutation.hpp"
#include "qrforce/polynomial.hpp"

#include <optional>
#include <vector>

namespace qrf {

// x in Q^{(k-1)^2}; x_t multiplies Z^{j,j'} with t = (j-1)(k-1) + j' (1-based).
struct PerturbationPoint
{
  int k = 0;
  RatVector x;

  PerturbationPoint() = default;
  PerturbationPoint(int k_, RatVector x_);

  static PerturbationPoint zero(int k);
  bool is_zero() const;
};

// 0-based coordinate index of Z^{j,j'} for 1 <= j, j' <= k-1.
inline std::size_t z_index(int k, int j, int jp) { return static_cast<std::size_t>((j - 1) * (k - 1) + (jp - 1)); }

RatMatrix z_basis(int k, int j, int jp);

// All-one matrix plus sum_t x_t Z^(t); rows and columns sum to k.
RatMatrix b_matrix(const PerturbationPoint &p);

// h^k_sigma(x) = (1/m!) sum W(f,g) prod B - k^{2m}/m!, so that
// d(sigma, mu[B/k]) = 1/m! + h / k^{2m}.
Rational h_value(const Permutation &sigma, const PerturbationPoint &p);

struct HDerivatives
{
  RatVector gradient;
  RatMatrix hessian;
};

// Gradient and Hessian at 0 from the degree-2 truncation of prod (1 + l_i(x)).
HDerivatives h_derivatives_at_zero(const Permutation &sigma, int k);
RatVector h_gradient_at_zero(const Permutation &sigma, int k);
RatMatrix h_hessian_at_zero(const Permutation &sigma, int k);

// P_pi(alpha, beta) with alpha as variable 0 and beta as variable 1.
BivariatePoly gradient_polynomial(const Permutation &pi);

struct GradPolyDependence
{
  bool independent = false;
  std::size_t rank = 0;
  // Kernel vector (one coefficient per permutation) when dependent.
  RatVector t;
  RatMatrix combination;
  bool combination_constant = false;
};

GradPolyDependence grad_poly_dependence(const std::vector<Permutation> &perms);

} // namespace qrf
