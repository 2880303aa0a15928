#pragma once

#include "qrforce/certifier.hpp"

#include <string>
#include <vector>

namespace qrf {

struct AppendixBlock
{
  std::string label;
  std::string family;
  int n = 0;
  Quadruple perms;
  RatVector signs;
  std::vector<RatVector> gradients;
  RatMatrix hessian_combo;
  std::vector<double> eigenvalues;
};

std::vector<AppendixBlock> appendix_blocks();

// Sign counts of a listed spectrum (listed zeros count as zero).
Inertia listed_inertia(const std::vector<double> &eigenvalues);

// The listed matrices are the coefficient matrices A of the quadratic terms
// x^T A x of the signed sum of h-functions, i.e. half the Hessian sum.
Rational listed_hessian_scale();

struct AppendixItem
{
  std::string label;
  int n = 0;
  std::size_t gradient_entries = 0;
  std::size_t gradient_mismatches = 0;
  std::size_t hessian_entries = 0;
  std::size_t hessian_mismatches = 0;
  std::string first_mismatch;
  double max_eigenvalue_error = 0;
  bool spectrum_ok = false;
  Inertia computed_inertia;
  Inertia expected_inertia;
  double seconds = 0;

  bool gradients_ok() const { return gradient_mismatches == 0; }
  bool hessian_ok() const { return hessian_mismatches == 0; }
  bool inertia_ok() const { return computed_inertia == expected_inertia; }
  bool ok() const { return gradients_ok() && hessian_ok() && spectrum_ok && inertia_ok(); }
};

struct AppendixReport
{
  std::vector<AppendixItem> items;
  double eigenvalue_tolerance = 0;

  bool ok() const;
};

// Recomputes every block from scratch and diffs it against the fixtures.
AppendixReport verify_appendix(double eigenvalue_tolerance = 0.01, unsigned workers = 0);

AppendixItem verify_appendix_block(const AppendixBlock &block, double eigenvalue_tolerance);

} // namespace qrf
