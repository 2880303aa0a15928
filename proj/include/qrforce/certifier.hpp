#pragma once

#include "qrforce/matrix.hpp"
#include "qrforce/permutation.hpp"
#include "qrforce/permuton.hpp"
#include "qrforce/perturbation.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qrf {

using Quadruple = std::array<Permutation, 4>;

enum class QuadrupleTag
{
  AllOne,
  ZeroCombo,
  Independent,
};

std::string_view tag_name(QuadrupleTag t);

struct QuadrupleClass
{
  QuadrupleTag tag = QuadrupleTag::Independent;
  // ZeroCombo: A_plus[0] + A_plus[1] - A_minus[0] - A_minus[1] = 0.
  std::array<Permutation, 2> plus;
  std::array<Permutation, 2> minus;
};

QuadrupleClass classify_quadruple(const std::vector<Permutation> &q);

// Sorted quadruple, minimized over the eight symmetries.
Quadruple canonical_allone(const Quadruple &q);

struct ZeroComboQuadruple
{
  std::array<Permutation, 2> plus;
  std::array<Permutation, 2> minus;

  auto operator<=>(const ZeroComboQuadruple &) const = default;
};

// (sorted plus, sorted minus), minimized over the symmetries and the swap of
// the two pairs.
ZeroComboQuadruple canonical_zerocombo(const ZeroComboQuadruple &q);

struct AllOneEnumeration
{
  std::size_t latin_squares = 0;
  std::size_t quadruples = 0;
  std::vector<Quadruple> classes;
};

AllOneEnumeration enumerate_allone_quadruples();

struct ZeroComboEnumeration
{
  std::size_t ordered_tuples = 0;
  std::size_t quadruples = 0;
  std::vector<ZeroComboQuadruple> classes;
};

ZeroComboEnumeration enumerate_zerocombo_quadruples();

struct TrichotomyScan
{
  std::size_t total = 0;
  std::size_t all_one = 0;
  std::size_t zero_combo = 0;
  std::size_t independent = 0;
  // Classification agrees with membership in the orbits of the class lists.
  bool orbits_consistent = true;
  // Every Independent quadruple has linearly independent gradient polynomials.
  bool independent_polys = true;
};

TrichotomyScan scan_trichotomy();

enum class Verdict
{
  CorollaryApplies,
  KernelRestrictedApplies,
  Inconclusive,
};

std::string_view verdict_name(Verdict v);

struct WitnessPair
{
  RatVector w_plus;
  RatVector w_minus;
  Rational value_plus;
  Rational value_minus;
};

struct NonForcingEvidence
{
  Quadruple quadruple;
  int n = 0;
  std::vector<RatVector> gradients;
  // Indices into quadruple; the first three gradients in this order are
  // linearly independent.
  std::array<int, 4> ordering{0, 1, 2, 3};
  bool rank3_ok = false;
  RatVector alpha;
  RatMatrix hessian_combo;
  Inertia full_inertia;
  std::optional<Inertia> restricted_inertia;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<WitnessPair> witness;
};

RatMatrix hessian_combination(const Quadruple &q, int n, const RatVector &alpha);

// alpha empty: use a kernel vector of the gradient stack.
NonForcingEvidence certify_non_forcing(const Quadruple &q, int n, const RatVector &alpha = {});

// Tries n = 4..7 and returns the first conclusive certificate, or the n = 7
// attempt.
NonForcingEvidence certify_auto(const Quadruple &q, const RatVector &alpha = {});

// Re-derives the invariants of the evidence from its own fields only.
struct EvidenceCheck
{
  bool ok = true;
  std::vector<std::string> problems;
};

EvidenceCheck check_evidence(const NonForcingEvidence &e);

struct ZeroWitness
{
  StepPermuton permuton;
  // 1-based index of the first non-zero coordinate.
  std::size_t nonuniform_index = 0;
  std::vector<Rational> densities;
};

ZeroWitness witness_from_zero(const std::vector<Permutation> &q, const PerturbationPoint &p);

Quadruple parse_quadruple(std::string_view text);
std::string to_string(const Quadruple &q);

} // namespace qrf
