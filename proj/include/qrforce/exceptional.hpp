#pragma once

#include "qrforce/bernstein.hpp"
#include "qrforce/certifier.hpp"
#include "qrforce/permuton.hpp"
#include "qrforce/polynomial.hpp"

#include <map>
#include <string>
#include <vector>

namespace qrf {

// Mixture weights x = s t, y = s (1 - t), z = 1 - s of three permutation
// matrices; g1, g2 are the densities of the two representative patterns.
struct ExceptionalCase
{
  int id = 0;
  int k = 0;
  std::array<Permutation, 3> triple;
  Quadruple targets;
  std::array<Permutation, 2> g_patterns;
  std::map<Permutation, QuarticXYZ> d_polys;
  BivariatePoly g1, g2;
  Rational t_lo, t_hi;
  // +1 when g1 + g2 increases in s on the domain, -1 when it decreases.
  int monotone_sign = 0;
};

ExceptionalCase build_case(int id);

// (x, y, z) -> (s t, s (1 - t), 1 - s).
BivariatePoly substitute_st(const QuarticXYZ &d);

StepPermuton case_permuton(const ExceptionalCase &c, const Rational &s, const Rational &t);

struct FactLine
{
  std::string name;
  bool pass = false;
  std::string computed;
  std::string expected;
};

struct FactReport
{
  int case_id = 0;
  std::vector<FactLine> lines;

  bool ok() const;
  const FactLine *find(std::string_view name) const;
};

// Replays every displayed identity, evaluation and sign claim of the case's
// monotonicity and intermediate-value arguments, plus independent Bernstein
// certificates of the monotonicity.
FactReport verify_lemma_facts(const ExceptionalCase &c);

struct SolvedWitness
{
  int case_id = 0;
  Rational s_lo, s_hi, t_lo, t_hi;
  Rational s_mid, t_mid;
  // g_i(s_mid, t_mid) - 1/24, exact.
  Rational residual_g1, residual_g2;
  int outer_iterations = 0;
  // Exact signs of H at the final t-bracket are opposite.
  bool bracket_signs_ok = false;
  // Sum of |coefficient| * degree bounds on the unit square.
  Rational lipschitz_s, lipschitz_t;
};

// Inner bisection solves g1 + g2 = 1/12 in s, outer bisection solves
// g1(s(t), t) = 1/24 in t; both use exact signs only.
SolvedWitness solve_case(const ExceptionalCase &c, int t_bits = 48);

// Smallest s-bracket [lo, hi] of width <= 2^-bits with exact opposite signs of
// g1 + g2 - 1/12 at the ends.
std::pair<Rational, Rational> solve_inner(const ExceptionalCase &c, const Rational &t, int bits = 52);

struct WitnessBundle
{
  SolvedWitness solved;
  StepPermuton permuton;
  // Exact densities of the four target patterns at the midpoint.
  std::vector<std::pair<Permutation, Rational>> densities;
  // Same densities from the sparse enumeration on the emitted matrix.
  bool densities_cross_checked = false;
  // A cell (1-based) whose mass differs from 1/k^2.
  std::pair<int, int> nonuniform_cell{0, 0};
  Rational nonuniform_mass;
  std::string note;
};

WitnessBundle emit_witness(const ExceptionalCase &c, const SolvedWitness &w, bool cross_check = true);

} // namespace qrf
