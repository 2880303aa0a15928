#include "qrforce/bernstein.hpp"
#include "qrforce/exceptional.hpp"

#include "../common/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace qrf;

namespace {

const ExceptionalCase &case_(int id)
{
  static const ExceptionalCase c1 = build_case(1), c2 = build_case(2);
  return id == 1 ? c1 : c2;
}

const SolvedWitness &solved(int id)
{
  static const SolvedWitness w1 = solve_case(case_(1)), w2 = solve_case(case_(2));
  return id == 1 ? w1 : w2;
}

} // namespace

TEST_SUITE("exceptional-quadruples")
{
  TEST_CASE("case construction")
  {
    CHECK(case_(1).k == 32);
    CHECK(case_(2).k == 20);
    CHECK_THROWS(build_case(3));
    const auto &d = case_(2).d_polys.at(parse_permutation("2413"));
    CHECK(d.coefficient({0, 0, 4}) * 92160000 == 4092384);
    CHECK(d.coefficient({0, 1, 3}) * 92160000 == 21557760);
    CHECK(d.coefficient({4, 0, 0}) * 92160000 == 480);
    const auto &d1 = case_(1).d_polys.at(parse_permutation("1234"));
    CHECK(d1.coefficient({0, 1, 3}) * 603979776 == 82000896);
  }

  TEST_CASE("g polynomials are the substituted densities")
  {
    for (int id : {1, 2}) {
      const auto &c = case_(id);
      CHECK(c.g1 == substitute_st(c.d_polys.at(c.g_patterns[0])));
      CHECK(c.g2 == substitute_st(c.d_polys.at(c.g_patterns[1])));
    }
    CHECK(case_(1).g1.coefficient({3, 2}) * 786432 == 51252);
    CHECK(case_(1).g1.coefficient({3, 1}) * 786432 == -42648);
    CHECK(case_(1).g1.coefficient({0, 0}) * 786432 == 32343);
  }

  TEST_CASE("density polynomials agree with the numeric formula")
  {
    std::mt19937_64 rng(1);
    for (int id : {1, 2}) {
      const auto &c = case_(id);
      const Rational s = oracle::random_rational(rng, 1, 15, 16), t = oracle::random_rational(rng, 1, 15, 16);
      const StepPermuton p = case_permuton(c, s, t);
      for (const auto &[sigma, d] : c.d_polys)
        CHECK(d.evaluate({s * t, s * (1 - t), 1 - s}) == density_in_step_permuton(sigma, p));
    }
  }

  TEST_CASE("symmetries of the families")
  {
    const auto &c1 = case_(1);
    CHECK(c1.d_polys.at(parse_permutation("1234")) == c1.d_polys.at(parse_permutation("4321")));
    CHECK(c1.d_polys.at(parse_permutation("2143")) == c1.d_polys.at(parse_permutation("3412")));
    const auto &c2 = case_(2);
    CHECK(c2.d_polys.at(parse_permutation("1324")) == c2.d_polys.at(parse_permutation("4231")));

    // The second family is invariant under quarter turns of the square.
    const int w = oracle::coordinate_map_for([](const Permutation &p) { return apply(Symmetry::rotate90, p); });
    const StepPermuton p = case_permuton(c2, Rational(3, 5), Rational(2, 7));
    CHECK(oracle::map_matrix(w, p.matrix()) == p.matrix());
    for (const char *s : {"1324", "2413", "3142", "4231"})
      CHECK(density_in_step_permuton(parse_permutation(s), p) ==
            density_in_step_permuton(apply(Symmetry::rotate90, parse_permutation(s)), p));
  }

  TEST_CASE("lemma facts that the displayed data supports")
  {
    const auto r1 = verify_lemma_facts(case_(1));
    CHECK(r1.ok());
    const auto r2 = verify_lemma_facts(case_(2));
    for (const char *name : {"g1(0.7,0.15)+g2(0.7,0.15)", "D(0.15) rounds to displayed value and is negative",
                             "d/ds(g1+g2) < 0 on the domain (Bernstein)"}) {
      const auto *line = r2.find(name);
      REQUIRE_MESSAGE(line, name);
      CHECK_MESSAGE(line->pass, name);
    }
    CHECK(r2.find("g1(0.7,0.15)+g2(0.7,0.15)")->computed == "209573047187/2400000000000");
    CHECK(r1.find("g1(7/10,0)+g2(7/10,0)")->computed == "1954003/19660800");
    CHECK(r1.find("g1(1/10,1)+g2(1/10,1)")->computed == "8161877/98304000");
    CHECK(r1.find("g1(1/10,1)")->computed == "1439731/32768000");
  }

  TEST_CASE("monotonicity spot checks")
  {
    std::mt19937_64 rng(2);
    for (int id : {1, 2}) {
      const auto &c = case_(id);
      const BivariatePoly ds = (c.g1 + c.g2).derivative(0);
      for (int i = 0; i < 20; ++i) {
        const Rational s = oracle::random_rational(rng, 0, 1000, 1000);
        const Rational t = c.t_lo + (c.t_hi - c.t_lo) * oracle::random_rational(rng, 0, 1000, 1000);
        CHECK(sgn(ds.evaluate({s, t})) == c.monotone_sign);
      }
    }
  }

  TEST_CASE("inner solve at t = 0 stays below 7/10")
  {
    const auto [lo, hi] = solve_inner(case_(1), Rational(0));
    CHECK(hi < Rational(7, 10));
    CHECK(lo <= hi);
  }

  TEST_CASE("solved witnesses")
  {
    const Rational width(1, Integer("1099511627776"));
    for (int id : {1, 2}) {
      const auto &w = solved(id);
      CAPTURE(id);
      CHECK(w.s_hi - w.s_lo <= width);
      CHECK(w.t_hi - w.t_lo <= width);
      CHECK(w.bracket_signs_ok);
      CHECK(abs(w.residual_g1) <= Rational(1, Integer("1000000000000")));
      CHECK(abs(w.residual_g2) <= Rational(1, Integer("1000000000000")));
      CHECK(w.s_lo <= w.s_mid);
      CHECK(w.s_mid <= w.s_hi);
    }
  }

  TEST_CASE("emitted case 1 witness")
  {
    const auto b = emit_witness(case_(1), solved(1), true);
    CHECK(b.densities_cross_checked);
    CHECK_FALSE(b.permuton.is_uniform());
    CHECK(b.nonuniform_mass != Rational(1, 32 * 32));
    std::map<std::string, Rational> d;
    for (const auto &[s, v] : b.densities)
      d[s.to_string()] = v;
    CHECK(d["1234"] == d["4321"]);
    CHECK(d["2143"] == d["3412"]);
    for (const auto &[s, v] : d)
      CHECK(abs(v - Rational(1, 24)) <= Rational(1, Integer("1000000000000")));
  }

  TEST_CASE("Bernstein sign certificates")
  {
    const Box unit{Rational(0), Rational(1), Rational(0), Rational(1)};
    const BivariatePoly p = parse_polynomial("s t - 1/2 s + 2/3", st_names);
    const auto ok = certify_sign(p, unit, 1);
    CHECK(ok.certified);
    CHECK(sgn(ok.margin) > 0);
    const auto no = certify_sign(parse_polynomial("s - 1/2", st_names), unit, 1);
    CHECK_FALSE(no.certified);
    REQUIRE(no.counterexample);
    CHECK(sgn(parse_polynomial("s - 1/2", st_names).evaluate(*no.counterexample)) <= 0);
    const auto [lo, hi] = bernstein_range(p, unit);
    CHECK(lo <= oracle::frac(1, 6));
    CHECK(hi >= oracle::frac(2, 3));
    CHECK(certify_sign(parse_polynomial("t^2 - 2", poly1_names), Rational(0), Rational(1), -1).certified);
  }
}
