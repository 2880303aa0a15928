#include "qrforce/certifier.hpp"
#include "qrforce/fixtures.hpp"
#include "qrforce/json_io.hpp"

#include "../common/oracles.hpp"

#include <doctest.h>

using namespace qrf;

namespace {

std::vector<Permutation> perms(const char *text)
{
  return parse_permutation_list(text);
}

// Unordered quadruples of distinct elements of S_4 for which some +,+,-,-
// assignment of permutation matrices sums to zero.
long count_zero_combination_sets()
{
  const auto s4 = enumerate_Sk(4);
  long count = 0;
  for (int a = 0; a < 24; ++a)
    for (int b = a + 1; b < 24; ++b)
      for (int c = b + 1; c < 24; ++c)
        for (int d = c + 1; d < 24; ++d) {
          const std::array<int, 4> idx{a, b, c, d};
          bool found = false;
          for (int partner = 1; partner < 4 && !found; ++partner) {
            RatMatrix m = oracle::perm_matrix(s4[idx[0]]) + oracle::perm_matrix(s4[idx[partner]]);
            for (int o = 1; o < 4; ++o)
              if (o != partner)
                m = m - oracle::perm_matrix(s4[idx[o]]);
            found = m.is_zero();
          }
          count += found;
        }
  return count;
}

} // namespace

TEST_SUITE("forcing-certifier")
{
  TEST_CASE("classification")
  {
    CHECK(classify_quadruple(perms("1234,2143,3412,4321")).tag == QuadrupleTag::AllOne);
    const auto zc = classify_quadruple(perms("1234,2143,1243,2134"));
    REQUIRE(zc.tag == QuadrupleTag::ZeroCombo);
    const std::set<Permutation> plus(zc.plus.begin(), zc.plus.end());
    CHECK((plus == std::set<Permutation>{parse_permutation("1234"), parse_permutation("2143")} ||
           plus == std::set<Permutation>{parse_permutation("1243"), parse_permutation("2134")}));
    CHECK(classify_quadruple(perms("1234,1243,1324,1342")).tag == QuadrupleTag::Independent);
    CHECK_THROWS(classify_quadruple(perms("1234,1234,1324,1342")));
    CHECK_THROWS(classify_quadruple(perms("123,1243,1324,1342")));
    CHECK_THROWS(classify_quadruple(perms("1234,1243,1324")));
  }

  TEST_CASE("all-one enumeration")
  {
    const auto e = enumerate_allone_quadruples();
    CHECK(e.latin_squares == 576);
    CHECK(oracle::count_latin_squares(4) == 576);
    CHECK(e.quadruples == 24);
    REQUIRE(e.classes.size() == 12);
    const auto &listed = fixtures::classes().at("all_one");
    for (std::size_t i = 0; i < 12; ++i) {
      std::string want;
      for (const auto &p : listed[i].at("quad"))
        want += (want.empty() ? "" : ",") + p.get<std::string>();
      CHECK(to_string(e.classes[i]) == want);
    }
  }

  TEST_CASE("zero-combination enumeration")
  {
    const auto e = enumerate_zerocombo_quadruples();
    REQUIRE(e.classes.size() == 7);
    CHECK(e.quadruples == static_cast<std::size_t>(count_zero_combination_sets()));
    const auto &listed = fixtures::classes().at("zero_combination");
    for (std::size_t i = 0; i < 7; ++i) {
      const auto &c = e.classes[i];
      CHECK(c.plus[0].to_string() == listed[i].at("plus")[0].get<std::string>());
      CHECK(c.plus[1].to_string() == listed[i].at("plus")[1].get<std::string>());
      CHECK(c.minus[0].to_string() == listed[i].at("minus")[0].get<std::string>());
      CHECK(c.minus[1].to_string() == listed[i].at("minus")[1].get<std::string>());
      CHECK(classify_quadruple({c.plus[0], c.plus[1], c.minus[0], c.minus[1]}).tag == QuadrupleTag::ZeroCombo);
    }
  }

  TEST_CASE("trichotomy over all quadruples")
  {
    const auto scan = scan_trichotomy();
    CHECK(scan.total == 10626);
    CHECK(scan.all_one == 24);
    CHECK(scan.zero_combo == static_cast<std::size_t>(count_zero_combination_sets()));
    CHECK(scan.all_one + scan.zero_combo + scan.independent == scan.total);
    CHECK(scan.orbits_consistent);
    CHECK(scan.independent_polys);
  }

  TEST_CASE("corollary certificate")
  {
    const auto ev = certify_non_forcing(parse_quadruple("1234,2143,3421,4312"), 7, RatVector(4, Rational(1)));
    CHECK(ev.verdict == Verdict::CorollaryApplies);
    CHECK(ev.full_inertia == Inertia{24, 0, 12});
    CHECK(ev.rank3_ok);
    CHECK(check_evidence(ev).ok);
  }

  TEST_CASE("kernel-restricted certificate")
  {
    const auto ev = certify_non_forcing(parse_quadruple("1432,2341,3214,4123"), 4);
    REQUIRE(ev.verdict == Verdict::KernelRestrictedApplies);
    REQUIRE(ev.witness);
    CHECK(sgn(ev.witness->value_plus) > 0);
    CHECK(sgn(ev.witness->value_minus) < 0);
    for (int i = 0; i < 4; ++i) {
      CHECK(sgn(dot(ev.gradients[i], ev.witness->w_plus)) == 0);
      CHECK(sgn(dot(ev.gradients[i], ev.witness->w_minus)) == 0);
    }
    const RatVector w = parse_rational_vector({"-23", "42", "-23", "128", "112", "128", "0", "8", "0"});
    CHECK(quadratic_form(ev.hessian_combo, w) == 2 * Rational(-115456));
    CHECK(check_evidence(ev).ok);
  }

  TEST_CASE("positive definite control is inconclusive")
  {
    for (int n = 4; n <= 7; ++n) {
      const auto ev = certify_non_forcing(parse_quadruple("1234,2143,3412,4321"), n, RatVector(4, Rational(1)));
      CHECK(ev.verdict == Verdict::Inconclusive);
      CHECK(ev.full_inertia.n_pos == static_cast<std::size_t>((n - 1) * (n - 1)));
    }
  }

  TEST_CASE("preconditions")
  {
    CHECK_THROWS_WITH(certify_non_forcing(parse_quadruple("1234,2143,3412,4321"), 3), doctest::Contains("(n-1)^2"));
    CHECK_THROWS_WITH(certify_non_forcing(parse_quadruple("1234,1243,1324,1342"), 5),
                      doctest::Contains("gradients independent"));
    CHECK_THROWS_WITH(
      certify_non_forcing(parse_quadruple("1234,2143,3412,4321"), 5, parse_rational_vector({"1", "1", "1", "-1"})),
      doctest::Contains("annihilate"));
  }

  TEST_CASE("auto search picks the smallest working n")
  {
    const auto ev = certify_auto(parse_quadruple("1234,2143,1243,2134"));
    CHECK(ev.verdict == Verdict::KernelRestrictedApplies);
    CHECK(ev.n == 4);
    const auto wide = certify_auto(parse_quadruple("1243,2134,3421,4312"));
    CHECK(wide.verdict == Verdict::CorollaryApplies);
    CHECK(wide.n == 4);
  }

  TEST_CASE("evidence checker catches tampering and survives serialization")
  {
    const auto ev = certify_non_forcing(parse_quadruple("1243,2134,3421,4312"), 5);
    const auto back = evidence_from_json(Json::parse(to_json(ev).dump()));
    CHECK(check_evidence(back).ok);

    auto bad = back;
    bad.alpha[0] += 1;
    CHECK_FALSE(check_evidence(bad).ok);

    auto lie = back;
    lie.full_inertia = Inertia{4, 0, 12};
    CHECK_FALSE(check_evidence(lie).ok);

    auto k = certify_non_forcing(parse_quadruple("1432,2341,3214,4123"), 4);
    REQUIRE(k.witness);
    k.witness->value_minus = Rational(-1);
    CHECK_FALSE(check_evidence(k).ok);
  }

  TEST_CASE("witness from a zero")
  {
    CHECK_THROWS_WITH(witness_from_zero(perms("12,21"), PerturbationPoint::zero(3)), doctest::Contains("x = 0"));
    const PerturbationPoint off(3, parse_rational_vector({"1/8", "0", "0", "0"}));
    CHECK_THROWS_WITH(witness_from_zero(perms("1234"), off), doctest::Contains("h(1234)"));

    // Row-flip invariant B(x): x = (a, b, -a, -b) makes 12 and 21 equally likely.
    const PerturbationPoint sym(3, parse_rational_vector({"1/8", "1/5", "-1/8", "-1/5"}));
    const auto w = witness_from_zero(perms("12,21"), sym);
    CHECK(w.nonuniform_index == 1);
    CHECK_FALSE(w.permuton.is_uniform());
    CHECK(w.densities == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    const PerturbationPoint later(3, parse_rational_vector({"0", "1/5", "0", "-1/5"}));
    CHECK(witness_from_zero(perms("12,21"), later).nonuniform_index == 2);
  }

  TEST_CASE("quadruple parsing")
  {
    CHECK(to_string(parse_quadruple("1234, 2143,3412,4321")) == "1234,2143,3412,4321");
    CHECK_THROWS(parse_quadruple("1234,2143"));
  }
}
