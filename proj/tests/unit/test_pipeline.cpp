#include "qrforce/json_io.hpp"
#include "qrforce/pipeline.hpp"
#include "qrforce/workers.hpp"

#include <doctest.h>

#include <atomic>
#include <cstdlib>

using namespace qrf;

namespace {

Json without_timing(Json j)
{
  j.erase("timing");
  return j;
}

} // namespace

TEST_SUITE("cli-report")
{
  TEST_CASE("restricted report")
  {
    ReproduceOptions opts;
    opts.only = {"enumeration"};
    const auto r = cmd_reproduce(opts);
    CHECK(r.ok());
    CHECK(r.items.size() == 2 + 12 + 7);
    for (const auto &i : r.items)
      CHECK(i.section == "enumeration");
    opts.only = {"nonsense"};
    CHECK_THROWS(cmd_reproduce(opts));
  }

  TEST_CASE("reports are deterministic apart from timing")
  {
    ReproduceOptions opts;
    opts.only = {"certificates", "trichotomy"};
    const auto a = cmd_reproduce(opts).to_json();
    opts.workers = 1;
    const auto b = cmd_reproduce(opts).to_json();
    CHECK(without_timing(a).dump() == without_timing(b).dump());
    CHECK(a.contains("timing"));
  }

  TEST_CASE("every item carries computed and expected values")
  {
    ReproduceOptions opts;
    opts.only = {"appendix", "certificates"};
    const auto j = cmd_reproduce(opts).to_json();
    for (const auto &item : j.at("items")) {
      CHECK(item.contains("computed"));
      CHECK(item.contains("expected"));
      CHECK(item.at("pass").is_boolean());
    }
  }

  TEST_CASE("JSON round trips")
  {
    const Rational q(-7, 3);
    CHECK(rational_from_json(to_json(q)) == q);
    CHECK(to_json(Rational(5)) == "5");
    RatMatrix m(2, 2);
    m(0, 1) = Rational(1, 2);
    m(1, 0) = Rational(-3);
    CHECK(matrix_from_json(to_json(m)) == m);
    CHECK(permutation_from_json(to_json(parse_permutation("2413"))) == parse_permutation("2413"));
    CHECK(permutation_from_json(Json::parse("[2,4,1,3]")) == parse_permutation("2413"));
    const Inertia in{3, 1, 2};
    CHECK(inertia_from_json(to_json(in)) == in);

    const auto p = StepPermuton::uniform(3);
    CHECK(permuton_from_json(to_json(p)).matrix() == p.matrix());
    const auto mix = permuton_from_json(Json::parse(R"({"perms": ["12", "21"], "weights": ["1/3", "2/3"]})"));
    CHECK(mix.matrix()(0, 1) == Rational(2, 3));
    CHECK_THROWS(permuton_from_json(Json::parse(R"({"k": 3, "A": [["1"]]})")));
  }

  TEST_CASE("worker pool")
  {
    std::atomic<int> sum{0};
    parallel_for(100, [&](std::size_t i) { sum += static_cast<int>(i); }, 3);
    CHECK(sum == 4950);
    setenv("QRF_WORKERS", "2", 1);
    CHECK(worker_count() == 2);
    unsetenv("QRF_WORKERS");
    CHECK(worker_count() >= 1);
  }
}
