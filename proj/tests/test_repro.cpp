#include <cmath>

#include "doctest.h"
#include "envelope/errors.hpp"
#include "envelope/repro.hpp"

using namespace envelope;

TEST_CASE("fixture parsing") {
  const auto rows = repro::parse_fixtures("# comment\n\n2 a=1 b=x  # trailing\n3 c=2.5\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].table == 2);
  CHECK(rows[0].num("a") == 1.0);
  CHECK(rows[0].str("b") == "x");
  CHECK(rows[1].num("c") == 2.5);
  CHECK_THROWS_AS(rows[1].num("missing"), InputError);
  CHECK_THROWS_AS(repro::parse_fixtures("x a=1"), InputError);
  CHECK_THROWS_AS(repro::parse_fixtures("1 novalue"), InputError);
}

TEST_CASE("built-in fixtures cover every table") {
  CHECK(repro::fixtures_for(1).size() == 7);
  CHECK(repro::fixtures_for(2).size() == 6);
  CHECK(repro::fixtures_for(3).size() == 10);
  CHECK(repro::fixtures_for(4).size() == 7);
  for (const auto& r : repro::builtin_fixtures()) {
    CHECK(r.has("exact"));
    CHECK(r.has("et"));
    CHECK(r.has("iet"));
  }
}

TEST_CASE("builders") {
  // kappa = 1 makes the three particles identical
  const IdenticalSystem same{3, 3, Law::power(1.0, 1.0), Law::harmonic(1.0)};
  CHECK(solve_et_np1(repro::build_uroh(1.0), 1.5, 1.5).energy ==
        doctest::Approx(solve_et(same, 3.0).energy).epsilon(1e-8));

  // m = 1 is the identical case
  const auto p = repro::build_power(1.0, 1.0);
  CHECK(solve_et_np1(p, 1.5, 1.5).energy ==
        doctest::Approx(solve_et(repro::build_power_identical(1.0), 3.0).energy).epsilon(1e-8));
  CHECK_THROWS_AS(repro::build_uroh(0.0), InputError);
  CHECK_THROWS_AS(repro::build_power(1.0, 0.0), InputError);
}

TEST_CASE("table 1 passes and percentages agree") {
  const auto rep = repro::run_table(1);
  REQUIRE(rep.rows.size() == 7);
  CHECK(rep.pass());
  for (const auto& row : rep.rows)
    for (const auto& c : row.checks) {
      INFO(row.label << " " << c.name);
      CHECK(c.pass);
    }
}

TEST_CASE("reports are deterministic under parallel execution") {
  const auto a = repro::run_table(2, true);
  const auto b = repro::run_table(2, false);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    REQUIRE(a.rows[i].values.size() == b.rows[i].values.size());
    for (std::size_t k = 0; k < a.rows[i].values.size(); ++k)
      CHECK(a.rows[i].values[k].second == b.rows[i].values[k].second);
  }
}

TEST_CASE("percent error") {
  CHECK(repro::percent_error(-0.125, -0.26675) == doctest::Approx(53.14).epsilon(1e-3));
  CHECK_THROWS_AS(repro::run_table(5), InputError);
}
