#include <cmath>

#include "doctest.h"
#include "envelope/critical.hpp"
#include "envelope/errors.hpp"
#include "envelope/qnum.hpp"

using namespace envelope;

TEST_CASE("shape roots") {
  CHECK(u_star(gaussian_shape()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u_star(exponential_shape()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(u_star(rational_shape()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("critical coupling values") {
  CHECK(critical_g(gaussian_shape(), 1.0, 2, 1.5) == doctest::Approx(2.25 * std::exp(1.0)).epsilon(1e-12));
  for (int n = 2; n < 30; ++n) {
    const double r = critical_g(gaussian_shape(), 1.0, n + 1, bgs(n + 1, 3, 2.0).q_phi) /
                     critical_g(gaussian_shape(), 1.0, n, bgs(n, 3, 2.0).q_phi);
    CHECK(r == doctest::Approx(n / (n + 1.0)).epsilon(1e-13));
  }
}

TEST_CASE("rescaled shape rescales g") {
  for (double c : {0.1, 10.0}) {
    const Law scaled = Law::weighted_sum({{c, gaussian_shape()}});
    CHECK(critical_g(scaled, 1.3, 3, 3.0) ==
          doctest::Approx(critical_g(gaussian_shape(), 1.3, 3, 3.0) / c).epsilon(1e-12));
  }
}

TEST_CASE("invalid shapes") {
  CHECK_THROWS_AS(u_star(Law::power(1.0, 1.0)), InputError);     // does not vanish
  CHECK_THROWS_AS(u_star(Law::coulomb(1.0)), InputError);        // negative
  CHECK_THROWS_AS(u_star(Law::power(1.0, -3.0)), NoRootError);   // 2v + u v' < 0 everywhere
  CHECK_THROWS_AS(shape_by_name("square"), InputError);
  CHECK_THROWS_AS(critical_g(gaussian_shape(), 0.0, 2, 1.5), InputError);
}
