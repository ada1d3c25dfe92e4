#include <cmath>
#include <random>

#include "doctest.h"
#include "envelope/errors.hpp"
#include "envelope/identical.hpp"

using namespace envelope;

namespace {

IdenticalSystem three(double beta) {
  return {3, 3, Law::power(0.5, 2.0), Law::signed_power(0.5, beta)};
}

}  // namespace

TEST_CASE("compact set for three bosons") {
  CHECK(solve_et(three(2.0), 3.0).energy == doctest::Approx(5.19615).epsilon(1e-6));
  CHECK(solve_et(three(1.0), 3.0).energy == doctest::Approx(4.08852).epsilon(1e-6));
  CHECK(solve_et(three(-1.0), 3.0).energy == doctest::Approx(-0.125).epsilon(1e-6));

  const auto s = solve_et(three(1.0), 3.0);
  CHECK(s.quantization_residual < 1e-9);
  CHECK(s.motion_residual < 1e-9);
  CHECK(s.energy == doctest::Approx(3 * 0.5 * s.p0 * s.p0 + 3 * 0.5 * s.rho0).epsilon(1e-14));
  CHECK(s.bound == Bound::upper);
  CHECK(solve_et(three(3.0), 3.0).bound == Bound::lower);
  CHECK(solve_et(three(2.0), 3.0).bound == Bound::exact);
}

TEST_CASE("closed form agrees with the numerical solver") {
  CHECK(power_law_energy(3, 0.5, 2.0, 0.5, 2.0, 3.0) == doctest::Approx(5.19615).epsilon(1e-6));
  CHECK(power_law_energy(3, 0.5, 2.0, 0.5, 3.0, 3.0) == doctest::Approx(5.68394).epsilon(1e-6));
  CHECK_THROWS_AS(power_law_energy(3, 0.5, 1.0, 0.5, -1.0, 3.0), UnsupportedRegimeError);
  for (double alpha : {1.0, 2.0})
    for (double beta : {-1.0, -0.5, 0.1, 0.5, 1.0, 2.0, 3.0}) {
      if (alpha + beta <= 0.0) continue;
      for (int n = 2; n <= 10; ++n) {
        const IdenticalSystem sys{n, 3, Law::power(0.8, alpha), Law::signed_power(1.3, beta)};
        const double q = 1.5 * (n - 1);
        const double numeric = solve_et(sys, q).energy;
        const double closed = power_law_energy(n, 0.8, alpha, 1.3, beta, q);
        CHECK(std::abs(numeric - closed) <= 1e-10 * std::abs(closed));
      }
    }
}

TEST_CASE("exchange symmetry for three bodies") {
  for (double beta : {0.5, 1.0, 3.0}) {
    const double e1 = power_law_energy(3, 0.7, 2.0, 1.1, beta, 3.0);
    const double e2 = power_law_energy(3, 1.1, beta, 0.7, 2.0, 3.0);
    CHECK(e1 == doctest::Approx(e2).epsilon(1e-12));
    const IdenticalSystem a{3, 3, Law::power(0.7, 2.0), Law::signed_power(1.1, beta)};
    const IdenticalSystem b{3, 3, Law::power(1.1, beta), Law::signed_power(0.7, 2.0)};
    const NuLambda ground{1.0, 1.0};
    CHECK(std::abs(solve_iet(a, ground).et.energy - solve_iet(b, ground).et.energy) <=
          1e-10 * std::abs(solve_iet(a, ground).et.energy));
  }
}

TEST_CASE("dominantly orbital state quantities") {
  const double phi = phi_identical({3, 3, Law::power(0.5, 2.0), Law::signed_power(0.5, 1.0)}, 1.0);
  CHECK(phi == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
  CHECK(phi_identical(three(2.0), 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(phi_identical(three(-1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(phi_identical({3, 3, Law::power(1.0, 1.0), Law::harmonic(1.0)}, 1.0) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));

  // T = p^2/(2m): mu = m/N
  const double m = 2.5;
  const auto rep = dosm_identical({4, 3, Law::power(0.5 / m, 2.0), Law::signed_power(1.0, 1.0)}, 1.5);
  CHECK(rep.mu == doctest::Approx(m / 4).epsilon(1e-12));

  // Harmonic oscillator: orbital energy plus radial quanta is exact.
  const auto ho = dosm_identical(three(2.0), 1.0, 1.0);
  REQUIRE(ho.dosm_energy);
  CHECK(*ho.dosm_energy == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("phi = 2 recovers the plain solution") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 6;
    const IdenticalSystem sys{n, 3, Law::power(u(rng), 1.0 + u(rng) / 2.0),
                              Law::signed_power(u(rng), 0.3 + u(rng))};
    const NuLambda nl{0.5 * (n - 1) + i % 3, 0.5 * (n - 1) + i % 2};
    CHECK(solve_with_phi(sys, nl, 2.0).et.energy ==
          doctest::Approx(solve_et(sys, nl.q(2.0)).energy).epsilon(1e-13));
  }
}

TEST_CASE("improved solution and error paths") {
  const NuLambda ground{1.0, 1.0};
  CHECK(solve_iet(three(1.0), ground).et.energy == doctest::Approx(3.84130).epsilon(5e-6));
  CHECK(solve_iet(three(-1.0), ground).et.energy == doctest::Approx(-0.28125).epsilon(5e-6));
  CHECK(solve_iet(three(3.0), ground).et.energy == doctest::Approx(6.22479).epsilon(5e-6));
  CHECK(solve_iet(three(3.0), ground).et.bound == Bound::unknown);

  const IdenticalSystem flat{3, 2, Law::power(0.5, 2.0), Law::harmonic(1.0)};
  CHECK_THROWS_AS(solve_iet(flat, QuantumSpec{2, {{0, 0}, {0, 0}}, {}}), DegenerateOrbitalError);
  CHECK_THROWS_AS(solve_iet(three(1.0), QuantumSpec{3, {{0, 0}}, {}}), InputError);
}

TEST_CASE("several extrema are all reported") {
  // Attractive well plus a linear wall gives two stationary points.
  const Law v = make_weighted_sum({{1.0, Law::gaussian_well(5.0, 1.0)}, {0.02, Law::power(1.0, 1.0)}});
  const IdenticalSystem sys{2, 3, Law::power(0.5, 2.0), v};
  const auto s = solve_et(sys, 1.5);
  CHECK(s.root_count() >= 2);
  for (std::size_t i = 1; i < s.roots.size(); ++i) CHECK(s.roots[i - 1].energy <= s.roots[i].energy);
  SolverOptions pick;
  pick.root_index = 1;
  CHECK(solve_et(sys, 1.5, pick).energy == doctest::Approx(s.roots[1].energy));
}

TEST_CASE("filled ground state with phi iteration") {
  const IdenticalSystem sys{4, 3, Law::power(0.5, 2.0), Law::signed_power(0.5, 1.0)};
  const auto et = solve_ground_identical(sys, Statistics::fermion, 2, false);
  CHECK(et.solution.et.q == doctest::Approx(6.5));
  const auto iet = solve_ground_identical(sys, Statistics::fermion, 2, true);
  CHECK(iet.solution.phi == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(iet.fixed_point_iterations >= 2);
}
