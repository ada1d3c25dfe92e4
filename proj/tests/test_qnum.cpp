#include <cmath>
#include <random>

#include "doctest.h"
#include "envelope/errors.hpp"
#include "envelope/qnum.hpp"

using namespace envelope;

TEST_CASE("global quantum number") {
  const std::vector<Mode> ground{{0, 0}, {0, 0}};
  CHECK(global_q({3, ground, {}}, 2.0) == doctest::Approx(3.0));
  CHECK(global_q({3, {{1, 0}, {0, 2}}, {}}, 2.0) == doctest::Approx(7.0));
  CHECK(global_q({3, ground, {}}, 1.76) == doctest::Approx(2.76));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> q(0, 6), dims(2, 5), count(1, 6);
  for (int i = 0; i < 1000; ++i) {
    QuantumSpec s;
    s.dimension = dims(rng);
    double expected = 0.0;
    for (int k = count(rng); k > 0; --k) {
      const Mode m{q(rng), q(rng)};
      s.internal.push_back(m);
      expected += 2 * m.n + m.l + 0.5 * s.dimension;
    }
    CHECK(global_q(s, 2.0) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("relative mode decomposition") {
  const NuLambda r = decompose_relative(3, Mode{1, 2});
  CHECK(r.nu == 1.5);
  CHECK(r.lambda == 2.5);
}

TEST_CASE("level degeneracy") {
  CHECK(level_degeneracy(2, 3, 1) == 5);
  CHECK(level_degeneracy(0, 2, 2) == 2);
  CHECK(level_degeneracy(3, 2, 1) == 2);
  CHECK(level_degeneracy(1, 4, 1) == 4);
  CHECK(level_degeneracy(2, 4, 1) == 9);
  for (int l = 0; l < 10; ++l) CHECK(level_degeneracy(l, 3, 2) == 2 * (2 * l + 1));
}

TEST_CASE("bosonic ground state") {
  CHECK(bgs(3, 3, 2.0).q_phi == doctest::Approx(3.0));
  CHECK(bgs(3, 3, std::sqrt(3.0)).q_phi == doctest::Approx(1.0 + std::sqrt(3.0)));
  CHECK(bgs(10, 3, 2.0).q_phi == doctest::Approx(13.5));
  CHECK_THROWS_AS(bgs(1, 3, 2.0), InputError);
}

TEST_CASE("fermionic filling") {
  CHECK(fgs_fill(3, 3, 2, 2.0).q_phi == doctest::Approx(4.0));
  CHECK(fgs_fill(2, 3, 2, 2.0).q_phi == doctest::Approx(1.5));
  // two in (0,0), two in (0,1): sum of quanta 2 on top of (N-1)D/2 = 4.5
  CHECK(fgs_fill(4, 3, 2, 2.0).q_phi == doctest::Approx(6.5));
  CHECK(fgs_closed(5, 3, 2, FgsVariant::phi2) == doctest::Approx(9.0));

  const auto g = fgs_fill(10, 3, 2, 2.0);
  long long total = 0;
  for (const auto& l : g.levels) total += l.occupancy;
  CHECK(total == 10);
  CHECK(g.q_phi == doctest::Approx(2.0 * g.nu + g.lambda));
}

TEST_CASE("filling is monotone in N and phi") {
  for (int dim : {2, 3}) {
    double prev = 0.0;
    for (int n = 2; n < 60; ++n) {
      const double q = fgs_fill(n, dim, 2, 1.7).q_phi;
      CHECK(q >= prev);
      prev = q;
    }
    for (int n : {5, 17, 40}) {
      double last = 0.0;
      for (double phi : {0.8, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        const double q = fgs_fill(n, dim, 2, phi).q_phi;
        CHECK(q >= last);
        last = q;
      }
    }
  }
}

TEST_CASE("asymptotic filling improves with N") {
  const double d10 = std::abs(fgs_approx(10, 2, 2, 1.0) / fgs_fill(10, 2, 2, 1.0).q_phi - 1.0);
  const double d100 = std::abs(fgs_approx(100, 2, 2, 1.0) / fgs_fill(100, 2, 2, 1.0).q_phi - 1.0);
  CHECK(d100 < d10);
  CHECK(std::isfinite(fgs_approx(10, 3, 2, 2.0)));
}
