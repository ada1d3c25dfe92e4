#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "doctest.h"
#include "envelope/coupled_osc.hpp"
#include "envelope/errors.hpp"

using namespace envelope;

TEST_CASE("decoupled and degenerate branches") {
  const auto m = normal_modes({1.0, 1.0, 1.0, 1.0, 0.0});
  CHECK(m.a == 1.0);
  CHECK(m.b == 1.0);
  CHECK(m.mu == 1.0);
  CHECK(level(m, 0, 0) == doctest::Approx(1.0));

  // eps = sqrt(1/4)*8 - sqrt(4)*2 = 0
  const auto e0 = normal_modes({1.0, 4.0, 2.0, 8.0, 1.0});
  CHECK(e0.a == doctest::Approx(3.5));
  CHECK(e0.b == doctest::Approx(4.5));

  const auto d = normal_modes({2.0, 0.5, 3.0, 1.0, 0.0});
  CHECK(d.omega_a() == doctest::Approx(std::sqrt(3.0 / 2.0)));
  CHECK(d.omega_b() == doctest::Approx(std::sqrt(1.0 / 0.5)));
}

TEST_CASE("small coupling joins the decoupled branch") {
  const auto base = normal_modes({1.3, 0.7, 2.0, 3.0, 0.0});
  for (double kc : {1e-9, -1e-9}) {
    const auto m = normal_modes({1.3, 0.7, 2.0, 3.0, kc});
    CHECK(std::abs(m.a - base.a) < 1e-6);
    CHECK(std::abs(m.b - base.b) < 1e-6);
  }
}

TEST_CASE("relabeling symmetry") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double ma = u(rng), mb = u(rng), ka = u(rng), kb = u(rng);
    const double kc = 0.9 * std::sqrt(ka * kb) * (u(rng) - 1.6) / 1.4;
    const int n = i % 4, np = (i / 4) % 3;
    CHECK(level(OscPair{ma, mb, ka, kb, kc}, n, np) ==
          doctest::Approx(level(OscPair{mb, ma, kb, ka, kc}, np, n)).epsilon(1e-12));
  }
}

TEST_CASE("frequencies match the generalized eigenproblem") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double ma = 0.1 + 5 * u(rng), mb = 0.1 + 5 * u(rng);
    const double ka = 0.1 + 5 * u(rng), kb = 0.1 + 5 * u(rng);
    const double kc = (2 * u(rng) - 1) * 1.9 * std::sqrt(ka * kb);
    Eigen::Matrix2d K, M;
    K << ka, kc / 2, kc / 2, kb;
    M << ma, 0, 0, mb;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(K, M);
    const auto m = normal_modes({ma, mb, ka, kb, kc});
    const double lo = std::min(m.omega_a(), m.omega_b()), hi = std::max(m.omega_a(), m.omega_b());
    CHECK(lo == doctest::Approx(std::sqrt(es.eigenvalues()(0))).epsilon(1e-10));
    CHECK(hi == doctest::Approx(std::sqrt(es.eigenvalues()(1))).epsilon(1e-10));
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(normal_modes({0.0, 1.0, 1.0, 1.0, 0.0}), InputError);
  CHECK_THROWS_AS(level(OscPair{1.0, 1.0, 1.0, 1.0, 3.0}, 0, 0), UnstableOrbitalError);
}
