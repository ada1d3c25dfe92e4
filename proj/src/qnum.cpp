#include "envelope/qnum.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "envelope/errors.hpp"

namespace envelope {

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_dimension(int dimension) {
  if (dimension < 2) throw InputError("dimension must be at least 2");
}

void check_mode(const Mode& m) {
  if (m.n < 0 || m.l < 0) throw InputError("quantum numbers must be non-negative");
}

}  // namespace

NuLambda decompose(int dimension, std::span<const Mode> modes) {
  check_dimension(dimension);
  NuLambda out;
  for (const auto& m : modes) {
    check_mode(m);
    out.nu += m.n + 0.5;
    out.lambda += m.l + 0.5 * (dimension - 2);
  }
  return out;
}

NuLambda decompose_relative(int dimension, Mode relative) {
  return decompose(dimension, std::span<const Mode>(&relative, 1));
}

double global_q(const QuantumSpec& spec, double phi) {
  return decompose(spec.dimension, spec.internal).q(phi);
}

long long level_degeneracy(int l, int dimension, int degeneracy) {
  check_dimension(dimension);
  if (l < 0) throw InputError("orbital momentum must be non-negative");
  if (degeneracy < 1) throw InputError("degeneracy must be at least 1");
  if (dimension == 2) return degeneracy * (l == 0 ? 1 : 2);
  // (2l+D-2)/(D-2) * C(l+D-3, D-3) is an integer; divide last.
  return degeneracy * ((2LL * l + dimension - 2) * binom(l + dimension - 3, dimension - 3) /
                       (dimension - 2));
}

GroundStateResult bgs(int n, int dimension, double phi) {
  check_dimension(dimension);
  if (n < 2) throw InputError("ground state needs at least 2 particles");
  GroundStateResult r;
  r.nu = 0.5 * (n - 1);
  r.lambda = 0.5 * (n - 1) * (dimension - 2);
  r.phi = phi;
  r.q_phi = phi * r.nu + r.lambda;
  r.levels.push_back({0, 0, n});
  return r;
}

GroundStateResult fgs_fill(int n, int dimension, int degeneracy, double phi) {
  check_dimension(dimension);
  if (n < 2) throw InputError("ground state needs at least 2 particles");
  if (degeneracy < 1) throw InputError("degeneracy must be at least 1");
  if (!(phi > 0.0)) throw InputError("phi must be positive");

  // Grow the key bound until the enumerated levels hold all particles.
  struct Level {
    double key;
    int n, l;
  };
  std::vector<Level> levels;
  double bound = 1.0;
  for (;;) {
    levels.clear();
    long long capacity = 0;
    const int n_max = static_cast<int>(std::floor(bound / phi));
    for (int nr = 0; nr <= n_max; ++nr) {
      for (int l = 0; phi * nr + l <= bound; ++l) {
        levels.push_back({phi * nr + l, nr, l});
        capacity += level_degeneracy(l, dimension, degeneracy);
      }
    }
    if (capacity >= n) break;
    bound *= 2.0;
  }
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    return std::tie(a.key, a.n, a.l) < std::tie(b.key, b.n, b.l);
  });

  GroundStateResult r;
  r.statistics = Statistics::fermion;
  r.degeneracy = degeneracy;
  r.phi = phi;
  long long left = n;
  long long sum_n = 0;
  long long sum_l = 0;
  for (const auto& lv : levels) {
    if (left == 0) break;
    const long long occ = std::min(left, level_degeneracy(lv.l, dimension, degeneracy));
    left -= occ;
    sum_n += occ * lv.n;
    sum_l += occ * lv.l;
    r.levels.push_back({lv.n, lv.l, occ});
  }
  r.nu = static_cast<double>(sum_n) + 0.5 * (n - 1);
  r.lambda = static_cast<double>(sum_l) + 0.5 * (n - 1) * (dimension - 2);
  r.q_phi = phi * r.nu + r.lambda;
  return r;
}

double fgs_closed(int n, int dimension, int degeneracy, FgsVariant variant) {
  check_dimension(dimension);
  if (n < 2) throw InputError("ground state needs at least 2 particles");
  if (degeneracy < 1) throw InputError("degeneracy must be at least 1");
  const long long D = dimension;
  const long long d = degeneracy;

  // Number of particles held by the first q complete shells.
  auto filled = [&](long long q) -> long long {
    if (variant == FgsVariant::phi2) return d * binom(q + D - 1, D);
    return d * (2 * q + D - 2) * binom(q + D - 2, D - 1) / D;
  };
  long long q = 0;
  while (filled(q + 1) <= n) ++q;
  const long long r = n - filled(q);

  if (variant == FgsVariant::phi2) {
    return static_cast<double>(d * D * binom(q + D - 1, D + 1) + q * r) + 0.5 * (n - 1) * D;
  }
  const double shells = static_cast<double>(d * (2 * q * D - 2 * D + D * D + 1) *
                                            binom(q + D - 2, D)) /
                        static_cast<double>(D + 1);
  return shells + static_cast<double>(q * r) + 0.5 * (n - 1) * (D - 1);
}

double fgs_approx(int n, int dimension, int degeneracy, double phi) {
  check_dimension(dimension);
  if (n < 1) throw InputError("particle number must be positive");
  const double D = dimension;
  const double factorial = std::tgamma(D + 1.0);
  return D / (D + 1.0) * std::pow(phi * factorial / (2.0 * degeneracy), 1.0 / D) *
         std::pow(static_cast<double>(n), (D + 1.0) / D);
}

}  // namespace envelope
