#include "envelope/critical.hpp"

#include <algorithm>
#include <cmath>

#include "envelope/errors.hpp"
#include "envelope/roots.hpp"

namespace envelope {

namespace {

constexpr double kScanLo = 1e-6;
constexpr double kScanHi = 1e6;

}  // namespace

Law gaussian_shape() { return Law::weighted_sum({{-1.0, Law::gaussian_well(1.0, 1.0)}}); }

Law exponential_shape() { return Law::weighted_sum({{-1.0, Law::exponential_well(1.0, 1.0)}}); }

Law rational_shape() {
  return Law::custom(
      [](double x) {
        const double s = 1.0 + x * x;
        return Derivs{1.0 / (s * s), -4.0 * x / (s * s * s),
                      -4.0 / (s * s * s) + 24.0 * x * x / (s * s * s * s)};
      },
      "1/(1+x^2)^2");
}

Law shape_by_name(const std::string& name) {
  if (name == "gaussian") return gaussian_shape();
  if (name == "exponential") return exponential_shape();
  if (name == "rational") return rational_shape();
  throw InputError("unknown shape '" + name + "' (gaussian, exponential, rational)");
}

void validate_shape(const Law& v) {
  bool positive = false;
  double peak = 0.0;
  for (int i = 0; i <= 120; ++i) {
    const double x = kScanLo * std::pow(kScanHi / kScanLo, i / 120.0);
    const double y = v(x);
    if (y < 0.0) throw InputError("shape function must be non-negative");
    if (y > 0.0) positive = true;
    peak = std::max(peak, y);
  }
  if (!positive) throw InputError("shape function vanishes everywhere on the scan range");
  if (v(kScanHi) > 1e-9 * peak) throw InputError("shape function does not vanish at large x");
}

double u_star(const Law& v) {
  validate_shape(v);
  auto f = [&v](double u) {
    const Derivs d = v.eval(u);
    return 2.0 * d.value + u * d.d1;
  };
  const auto roots = roots::find_all_roots(f, kScanLo, kScanHi, 600, 1.0, 0, 1e-12, "2v + u v'");
  double best = 0.0, best_w = 0.0;
  for (double u : roots) {
    const double w = u * u * v(u);
    if (w > best_w) {
      best_w = w;
      best = u;
    }
  }
  if (!(best_w > 0.0)) throw NoRootError("2v + u v' has no root where v > 0", "");
  return best;
}

double critical_g(const Law& v, double mass, int n, double q) {
  if (!(mass > 0.0)) throw InputError("mass must be positive");
  if (n < 2) throw InputError("N must be at least 2");
  const double u = u_star(v);
  const double nn = n;
  return 1.0 / (u * u * v(u)) * 2.0 / (nn * (nn - 1.0) * (nn - 1.0)) * q * q / mass;
}

}  // namespace envelope
