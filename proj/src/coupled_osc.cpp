#include "envelope/coupled_osc.hpp"

#include <algorithm>
#include <cmath>

#include "envelope/errors.hpp"

namespace envelope {

double NormalModes::omega_a() const { return std::sqrt(a / mu); }
double NormalModes::omega_b() const { return std::sqrt(b / mu); }

NormalModes normal_modes(const OscPair& pair) {
  if (!(pair.mass_a > 0.0 && pair.mass_b > 0.0))
    throw InputError("oscillator masses must be positive");
  const double ratio = std::sqrt(pair.mass_b / pair.mass_a);
  const double ka = ratio * pair.stiffness_a;  // sqrt(mb/ma) k_a
  const double kb = pair.stiffness_b / ratio;  // sqrt(ma/mb) k_b
  const double kc = pair.coupling;

  NormalModes m;
  m.mu = std::sqrt(pair.mass_a * pair.mass_b);
  const double scale = std::max(std::abs(pair.stiffness_a), std::abs(pair.stiffness_b));
  if (std::abs(kc) < 1e-13 * scale || kc == 0.0) {
    m.a = ka;
    m.b = kb;
    return m;
  }
  const double eps = (kb - ka) / kc;
  if (std::abs(eps) < 1e-12) {
    m.a = ka - 0.5 * kc;
    m.b = ka + 0.5 * kc;
    return m;
  }
  // sgn(eps) sqrt(1+eps^2) - eps, written without cancellation.
  const double shift = std::copysign(1.0, eps) / (std::hypot(1.0, eps) + std::abs(eps));
  m.a = ka - 0.5 * kc * shift;
  m.b = kb + 0.5 * kc * shift;
  return m;
}

double level(const NormalModes& modes, int n, int n_prime) {
  if (modes.a < 0.0 || modes.b < 0.0) throw UnstableOrbitalError("unstable normal mode (A or B < 0)");
  if (n < 0 || n_prime < 0) throw InputError("oscillator quantum numbers must be non-negative");
  return modes.omega_a() * (n + 0.5) + modes.omega_b() * (n_prime + 0.5);
}

double level(const OscPair& pair, int n, int n_prime) { return level(normal_modes(pair), n, n_prime); }

}  // namespace envelope
