#include "envelope/identical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "envelope/errors.hpp"
#include "envelope/roots.hpp"

namespace envelope {

namespace {

double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

Bound classify(const IdenticalSystem& s, double phi) {
  if (phi != 2.0) return Bound::unknown;
  double f = 0, alpha = 0, g = 0, beta = 0;
  if (s.kinetic.kind() != LawKind::power && s.kinetic.kind() != LawKind::harmonic) return Bound::unknown;
  if (!s.kinetic.as_signed_power(f, alpha) || !s.potential.as_signed_power(g, beta)) return Bound::unknown;
  if (beta < 2.0) return Bound::upper;
  if (beta > 2.0) return Bound::lower;
  return alpha == 2.0 ? Bound::exact : Bound::upper;
}

EtSolution solve_et_impl(const IdenticalSystem& system, double q, double phi,
                         const SolverOptions& opts) {
  system.validate();
  if (!(q > 0.0)) throw InputError("global quantum number must be positive");
  const double c = system.pairs();
  const double sc = std::sqrt(c);
  const auto xs =
      detail::compact_roots(system.n, system.kinetic, c, system.potential, q, sc, opts);

  EtSolution out;
  out.q = q;
  for (double rho : xs) {
    const double p = q / (sc * rho);
    out.roots.push_back({rho, p, system.n * system.kinetic(p) + c * system.potential(rho)});
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const EtRoot& a, const EtRoot& b) { return a.energy < b.energy; });
  if (opts.root_index < 0 || opts.root_index >= out.root_count())
    throw InputError("root index out of range");
  const EtRoot& r = out.roots[static_cast<std::size_t>(opts.root_index)];
  out.energy = r.energy;
  out.rho0 = r.rho0;
  out.p0 = r.p0;
  out.quantization_residual = std::abs(q - sc * r.rho0 * r.p0) / q;
  out.motion_residual = rel_diff(system.n * system.kinetic.d1(r.p0) * r.p0,
                                 c * system.potential.d1(r.rho0) * r.rho0);
  if (out.quantization_residual > opts.residual_tol || out.motion_residual > opts.residual_tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "ET residuals above tolerance (quantization %.3g, motion %.3g)",
                  out.quantization_residual, out.motion_residual);
    throw NonConvergenceError(buf, r.rho0, 0.0, std::max(out.quantization_residual, out.motion_residual));
  }
  out.bound = classify(system, phi);
  return out;
}

}  // namespace

const char* to_string(Bound b) {
  switch (b) {
    case Bound::upper: return "upper";
    case Bound::lower: return "lower";
    case Bound::exact: return "exact";
    case Bound::unknown: return "unknown";
  }
  return "unknown";
}

void IdenticalSystem::validate() const {
  if (n < 2) throw InputError("an identical system needs N >= 2");
  if (dimension < 2) throw InputError("dimension must be at least 2");
  require_kinetic(kinetic);
}

namespace detail {

std::vector<double> compact_roots(double kin, const Law& kinetic, double pot, const Law& potential,
                                  double q, double scale, const SolverOptions& opts) {
  auto motion = [&](double x) {
    const double p = q / (scale * x);
    return kin * kinetic.d1(p) * p - pot * potential.d1(x) * x;
  };
  return roots::find_all_roots(motion, opts.scan_lo, opts.scan_hi, opts.scan_panels, 1e4, 2,
                               opts.root_rel_tol, "the equation of motion");
}

}  // namespace detail

EtSolution solve_et(const IdenticalSystem& system, double q, const SolverOptions& opts) {
  return solve_et_impl(system, q, 2.0, opts);
}

double power_law_energy(int n, double f, double alpha, double g, double beta, double q_phi) {
  if (n < 2) throw InputError("N must be at least 2");
  if (!(alpha > 0.0 && f > 0.0 && g > 0.0) || beta == 0.0)
    throw InputError("power-law energy needs F, G, alpha > 0 and beta != 0");
  if (!(alpha + beta > 0.0)) throw UnsupportedRegimeError("power-law energy requires alpha + beta > 0");
  const double c = 0.5 * n * (n - 1);
  const double inner = std::pow(c * g / alpha, alpha) * std::pow(n * f / std::abs(beta), beta) *
                       std::pow(q_phi / std::sqrt(c), alpha * beta);
  return (beta > 0 ? 1.0 : -1.0) * (alpha + beta) * std::pow(inner, 1.0 / (alpha + beta));
}

DosmIdenticalReport dosm_identical(const IdenticalSystem& system, double lambda,
                                   std::optional<double> nu, const SolverOptions& opts) {
  if (!(lambda > 0.0))
    throw DegenerateOrbitalError("orbital quantum number lambda must be positive");
  DosmIdenticalReport rep;
  rep.lambda = lambda;
  rep.orbital = solve_et_impl(system, lambda, 2.0, opts);
  rep.orbital.bound = Bound::unknown;

  const double c = system.pairs();
  const double p = rep.orbital.p0;
  const double rho = rep.orbital.rho0;
  const Derivs t = system.kinetic.eval(p);
  const Derivs v = system.potential.eval(rho);
  const int n = system.n;

  rep.mu = p / (n * t.d1);
  rep.stiffness = 2.0 * n * p * t.d1 / (rho * rho) + n * p * p * t.d2 / (rho * rho) + c * v.d2;
  if (!(rep.stiffness > 0.0)) throw UnstableOrbitalError("radial stiffness k is not positive");
  rep.slope = n * p * t.d1;
  rep.phi = lambda / rep.slope * std::sqrt(rep.stiffness / (c * rep.mu));
  if (nu) rep.dosm_energy = rep.orbital.energy + std::sqrt(rep.stiffness / rep.mu) * (*nu) / std::sqrt(c);
  return rep;
}

double phi_identical(const IdenticalSystem& system, double lambda, const SolverOptions& opts) {
  return dosm_identical(system, lambda, std::nullopt, opts).phi;
}

IetSolution solve_with_phi(const IdenticalSystem& system, NuLambda numbers, double phi,
                           const SolverOptions& opts) {
  IetSolution out;
  out.numbers = numbers;
  out.phi = phi;
  out.et = solve_et_impl(system, numbers.q(phi), phi, opts);
  return out;
}

IetSolution solve_iet(const IdenticalSystem& system, NuLambda numbers, const SolverOptions& opts) {
  if (!(numbers.lambda > 0.0))
    throw DegenerateOrbitalError("lambda = 0: the orbital-only solution is degenerate");
  return solve_with_phi(system, numbers, phi_identical(system, numbers.lambda, opts), opts);
}

IetSolution solve_iet(const IdenticalSystem& system, const QuantumSpec& spec,
                      const SolverOptions& opts) {
  if (static_cast<int>(spec.internal.size()) != system.n - 1)
    throw InputError("quantum specification must carry N-1 internal modes");
  if (spec.dimension != system.dimension) throw InputError("quantum specification dimension mismatch");
  return solve_iet(system, decompose(spec.dimension, spec.internal), opts);
}

GroundIdenticalResult solve_ground_identical(const IdenticalSystem& system, Statistics statistics,
                                             int degeneracy, bool improved,
                                             const SolverOptions& opts) {
  system.validate();
  auto fill = [&](double phi) {
    return statistics == Statistics::boson ? bgs(system.n, system.dimension, phi)
                                           : fgs_fill(system.n, system.dimension, degeneracy, phi);
  };
  GroundIdenticalResult out;
  if (!improved) {
    out.filling = fill(2.0);
    out.solution = solve_with_phi(system, out.filling.nu_lambda(), 2.0, opts);
    return out;
  }
  std::vector<GroundStateResult> fills;
  std::vector<double> phis;
  double phi = 2.0;
  bool done = false;
  for (int it = 0; it < 20 && !done; ++it) {
    fills.push_back(fill(phi));
    const auto& g = fills.back();
    if (!(g.lambda > 0.0)) throw DegenerateOrbitalError("filling has lambda = 0");
    phis.push_back(phi_identical(system, g.lambda, opts));
    out.fixed_point_iterations = it + 1;
    const std::size_t k = fills.size();
    auto same = [&](std::size_t i, std::size_t j) {
      return fills[i].nu == fills[j].nu && fills[i].lambda == fills[j].lambda;
    };
    if (k >= 2 && same(k - 1, k - 2) && std::abs(phis[k - 1] - phis[k - 2]) < 1e-9) {
      done = true;
    } else if (k >= 3 && same(k - 1, k - 3) && !same(k - 1, k - 2)) {
      const auto e1 = solve_with_phi(system, fills[k - 1].nu_lambda(), phis[k - 1], opts);
      const auto e2 = solve_with_phi(system, fills[k - 2].nu_lambda(), phis[k - 2], opts);
      if (e2.et.energy < e1.et.energy) {
        fills.push_back(fills[k - 2]);
        phis.push_back(phis[k - 2]);
      }
      out.warning = "filling/phi iteration entered a two-cycle; lower-energy filling kept";
      done = true;
    }
    phi = phis.back();
  }
  if (!done) out.warning = "filling/phi iteration hit the iteration cap";
  out.filling = fills.back();
  out.solution = solve_with_phi(system, out.filling.nu_lambda(), phis.back(), opts);
  return out;
}

}  // namespace envelope
