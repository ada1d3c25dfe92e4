#include "envelope/nplus1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "envelope/errors.hpp"
#include "envelope/identical.hpp"

namespace envelope {

namespace {

// Orbital/radial state with the momenta eliminated.
struct Point {
  double p_a, r, P0, R, pp, r0;
};

Point make_point(const NPlusOneSystem& s, double q_a, double q_b, double r, double R) {
  Point pt;
  const double na = s.n_a;
  pt.r = r;
  pt.R = R;
  pt.p_a = q_a / (std::sqrt(s.pairs()) * r);
  pt.P0 = q_b / R;
  pt.pp = std::sqrt(pt.p_a * pt.p_a + pt.P0 * pt.P0 / (na * na));
  pt.r0 = std::sqrt(R * R + (na - 1.0) / (2.0 * na) * r * r);
  return pt;
}

struct Residual {
  double raw[2];
  double scale[2];
  double rel(int i) const { return scale[i] == 0.0 ? 0.0 : std::abs(raw[i]) / scale[i]; }
};

Residual motion_residual(const NPlusOneSystem& s, const Point& pt) {
  const double na = s.n_a;
  const double ta1 = s.kinetic_a.d1(pt.pp);
  const double tb1 = s.kinetic_b.d1(pt.P0);
  const double vaa1 = s.potential_aa.d1(pt.r);
  const double vab1 = s.potential_ab.d1(pt.r0);

  const double a1 = na * ta1 * pt.p_a * pt.p_a / pt.pp;
  const double a2 = s.pairs() * vaa1 * pt.r;
  const double a3 = 0.5 * (na - 1.0) * vab1 * pt.r * pt.r / pt.r0;
  const double b1 = ta1 * pt.P0 * pt.P0 / (na * pt.pp);
  const double b2 = tb1 * pt.P0;
  const double b3 = na * vab1 * pt.R * pt.R / pt.r0;

  Residual res;
  res.raw[0] = a1 - a2 - a3;
  res.raw[1] = b1 + b2 - b3;
  res.scale[0] = std::abs(a1) + std::abs(a2) + std::abs(a3);
  res.scale[1] = std::abs(b1) + std::abs(b2) + std::abs(b3);
  return res;
}

double energy_at(const NPlusOneSystem& s, const Point& pt) {
  const double na = s.n_a;
  return na * s.kinetic_a(pt.pp) + s.kinetic_b(pt.P0) + s.pairs() * s.potential_aa(pt.r) +
         na * s.potential_ab(pt.r0);
}

constexpr double kLogBound = 27.6;  // |ln x| <= ln(1e12)

struct NewtonRun {
  bool converged = false;
  double u = 0.0, v = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

NewtonRun newton(const NPlusOneSystem& s, double q_a, double q_b, double u, double v,
                 const Np1Options& opts) {
  using Vec = std::array<double, 2>;
  auto eval = [&](double uu, double vv, Vec& g) -> bool {
    if (std::abs(uu) > kLogBound || std::abs(vv) > kLogBound) return false;
    try {
      const Residual r = motion_residual(s, make_point(s, q_a, q_b, std::exp(uu), std::exp(vv)));
      for (int i = 0; i < 2; ++i) g[i] = r.scale[i] == 0.0 ? r.raw[i] : r.raw[i] / r.scale[i];
      return std::isfinite(g[0]) && std::isfinite(g[1]);
    } catch (const DomainError&) {
      return false;
    }
  };
  auto norm2 = [](const Vec& g) { return std::hypot(g[0], g[1]); };

  NewtonRun run;
  run.u = u;
  run.v = v;
  Vec g{};
  if (!eval(u, v, g)) return run;
  const double h = opts.fd_step;
  for (int it = 0; it < opts.max_iterations; ++it) {
    run.iterations = it;
    run.residual = std::max(std::abs(g[0]), std::abs(g[1]));
    if (run.residual < opts.newton_tol) {
      run.converged = true;
      return run;
    }
    Vec gp{}, gm{}, hp{}, hm{};
    if (!eval(run.u + h, run.v, gp) || !eval(run.u - h, run.v, gm) ||
        !eval(run.u, run.v + h, hp) || !eval(run.u, run.v - h, hm))
      return run;
    const double j00 = (gp[0] - gm[0]) / (2 * h), j10 = (gp[1] - gm[1]) / (2 * h);
    const double j01 = (hp[0] - hm[0]) / (2 * h), j11 = (hp[1] - hm[1]) / (2 * h);
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || det == 0.0) return run;
    double du = (-g[0] * j11 + g[1] * j01) / det;
    double dv = (-g[1] * j00 + g[0] * j10) / det;
    const double len = std::hypot(du, dv);
    if (len > 3.0) {
      du *= 3.0 / len;
      dv *= 3.0 / len;
    }
    bool accepted = false;
    double t = 1.0;
    for (int k = 0; k <= opts.max_halvings; ++k, t *= 0.5) {
      Vec trial{};
      if (eval(run.u + t * du, run.v + t * dv, trial) && norm2(trial) < norm2(g)) {
        run.u += t * du;
        run.v += t * dv;
        g = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) return run;
  }
  run.residual = std::max(std::abs(g[0]), std::abs(g[1]));
  run.converged = run.residual < opts.newton_tol;
  run.iterations = opts.max_iterations;
  return run;
}

// Lowest-energy root of a decoupled one-scale problem, if any.
std::optional<double> decoupled_seed(double kin, const Law& kinetic, double pot, const Law& potential,
                                     double q, double scale) {
  try {
    SolverOptions so;
    const auto xs = detail::compact_roots(kin, kinetic, pot, potential, q, scale, so);
    std::optional<double> best;
    double best_e = std::numeric_limits<double>::infinity();
    for (double x : xs) {
      const double e = kin * kinetic(q / (scale * x)) + pot * potential(x);
      if (e < best_e) {
        best_e = e;
        best = x;
      }
    }
    return best;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Coarse log-grid minimum of the energy surface; last-resort seed.
std::array<double, 2> grid_seed(const NPlusOneSystem& s, double q_a, double q_b) {
  std::array<double, 2> best{1.0, 1.0};
  double best_e = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 48; ++i) {
    for (int j = 0; j <= 48; ++j) {
      const double r = std::pow(10.0, -6.0 + 0.25 * i);
      const double R = std::pow(10.0, -6.0 + 0.25 * j);
      try {
        const double e = np1_energy_surface(s, q_a, q_b, r, R);
        if (e < best_e) {
          best_e = e;
          best = {r, R};
        }
      } catch (const DomainError&) {
      }
    }
  }
  return best;
}

Np1Solution finish(const NPlusOneSystem& s, double q_a, double q_b, double r, double R,
                   const Np1Options& opts) {
  const Point pt = make_point(s, q_a, q_b, r, R);
  Np1Solution out;
  out.q_a = q_a;
  out.q_b = q_b;
  out.r_aa = r;
  out.R0 = R;
  out.p_a = pt.p_a;
  out.P0 = pt.P0;
  out.p_a_prime = pt.pp;
  out.r0_prime = pt.r0;
  out.energy = energy_at(s, pt);
  out.quantization_residual_a = std::abs(q_a - std::sqrt(s.pairs()) * pt.p_a * r) / q_a;
  out.quantization_residual_b = std::abs(q_b - pt.P0 * R) / q_b;
  const Residual res = motion_residual(s, pt);
  out.motion_residual_a = res.rel(0);
  out.motion_residual_b = res.rel(1);
  const double worst = std::max({out.quantization_residual_a, out.quantization_residual_b,
                                 out.motion_residual_a, out.motion_residual_b});
  if (!(worst <= opts.residual_tol)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "N_a+1 residuals above tolerance (%.3g)", worst);
    throw NonConvergenceError(buf, r, R, worst);
  }
  return out;
}

}  // namespace

void NPlusOneSystem::validate() const {
  if (n_a < 2) throw InputError("an N_a+1 system needs N_a >= 2");
  if (dimension < 2) throw InputError("dimension must be at least 2");
  require_kinetic(kinetic_a);
  require_kinetic(kinetic_b);
}

Np1Numbers decompose_np1(const QuantumSpec& spec) {
  if (!spec.relative) throw InputError("N_a+1 quantum specification needs a relative mode");
  const NuLambda a = decompose(spec.dimension, spec.internal);
  const NuLambda b = decompose_relative(spec.dimension, *spec.relative);
  return {a.nu, a.lambda, b.nu, b.lambda};
}

double np1_energy_surface(const NPlusOneSystem& system, double q_a, double q_b, double r_aa,
                          double R0) {
  return energy_at(system, make_point(system, q_a, q_b, r_aa, R0));
}

Np1Solution solve_et_np1(const NPlusOneSystem& system, double q_a, double q_b,
                         const Np1Options& opts) {
  system.validate();
  if (!(q_a > 0.0 && q_b > 0.0)) throw InputError("global quantum numbers must be positive");

  const double na = system.n_a;
  auto r_seed = decoupled_seed(na, system.kinetic_a, system.pairs(), system.potential_aa, q_a,
                               std::sqrt(system.pairs()));
  auto R_seed = decoupled_seed(1.0, system.kinetic_b, na, system.potential_ab, q_b, 1.0);
  std::array<double, 2> base;
  if (r_seed && R_seed) {
    base = {*r_seed, *R_seed};
  } else if (r_seed || R_seed) {
    const double x = r_seed ? *r_seed : *R_seed;
    base = {x, x};
  } else {
    base = grid_seed(system, q_a, q_b);
  }

  struct Found {
    double r, R, e;
    int iterations;
  };
  std::vector<Found> found;
  int converged_starts = 0;
  NewtonRun last;
  auto attempt = [&](double r0, double R0) {
    const NewtonRun run = newton(system, q_a, q_b, std::log(r0), std::log(R0), opts);
    if (!run.converged) {
      if (run.residual < last.residual || !std::isfinite(last.residual)) last = run;
      return;
    }
    ++converged_starts;
    const double r = std::exp(run.u), R = std::exp(run.v);
    for (const auto& f : found)
      if (std::abs(f.r - r) <= 1e-6 * r && std::abs(f.R - R) <= 1e-6 * R) return;
    found.push_back({r, R, np1_energy_surface(system, q_a, q_b, r, R), run.iterations});
  };

  const double factors[] = {1.0, 0.1, 10.0};
  for (double fr : factors) {
    for (double fR : factors) {
      if (!opts.multistart && (fr != 1.0 || fR != 1.0)) continue;
      attempt(base[0] * fr, base[1] * fR);
    }
  }
  if (found.empty()) {
    const auto g = grid_seed(system, q_a, q_b);
    attempt(g[0], g[1]);
  }
  if (found.empty()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "damped Newton did not converge (last residual %.3g)",
                  last.residual);
    throw NonConvergenceError(buf, std::exp(last.u), std::exp(last.v), last.residual);
  }
  const auto best = std::min_element(found.begin(), found.end(),
                                     [](const Found& a, const Found& b) { return a.e < b.e; });
  Np1Solution out = finish(system, q_a, q_b, best->r, best->R, opts);
  out.iterations = best->iterations;
  out.converged_starts = converged_starts;
  out.distinct_roots = static_cast<int>(found.size());
  return out;
}

Np1QuadraticForm np1_quadratic_form(const NPlusOneSystem& system, double p_a, double r_aa,
                                    double P0, double R0) {
  const double na = system.n_a;
  const double c = system.pairs();
  const double pt = p_a, r = r_aa, P = P0, R = R0;
  const double pp = std::sqrt(pt * pt + P * P / (na * na));
  const double r0 = std::sqrt(R * R + (na - 1.0) / (2.0 * na) * r * r);

  const Derivs ta = system.kinetic_a.eval(pp);
  const Derivs tb = system.kinetic_b.eval(P);
  const Derivs vaa = system.potential_aa.eval(r);
  const Derivs vab = system.potential_ab.eval(r0);

  const double pt2 = pt * pt, pp2 = pp * pp, pp3 = pp2 * pp, P2 = P * P;
  const double r2 = r * r, R2 = R * R, r02 = r0 * r0, r03 = r02 * r0;

  Np1QuadraticForm f;
  f.mu_a = pp / (na * ta.d1);
  f.mu_b = 1.0 / (ta.d1 / (na * pp) + tb.d1 / P);
  f.k_a = na * ta.d2 * pt2 * pt2 / (r2 * pp2) + na * ta.d1 * pt2 / r2 * (3.0 / pp - pt2 / pp3) +
          c * vaa.d2 + (na - 1.0) * (na - 1.0) * r2 / (4.0 * na * r02) * vab.d2 +
          0.5 * (na - 1.0) * (1.0 / r0 - (na - 1.0) * r2 / (2.0 * na * r03)) * vab.d1;
  f.k_b = ta.d2 * P2 * P2 / (na * na * na * R2 * pp2) + tb.d2 * P2 / R2 +
          ta.d1 * P2 / (na * R2) * (3.0 / pp - P2 / (na * na * pp3)) + 2.0 * tb.d1 * P / R2 +
          na * R2 / r02 * vab.d2 + na * (1.0 / r0 - R2 / r03) * vab.d1;
  f.k_c = 2.0 * pt2 * P2 / (na * pp2 * r * R) * (ta.d2 - ta.d1 / pp) +
          (na - 1.0) * r * R / r02 * (vab.d2 - vab.d1 / r0);
  f.slope_a = ta.d1 * na * pt2 / pp;
  f.slope_b = ta.d1 * P2 / (na * pp) + tb.d1 * P;
  return f;
}

DosmNp1Report dosm_np1(const NPlusOneSystem& system, double lambda_a, double lambda_b,
                       std::optional<double> nu_a, std::optional<double> nu_b,
                       const Np1Options& opts) {
  if (!(lambda_a > 0.0 && lambda_b > 0.0))
    throw DegenerateOrbitalError("orbital quantum numbers lambda_a and lambda_b must be positive");
  DosmNp1Report rep;
  rep.lambda_a = lambda_a;
  rep.lambda_b = lambda_b;
  rep.orbital = solve_et_np1(system, lambda_a, lambda_b, opts);
  const auto& o = rep.orbital;
  rep.form = np1_quadratic_form(system, o.p_a, o.r_aa, o.P0, o.R0);
  if (!(rep.form.mu_a > 0.0 && rep.form.mu_b > 0.0))
    throw UnstableOrbitalError("non-positive effective radial mass");
  rep.modes = normal_modes(
      {rep.form.mu_a, rep.form.mu_b, rep.form.k_a, rep.form.k_b, rep.form.k_c});
  if (!(rep.modes.a > 0.0 && rep.modes.b > 0.0))
    throw UnstableOrbitalError("unstable radial normal modes (A or B not positive)");

  const double c = system.pairs();
  const double wa = std::sqrt(rep.modes.a / (c * rep.modes.mu));
  const double wb = std::sqrt(rep.modes.b / rep.modes.mu);
  rep.phi_a = lambda_a / rep.form.slope_a * wa;
  rep.phi_b = lambda_b / rep.form.slope_b * wb;
  if (nu_a && nu_b) rep.dosm_energy = o.energy + wa * (*nu_a) + wb * (*nu_b);
  return rep;
}

PhiPair phi_pair(const NPlusOneSystem& system, double lambda_a, double lambda_b,
                 const Np1Options& opts) {
  const auto rep = dosm_np1(system, lambda_a, lambda_b, std::nullopt, std::nullopt, opts);
  return {rep.phi_a, rep.phi_b};
}

IetNp1Solution solve_np1_with_phi(const NPlusOneSystem& system, const Np1Numbers& numbers,
                                  PhiPair phi, const Np1Options& opts) {
  IetNp1Solution out;
  out.numbers = numbers;
  out.phi = phi;
  out.et = solve_et_np1(system, numbers.q_a(phi.phi_a), numbers.q_b(phi.phi_b), opts);
  return out;
}

IetNp1Solution solve_iet_np1(const NPlusOneSystem& system, const Np1Numbers& numbers,
                             const Np1Options& opts) {
  if (!(numbers.lambda_a > 0.0 && numbers.lambda_b > 0.0))
    throw DegenerateOrbitalError("lambda_a = 0 or lambda_b = 0: orbital-only solution is degenerate");
  return solve_np1_with_phi(system, numbers, phi_pair(system, numbers.lambda_a, numbers.lambda_b, opts),
                            opts);
}

IetNp1Solution solve_iet_np1(const NPlusOneSystem& system, const QuantumSpec& spec,
                             const Np1Options& opts) {
  if (static_cast<int>(spec.internal.size()) != system.n_a - 1)
    throw InputError("quantum specification must carry N_a-1 internal modes");
  if (spec.dimension != system.dimension) throw InputError("quantum specification dimension mismatch");
  return solve_iet_np1(system, decompose_np1(spec), opts);
}

const char* to_string(Method m) { return m == Method::et ? "et" : "iet"; }

NPlusOneSystem build_atom(double z, int electrons, double nucleus_mass) {
  if (electrons < 2) throw InputError("an atom needs at least 2 electrons here");
  if (!(z > 0.0)) throw InputError("nuclear charge must be positive");
  if (!(nucleus_mass > 0.0)) throw InputError("nucleus mass must be positive");
  return {electrons, 3, Law::power(0.5, 2.0), Law::power(0.5 / nucleus_mass, 2.0),
          Law::power(1.0, -1.0), Law::coulomb(z)};
}

GroundNp1Result solve_ground_np1(const NPlusOneSystem& sys, Statistics statistics,
                                 int degeneracy, Method method, const Np1Options& opts) {
  sys.validate();
  const NuLambda rel = decompose_relative(sys.dimension, Mode{0, 0});
  auto fill = [&](double phi) {
    return statistics == Statistics::boson ? bgs(sys.n_a, sys.dimension, phi)
                                           : fgs_fill(sys.n_a, sys.dimension, degeneracy, phi);
  };
  auto numbers_of = [&](const GroundStateResult& g) {
    return Np1Numbers{g.nu, g.lambda, rel.nu, rel.lambda};
  };
  auto same_filling = [](const GroundStateResult& a, const GroundStateResult& b) {
    return a.nu == b.nu && a.lambda == b.lambda;
  };

  GroundNp1Result out;
  if (method == Method::et) {
    out.filling = fill(2.0);
    out.numbers = numbers_of(out.filling);
    out.solution = solve_np1_with_phi(sys, out.numbers, {2.0, 2.0}, opts).et;
    return out;
  }

  // The filling depends on phi_a and phi_a on the filling: iterate from phi = 2.
  std::vector<GroundStateResult> fills;
  std::vector<PhiPair> phis;
  double phi_a = 2.0;
  bool done = false;
  for (int it = 0; it < 20 && !done; ++it) {
    fills.push_back(fill(phi_a));
    const auto& g = fills.back();
    if (!(g.lambda > 0.0)) throw DegenerateOrbitalError("filling has lambda_a = 0");
    phis.push_back(phi_pair(sys, g.lambda, rel.lambda, opts));
    out.fixed_point_iterations = it + 1;
    const std::size_t k = fills.size();
    if (k >= 2 && same_filling(fills[k - 1], fills[k - 2]) &&
        std::abs(phis[k - 1].phi_a - phis[k - 2].phi_a) < 1e-9) {
      done = true;
    } else if (k >= 3 && same_filling(fills[k - 1], fills[k - 3]) &&
               !same_filling(fills[k - 1], fills[k - 2])) {
      // Two-cycle: keep whichever filling gives the lower IET energy.
      const auto e1 = solve_np1_with_phi(sys, numbers_of(fills[k - 1]), phis[k - 1], opts);
      const auto e2 = solve_np1_with_phi(sys, numbers_of(fills[k - 2]), phis[k - 2], opts);
      if (e2.et.energy < e1.et.energy) {
        fills.push_back(fills[k - 2]);
        phis.push_back(phis[k - 2]);
      }
      out.warning = "filling/phi_a iteration entered a two-cycle; lower-energy filling kept";
      done = true;
    }
    phi_a = phis.back().phi_a;
  }
  if (!done) out.warning = "filling/phi_a iteration hit the iteration cap";
  out.filling = fills.back();
  out.phi = phis.back();
  out.numbers = numbers_of(out.filling);
  out.solution = solve_np1_with_phi(sys, out.numbers, out.phi, opts).et;
  return out;
}

AtomResult solve_atom(double z, int electrons, double nucleus_mass, Method method,
                      const Np1Options& opts) {
  const NPlusOneSystem sys = build_atom(z, electrons, nucleus_mass);
  GroundNp1Result g = solve_ground_np1(sys, Statistics::fermion, 2, method, opts);
  AtomResult out;
  out.method = method;
  out.z = z;
  out.electrons = electrons;
  out.nucleus_mass = nucleus_mass;
  out.filling = std::move(g.filling);
  out.numbers = g.numbers;
  out.phi = g.phi;
  out.solution = g.solution;
  out.fixed_point_iterations = g.fixed_point_iterations;
  out.warning = std::move(g.warning);
  out.energy = out.solution.energy;
  if (!(out.energy < 0.0)) throw NoBindingError("no bound solution: ET energy is not negative");
  out.binding_ev = -out.energy * kHartreeEv;
  return out;
}

}  // namespace envelope
