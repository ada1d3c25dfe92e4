#pragma once

#include <optional>
#include <string>
#include <vector>

#include "envelope/law.hpp"
#include "envelope/qnum.hpp"

namespace envelope {

/// N identical particles with kinetic energy T(|p|) and pair potential V(r).
struct IdenticalSystem {
  int n = 2;
  int dimension = 3;
  Law kinetic;
  Law potential;

  /// Number of pairs N(N-1)/2.
  double pairs() const { return 0.5 * n * (n - 1); }
  /// Throws InputError when the system is not admissible.
  void validate() const;
};

enum class Bound { upper, lower, exact, unknown };
const char* to_string(Bound b);

struct SolverOptions {
  double root_rel_tol = 1e-12;
  double residual_tol = 1e-9;
  double scan_lo = 1e-8;
  double scan_hi = 1e8;
  int scan_panels = 400;
  /// Selects among multiple roots, ordered by increasing energy.
  int root_index = 0;
};

struct EtRoot {
  double rho0;
  double p0;
  double energy;
};

struct EtSolution {
  double energy = 0.0;
  double rho0 = 0.0;  // mean inter-particle distance
  double p0 = 0.0;    // mean per-particle momentum
  double q = 0.0;
  double quantization_residual = 0.0;  // relative
  double motion_residual = 0.0;        // relative
  std::vector<EtRoot> roots;           // sorted by energy
  Bound bound = Bound::unknown;

  int root_count() const { return static_cast<int>(roots.size()); }
};

/// Solves E = N T(p0) + C V(rho0), N T'(p0) p0 = C V'(rho0) rho0,
/// Q = sqrt(C) rho0 p0.
EtSolution solve_et(const IdenticalSystem& system, double q, const SolverOptions& opts = {});

/// Closed-form energy for T = F x^alpha, V = sgn(beta) G x^beta.
double power_law_energy(int n, double f, double alpha, double g, double beta, double q_phi);

struct DosmIdenticalReport {
  EtSolution orbital;  // solution with Q replaced by lambda
  double lambda = 0.0;
  double mu = 0.0;         // effective radial mass
  double stiffness = 0.0;  // radial stiffness k
  double slope = 0.0;      // N p T'(p), first-order energy slope in epsilon
  double phi = 0.0;
  /// Orbital energy plus quantized radial excitation, when nu is supplied.
  std::optional<double> dosm_energy;
};

DosmIdenticalReport dosm_identical(const IdenticalSystem& system, double lambda,
                                   std::optional<double> nu = std::nullopt,
                                   const SolverOptions& opts = {});

double phi_identical(const IdenticalSystem& system, double lambda, const SolverOptions& opts = {});

struct IetSolution {
  EtSolution et;
  NuLambda numbers;
  double phi = 2.0;
};

IetSolution solve_iet(const IdenticalSystem& system, NuLambda numbers,
                      const SolverOptions& opts = {});
IetSolution solve_iet(const IdenticalSystem& system, const QuantumSpec& spec,
                      const SolverOptions& opts = {});
/// ET solve at Q = phi*nu + lambda with a caller-supplied phi.
IetSolution solve_with_phi(const IdenticalSystem& system, NuLambda numbers, double phi,
                           const SolverOptions& opts = {});

/// Ground state under the given statistics (degeneracy d for fermions). With
/// `improved`, the filling and phi are iterated to a fixed point from phi = 2.
struct GroundIdenticalResult {
  GroundStateResult filling;
  IetSolution solution;
  int fixed_point_iterations = 0;
  std::string warning;
};

GroundIdenticalResult solve_ground_identical(const IdenticalSystem& system, Statistics statistics,
                                             int degeneracy, bool improved,
                                             const SolverOptions& opts = {});

namespace detail {

/// Roots of the generic one-scale compact set
///   kin * T'(p) p = pot * V'(x) x,   p = q / (scale * x),
/// returned as x values; shared with the N_a+1 initial guess.
std::vector<double> compact_roots(double kin, const Law& kinetic, double pot, const Law& potential,
                                  double q, double scale, const SolverOptions& opts);

}  // namespace detail

}  // namespace envelope
