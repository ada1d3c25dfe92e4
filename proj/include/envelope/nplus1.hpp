#pragma once

#include <optional>
#include <string>
#include <vector>

#include "envelope/coupled_osc.hpp"
#include "envelope/law.hpp"
#include "envelope/qnum.hpp"

namespace envelope {

/// N_a identical particles of type a plus one particle b.
struct NPlusOneSystem {
  int n_a = 2;
  int dimension = 3;
  Law kinetic_a;
  Law kinetic_b;
  Law potential_aa;
  Law potential_ab;

  /// Number of a-a pairs N_a(N_a-1)/2.
  double pairs() const { return 0.5 * n_a * (n_a - 1); }
  void validate() const;
};

/// Radial and orbital aggregates of the identical block (a) and of the
/// relative motion between b and the block's centre of mass (b).
struct Np1Numbers {
  double nu_a = 0.0;
  double lambda_a = 0.0;
  double nu_b = 0.0;
  double lambda_b = 0.0;

  double q_a(double phi_a) const { return phi_a * nu_a + lambda_a; }
  double q_b(double phi_b) const { return phi_b * nu_b + lambda_b; }
};

/// Requires `spec.relative`.
Np1Numbers decompose_np1(const QuantumSpec& spec);

struct Np1Options {
  double newton_tol = 1e-11;  // max relative residual at convergence
  double residual_tol = 1e-9;
  int max_iterations = 200;
  int max_halvings = 30;
  double fd_step = 1e-6;  // log-coordinate Jacobian step
  bool multistart = true;
};

struct Np1Solution {
  double energy = 0.0;
  double p_a = 0.0;
  double r_aa = 0.0;
  double P0 = 0.0;
  double R0 = 0.0;
  double p_a_prime = 0.0;  // sqrt(p_a^2 + P0^2/N_a^2)
  double r0_prime = 0.0;   // sqrt(R0^2 + (N_a-1)/(2N_a) r_aa^2)
  double q_a = 0.0;
  double q_b = 0.0;
  double quantization_residual_a = 0.0;
  double quantization_residual_b = 0.0;
  double motion_residual_a = 0.0;
  double motion_residual_b = 0.0;
  int iterations = 0;
  int converged_starts = 0;  // distinct starts that reached a root
  int distinct_roots = 0;
};

/// Energy E(r_aa, R0) of the compact set with the momenta eliminated through
/// the quantization conditions. Its stationary points are the ET solutions.
double np1_energy_surface(const NPlusOneSystem& system, double q_a, double q_b, double r_aa,
                          double R0);

Np1Solution solve_et_np1(const NPlusOneSystem& system, double q_a, double q_b,
                         const Np1Options& opts = {});

/// Coefficients of the quadratic expansion of the energy in the radial
/// displacements and momenta around a point (p_a, r_aa, P0, R0).
struct Np1QuadraticForm {
  double mu_a = 0.0;
  double mu_b = 0.0;
  double k_a = 0.0;
  double k_b = 0.0;
  double k_c = 0.0;
  double slope_a = 0.0;  // first-order energy slope in epsilon_a
  double slope_b = 0.0;  // first-order energy slope in epsilon_b
};

Np1QuadraticForm np1_quadratic_form(const NPlusOneSystem& system, double p_a, double r_aa,
                                    double P0, double R0);

struct DosmNp1Report {
  Np1Solution orbital;
  double lambda_a = 0.0;
  double lambda_b = 0.0;
  Np1QuadraticForm form;
  NormalModes modes;
  double phi_a = 0.0;
  double phi_b = 0.0;
  std::optional<double> dosm_energy;  // when radial numbers are supplied
};

DosmNp1Report dosm_np1(const NPlusOneSystem& system, double lambda_a, double lambda_b,
                       std::optional<double> nu_a = std::nullopt,
                       std::optional<double> nu_b = std::nullopt, const Np1Options& opts = {});

struct PhiPair {
  double phi_a;
  double phi_b;
};

PhiPair phi_pair(const NPlusOneSystem& system, double lambda_a, double lambda_b,
                 const Np1Options& opts = {});

struct IetNp1Solution {
  Np1Solution et;
  Np1Numbers numbers;
  PhiPair phi{2.0, 2.0};
};

IetNp1Solution solve_iet_np1(const NPlusOneSystem& system, const Np1Numbers& numbers,
                             const Np1Options& opts = {});
IetNp1Solution solve_iet_np1(const NPlusOneSystem& system, const QuantumSpec& spec,
                             const Np1Options& opts = {});
IetNp1Solution solve_np1_with_phi(const NPlusOneSystem& system, const Np1Numbers& numbers,
                                  PhiPair phi, const Np1Options& opts = {});

enum class Method { et, iet };
const char* to_string(Method m);

/// Ground state with the identical block filled by `statistics` (degeneracy d
/// for fermions) and the relative mode in its lowest state. For the IET the
/// filling and phi_a are iterated to a fixed point starting from phi = 2.
struct GroundNp1Result {
  GroundStateResult filling;
  Np1Numbers numbers;
  PhiPair phi{2.0, 2.0};
  Np1Solution solution;
  int fixed_point_iterations = 0;
  std::string warning;
};

GroundNp1Result solve_ground_np1(const NPlusOneSystem& system, Statistics statistics,
                                 int degeneracy, Method method, const Np1Options& opts = {});

/// Conversion of atomic-unit eigenvalues to eV.
inline constexpr double kHartreeEv = 27.21;

struct AtomResult {
  Method method = Method::et;
  double z = 0.0;
  int electrons = 0;
  double nucleus_mass = 0.0;
  double energy = 0.0;         // eigenvalue, atomic units
  double binding_ev = 0.0;     // -energy * 27.21
  GroundStateResult filling;   // electron filling used
  Np1Numbers numbers;
  PhiPair phi{2.0, 2.0};
  Np1Solution solution;
  int fixed_point_iterations = 0;
  std::string warning;
};

/// Nucleus of charge Z (mass in electron masses) with N_e >= 2 electrons in
/// D = 3, spin degeneracy 2.
NPlusOneSystem build_atom(double z, int electrons, double nucleus_mass);

AtomResult solve_atom(double z, int electrons, double nucleus_mass, Method method,
                      const Np1Options& opts = {});

}  // namespace envelope
