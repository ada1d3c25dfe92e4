#pragma once

#include <optional>
#include <span>
#include <vector>

namespace envelope {

/// Radial and orbital quantum numbers of one Jacobi mode.
struct Mode {
  int n = 0;
  int l = 0;
};

/// Quantum numbers of a state: D, the internal modes of the identical block
/// (N-1 of them, or N_a-1 for an N_a+1 system) and, for N_a+1 systems only,
/// the relative mode between the distinct particle and the block.
struct QuantumSpec {
  int dimension = 3;
  std::vector<Mode> internal;
  std::optional<Mode> relative;
};

/// Aggregate radial part nu = sum(n + 1/2) and orbital part
/// lambda = sum(l + (D-2)/2) of a set of modes.
struct NuLambda {
  double nu = 0.0;
  double lambda = 0.0;

  /// phi * nu + lambda; at phi = 2 this is the usual global quantum number.
  double q(double phi) const { return phi * nu + lambda; }
};

NuLambda decompose(int dimension, std::span<const Mode> modes);
NuLambda decompose_relative(int dimension, Mode relative);

/// phi * nu + lambda over the internal modes of `spec`.
double global_q(const QuantumSpec& spec, double phi);

/// Number of states of orbital momentum l in D dimensions, times the
/// internal degeneracy d.
long long level_degeneracy(int l, int dimension, int degeneracy);

enum class Statistics { boson, fermion };

struct FilledLevel {
  int n;
  int l;
  long long occupancy;
};

struct GroundStateResult {
  double q_phi = 0.0;
  double nu = 0.0;
  double lambda = 0.0;
  std::vector<FilledLevel> levels;
  Statistics statistics = Statistics::boson;
  int degeneracy = 1;
  double phi = 2.0;

  NuLambda nu_lambda() const { return {nu, lambda}; }
};

GroundStateResult bgs(int n, int dimension, double phi);

/// Fermionic ground state by filling single-particle levels (n, l) in
/// ascending order of phi*n + l, each holding level_degeneracy(l, D, d).
GroundStateResult fgs_fill(int n, int dimension, int degeneracy, double phi);

enum class FgsVariant { phi2, phi1 };

/// Closed-form fermionic ground-state quantum number for phi = 2 or phi = 1.
double fgs_closed(int n, int dimension, int degeneracy, FgsVariant variant);

/// Large-N estimate D/(D+1) * (phi*D!/(2d))^(1/D) * N^((D+1)/D).
double fgs_approx(int n, int dimension, int degeneracy, double phi);

}  // namespace envelope
