#pragma once

namespace envelope {

/// H = 1/2 (p1^2/mass_a + p2^2/mass_b + k_a x1^2 + k_b x2^2 + k_c x1 x2)
struct OscPair {
  double mass_a = 1.0;
  double mass_b = 1.0;
  double stiffness_a = 1.0;
  double stiffness_b = 1.0;
  double coupling = 0.0;
};

/// E_{n n'} = sqrt(A/mu) (n + 1/2) + sqrt(B/mu) (n' + 1/2), mu = sqrt(m_a m_b).
/// The A mode is the one continuously connected to the first oscillator as
/// the coupling vanishes.
struct NormalModes {
  double a = 0.0;
  double b = 0.0;
  double mu = 0.0;

  double omega_a() const;
  double omega_b() const;
};

/// Throws InputError for non-positive masses. A or B may come out
/// non-positive for unstable pairs; callers decide what to do.
NormalModes normal_modes(const OscPair& pair);

/// Throws UnstableOrbitalError if A < 0 or B < 0.
double level(const NormalModes& modes, int n, int n_prime);
double level(const OscPair& pair, int n, int n_prime);

}  // namespace envelope
