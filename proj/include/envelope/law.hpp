#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace envelope {

/// Value and first two derivatives of a scalar law at one point.
struct Derivs {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

enum class LawKind {
  power,             // c * x^e
  signed_power,      // sgn(e) * G * x^e
  coulomb,           // -G / x
  harmonic,          // k * x^2
  gaussian_well,     // -depth * exp(-(x/range)^2)
  exponential_well,  // -depth * exp(-x/range)
  weighted_sum,
  custom,
};

/// A kinetic energy T(p) or a central pair potential V(r), evaluable with
/// exact first and second derivatives on an open interval of positive reals.
///
/// Laws are immutable values; copies share nothing mutable.
class Law {
 public:
  struct Term;
  using CustomFn = std::function<Derivs(double)>;

  static Law power(double coefficient, double exponent);
  static Law signed_power(double strength, double exponent);
  static Law coulomb(double strength);
  static Law harmonic(double stiffness);
  static Law gaussian_well(double depth, double range);
  static Law exponential_well(double depth, double range);
  static Law weighted_sum(std::vector<Term> terms);
  /// User-supplied law. `domain_lo`/`domain_hi` bound the open domain.
  static Law custom(CustomFn fn, std::string label, double domain_lo = 0.0,
                    double domain_hi = std::numeric_limits<double>::infinity());

  LawKind kind() const noexcept { return kind_; }
  double domain_lo() const noexcept { return lo_; }
  double domain_hi() const noexcept { return hi_; }
  bool in_domain(double x) const noexcept { return x > lo_ && x < hi_; }

  /// Throws DomainError outside the domain or on a non-finite result.
  Derivs eval(double x) const;
  double operator()(double x) const { return eval(x).value; }
  double d1(double x) const { return eval(x).d1; }
  double d2(double x) const { return eval(x).d2; }

  /// First parameter (coefficient, strength, stiffness or depth).
  double param0() const noexcept { return p0_; }
  /// Second parameter (exponent or range); 0 where not applicable.
  double param1() const noexcept { return p1_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Short human-readable description, e.g. "0.5*x^2".
  std::string describe() const;

  /// Exponent of an equivalent signed power law sgn(b)*G*x^b, if this law is
  /// one (power, signed_power, coulomb, harmonic). Sets `strength` to G.
  bool as_signed_power(double& strength, double& exponent) const;

 private:
  Law() = default;
  Derivs eval_unchecked(double x) const;

  LawKind kind_ = LawKind::power;
  double p0_ = 0.0;
  double p1_ = 0.0;
  double lo_ = 0.0;
  double hi_ = std::numeric_limits<double>::infinity();
  std::vector<Term> terms_;
  CustomFn fn_;
  std::string label_;
};

struct Law::Term {
  double weight;
  Law law;
};

/// Builds the coefficient-weighted sum of `terms`. Throws InputError on an
/// empty list or when the intersected domain is empty.
Law make_weighted_sum(std::vector<Law::Term> terms);

inline Derivs eval_d012(const Law& law, double x) { return law.eval(x); }

/// Throws InputError unless `law` is acceptable as a kinetic energy: power
/// laws need strictly positive coefficient and exponent, sums need positive
/// weights on such laws, custom laws must have T' > 0 at sampled points.
void require_kinetic(const Law& law);

}  // namespace envelope
