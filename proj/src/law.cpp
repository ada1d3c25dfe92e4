#include "envelope/law.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "envelope/errors.hpp"

namespace envelope {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string("non-finite law parameter: ") + what);
}

}  // namespace

Law Law::power(double coefficient, double exponent) {
  require_finite(coefficient, "coefficient");
  require_finite(exponent, "exponent");
  Law law;
  law.kind_ = LawKind::power;
  law.p0_ = coefficient;
  law.p1_ = exponent;
  return law;
}

Law Law::signed_power(double strength, double exponent) {
  require_finite(strength, "strength");
  require_finite(exponent, "exponent");
  if (strength <= 0.0) throw InputError("signed power law needs a strictly positive strength");
  if (exponent == 0.0) throw InputError("signed power law needs a non-zero exponent");
  Law law;
  law.kind_ = LawKind::signed_power;
  law.p0_ = strength;
  law.p1_ = exponent;
  return law;
}

Law Law::coulomb(double strength) {
  require_finite(strength, "strength");
  Law law;
  law.kind_ = LawKind::coulomb;
  law.p0_ = strength;
  return law;
}

Law Law::harmonic(double stiffness) {
  require_finite(stiffness, "stiffness");
  Law law;
  law.kind_ = LawKind::harmonic;
  law.p0_ = stiffness;
  return law;
}

Law Law::gaussian_well(double depth, double range) {
  require_finite(depth, "depth");
  require_finite(range, "range");
  if (range <= 0.0) throw InputError("gaussian well needs a positive range");
  Law law;
  law.kind_ = LawKind::gaussian_well;
  law.p0_ = depth;
  law.p1_ = range;
  return law;
}

Law Law::exponential_well(double depth, double range) {
  require_finite(depth, "depth");
  require_finite(range, "range");
  if (range <= 0.0) throw InputError("exponential well needs a positive range");
  Law law;
  law.kind_ = LawKind::exponential_well;
  law.p0_ = depth;
  law.p1_ = range;
  return law;
}

Law Law::weighted_sum(std::vector<Term> terms) {
  if (terms.empty()) throw InputError("weighted sum needs at least one term");
  Law law;
  law.kind_ = LawKind::weighted_sum;
  law.lo_ = 0.0;
  law.hi_ = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    require_finite(t.weight, "weight");
    law.lo_ = std::max(law.lo_, t.law.lo_);
    law.hi_ = std::min(law.hi_, t.law.hi_);
  }
  if (!(law.lo_ < law.hi_)) throw InputError("weighted sum has an empty domain");
  law.terms_ = std::move(terms);
  return law;
}

Law Law::custom(CustomFn fn, std::string label, double domain_lo, double domain_hi) {
  if (!fn) throw InputError("custom law needs a callable");
  if (!(domain_lo >= 0.0 && domain_lo < domain_hi))
    throw InputError("custom law domain must be a non-empty interval of positive reals");
  Law law;
  law.kind_ = LawKind::custom;
  law.fn_ = std::move(fn);
  law.label_ = std::move(label);
  law.lo_ = domain_lo;
  law.hi_ = domain_hi;
  return law;
}

Law make_weighted_sum(std::vector<Law::Term> terms) { return Law::weighted_sum(std::move(terms)); }

Derivs Law::eval(double x) const {
  if (!in_domain(x)) throw DomainError("law " + describe() + " evaluated outside its domain at x=" + num(x));
  Derivs r = eval_unchecked(x);
  if (!std::isfinite(r.value) || !std::isfinite(r.d1) || !std::isfinite(r.d2))
    throw DomainError("law " + describe() + " is not finite at x=" + num(x));
  return r;
}

Derivs Law::eval_unchecked(double x) const {
  switch (kind_) {
    case LawKind::power:
    case LawKind::signed_power: {
      const double c = kind_ == LawKind::power ? p0_ : (p1_ > 0.0 ? p0_ : -p0_);
      const double e = p1_;
      const double xe = std::pow(x, e);
      return {c * xe, c * e * xe / x, c * e * (e - 1.0) * xe / (x * x)};
    }
    case LawKind::coulomb:
      return {-p0_ / x, p0_ / (x * x), -2.0 * p0_ / (x * x * x)};
    case LawKind::harmonic:
      return {p0_ * x * x, 2.0 * p0_ * x, 2.0 * p0_};
    case LawKind::gaussian_well: {
      const double s = x / p1_;
      const double g = -p0_ * std::exp(-s * s);
      return {g, -2.0 * s / p1_ * g, (4.0 * s * s - 2.0) / (p1_ * p1_) * g};
    }
    case LawKind::exponential_well: {
      const double g = -p0_ * std::exp(-x / p1_);
      return {g, -g / p1_, g / (p1_ * p1_)};
    }
    case LawKind::weighted_sum: {
      Derivs acc;
      for (const auto& t : terms_) {
        const Derivs d = t.law.eval(x);
        acc.value += t.weight * d.value;
        acc.d1 += t.weight * d.d1;
        acc.d2 += t.weight * d.d2;
      }
      return acc;
    }
    case LawKind::custom:
      return fn_(x);
  }
  return {};
}

std::string Law::describe() const {
  switch (kind_) {
    case LawKind::power:
      return num(p0_) + "*x^" + num(p1_);
    case LawKind::signed_power:
      return std::string(p1_ > 0 ? "" : "-") + num(p0_) + "*x^" + num(p1_);
    case LawKind::coulomb:
      return "-" + num(p0_) + "/x";
    case LawKind::harmonic:
      return num(p0_) + "*x^2";
    case LawKind::gaussian_well:
      return "-" + num(p0_) + "*exp(-(x/" + num(p1_) + ")^2)";
    case LawKind::exponential_well:
      return "-" + num(p0_) + "*exp(-x/" + num(p1_) + ")";
    case LawKind::weighted_sum: {
      std::string s;
      for (const auto& t : terms_) {
        if (!s.empty()) s += " + ";
        s += num(t.weight) + "*(" + t.law.describe() + ")";
      }
      return s;
    }
    case LawKind::custom:
      return label_.empty() ? "custom" : label_;
  }
  return "?";
}

bool Law::as_signed_power(double& strength, double& exponent) const {
  switch (kind_) {
    case LawKind::power:
      if (p1_ == 0.0) return false;
      if ((p1_ > 0.0 ? p0_ : -p0_) <= 0.0) return false;
      strength = std::abs(p0_);
      exponent = p1_;
      return true;
    case LawKind::signed_power:
      strength = p0_;
      exponent = p1_;
      return true;
    case LawKind::coulomb:
      if (p0_ <= 0.0) return false;
      strength = p0_;
      exponent = -1.0;
      return true;
    case LawKind::harmonic:
      if (p0_ <= 0.0) return false;
      strength = p0_;
      exponent = 2.0;
      return true;
    default:
      return false;
  }
}

void require_kinetic(const Law& law) {
  switch (law.kind()) {
    case LawKind::power:
      if (!(law.param0() > 0.0 && law.param1() > 0.0))
        throw InputError("kinetic power law needs strictly positive coefficient and exponent");
      return;
    case LawKind::harmonic:
      if (!(law.param0() > 0.0)) throw InputError("kinetic quadratic law needs a positive coefficient");
      return;
    case LawKind::weighted_sum:
      for (const auto& t : law.terms()) {
        if (!(t.weight > 0.0)) throw InputError("kinetic sum needs positive weights");
        require_kinetic(t.law);
      }
      return;
    case LawKind::custom: {
      // Sampled check only; the callable is opaque.
      const double lo = std::max(law.domain_lo(), 1e-6);
      const double hi = std::min(law.domain_hi(), 1e6);
      for (int i = 0; i <= 24; ++i) {
        const double x = lo * std::pow(hi / lo, i / 24.0);
        if (!law.in_domain(x)) continue;
        if (!(law.eval(x).d1 > 0.0)) throw InputError("kinetic law must be strictly increasing");
      }
      return;
    }
    default:
      throw InputError("law " + law.describe() + " is not an admissible kinetic energy");
  }
}

}  // namespace envelope
