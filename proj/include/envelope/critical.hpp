#pragma once

#include <string>

#include "envelope/law.hpp"

namespace envelope {

/// Dimensionless positive shape v of a short-range well V(r) = -g v(r).
Law gaussian_shape();     // exp(-x^2)
Law exponential_shape();  // exp(-x)
Law rational_shape();     // 1/(1+x^2)^2

/// Shape by name: "gaussian", "exponential" or "rational".
Law shape_by_name(const std::string& name);

/// Throws InputError unless v > 0 somewhere on the scan range and v is
/// negligible at its upper end. Checked by sampling.
void validate_shape(const Law& v);

/// Root of 2 v(u) + u v'(u) = 0 on [1e-6, 1e6] maximising u^2 v(u).
/// Throws NoRootError when there is no sign change.
double u_star(const Law& v);

/// Critical coupling of -g v(r) for particles of mass m, N bodies and
/// global quantum number q.
double critical_g(const Law& v, double mass, int n, double q);

}  // namespace envelope
