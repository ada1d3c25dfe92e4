#pragma once

#include <functional>
#include <string>
#include <vector>

namespace envelope::roots {

struct Bracket {
  double lo;
  double hi;
};

struct ScanResult {
  std::vector<Bracket> brackets;
  std::string trace;  // compact sign pattern, used for no-root diagnostics
};

/// Evaluates `f` on a geometric grid of `panels` intervals over [lo, hi] and
/// returns every interval across which `f` changes sign (exact zeros at grid
/// points yield a degenerate bracket lo == hi).
ScanResult scan_geometric(const std::function<double(double)>& f, double lo, double hi,
                          int panels);

/// Root of `f` inside a sign-changing bracket, by bisection with inverse
/// interpolation (TOMS 748), to relative width `rel_tol`.
double solve_bracketed(const std::function<double(double)>& f, Bracket bracket,
                       double rel_tol = 1e-12);

/// Scans [lo, hi]; on failure widens the range by `widen` on each side up to
/// `max_widenings` times. Returns all roots found on the first range holding
/// any. Throws NoRootError carrying the scan trace when none is found.
std::vector<double> find_all_roots(const std::function<double(double)>& f, double lo, double hi,
                                   int panels, double widen, int max_widenings, double rel_tol,
                                   const std::string& what);

}  // namespace envelope::roots
