#include "envelope/roots.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "envelope/errors.hpp"

namespace envelope::roots {

namespace {

char sign_char(double v) { return v > 0.0 ? '+' : (v < 0.0 ? '-' : '0'); }

}  // namespace

ScanResult scan_geometric(const std::function<double(double)>& f, double lo, double hi,
                          int panels) {
  ScanResult out;
  out.trace.reserve(static_cast<std::size_t>(panels) + 1);
  const double ratio = std::log(hi / lo) / panels;
  double x_prev = lo;
  double f_prev = f(lo);
  out.trace.push_back(sign_char(f_prev));
  if (f_prev == 0.0) out.brackets.push_back({lo, lo});
  for (int i = 1; i <= panels; ++i) {
    const double x = i == panels ? hi : lo * std::exp(ratio * i);
    const double fx = f(x);
    out.trace.push_back(sign_char(fx));
    if (fx == 0.0) {
      out.brackets.push_back({x, x});
    } else if (f_prev != 0.0 && (fx > 0.0) != (f_prev > 0.0)) {
      out.brackets.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

double solve_bracketed(const std::function<double(double)>& f, Bracket bracket, double rel_tol) {
  if (bracket.lo == bracket.hi) return bracket.lo;
  const double flo = f(bracket.lo);
  const double fhi = f(bracket.hi);
  if (flo == 0.0) return bracket.lo;
  if (fhi == 0.0) return bracket.hi;
  auto done = [rel_tol](double a, double b) {
    return std::abs(b - a) <= rel_tol * std::min(std::abs(a), std::abs(b));
  };
  std::uintmax_t max_iter = 500;
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, bracket.lo, bracket.hi, flo, fhi, done, max_iter);
  return 0.5 * (a + b);
}

std::vector<double> find_all_roots(const std::function<double(double)>& f, double lo, double hi,
                                   int panels, double widen, int max_widenings, double rel_tol,
                                   const std::string& what) {
  std::string traces;
  for (int attempt = 0; attempt <= max_widenings; ++attempt) {
    const ScanResult scan = scan_geometric(f, lo, hi, panels);
    if (!scan.brackets.empty()) {
      std::vector<double> out;
      out.reserve(scan.brackets.size());
      for (const auto& b : scan.brackets) out.push_back(solve_bracketed(f, b, rel_tol));
      return out;
    }
    char head[96];
    std::snprintf(head, sizeof head, "[%.3g,%.3g]:", lo, hi);
    traces += head + scan.trace + ";";
    lo /= widen;
    hi *= widen;
  }
  throw NoRootError("no sign change found for " + what, traces);
}

}  // namespace envelope::roots
