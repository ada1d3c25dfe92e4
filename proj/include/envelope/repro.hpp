#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "envelope/identical.hpp"
#include "envelope/nplus1.hpp"

namespace envelope::repro {

/// One reference row: table id plus its key=value fields.
struct FixtureRow {
  int table = 0;
  std::map<std::string, std::string> fields;

  bool has(const std::string& key) const { return fields.count(key) != 0; }
  double num(const std::string& key) const;
  std::string str(const std::string& key) const;
};

/// Parses the fixture text format (`<table> key=value ...`, `#` comments).
std::vector<FixtureRow> parse_fixtures(std::string_view text);

/// Fixture text compiled into the library.
std::string_view builtin_fixture_text();
const std::vector<FixtureRow>& builtin_fixtures();
std::vector<FixtureRow> fixtures_for(int table);

/// Two massless particles a and one b: T = |p|, V_aa = r^2, V_ab = kappa r^2.
NPlusOneSystem build_uroh(double kappa);
/// Two particles a of mass 1 and one b of mass m, V_aa = V_ab = sgn(beta) r^beta / 2.
NPlusOneSystem build_power(double m, double beta);
/// N = 3 identical particles with T = p^2/2, V = sgn(beta) r^beta / 2.
IdenticalSystem build_power_identical(double beta);

struct Check {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double deviation = 0.0;  // relative or absolute, see `relative`
  double tolerance = 0.0;
  bool relative = true;
  bool pass = false;
  bool informational = false;  // reported but not counted towards pass/fail
};

struct RowReport {
  int table = 0;
  int row = 0;  // 1-based within the table
  std::string label;
  std::vector<std::pair<std::string, double>> values;  // computed outputs
  std::vector<Check> checks;
  std::string error;  // solver diagnostics when the row could not be computed
  std::string note;
  bool pass() const;
};

struct TableReport {
  int table = 0;
  std::vector<RowReport> rows;
  bool pass() const;
};

/// Computes ET and IET (and phi values) for every fixture row of `table` and
/// checks them against the reference values. Solver errors fail the row only.
TableReport run_table(int table, bool parallel = true);

/// Relative error in percent, 100 |x - ref| / |ref|.
double percent_error(double x, double ref);

}  // namespace envelope::repro
