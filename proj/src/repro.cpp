#include "envelope/repro.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "envelope/errors.hpp"

namespace envelope::repro {

namespace detail {
std::string_view fixture_text();
}

namespace {

Check relative_check(std::string name, double computed, double reference, double tol) {
  Check c;
  c.name = std::move(name);
  c.computed = computed;
  c.reference = reference;
  c.deviation = std::abs(computed - reference) / std::abs(reference);
  c.tolerance = tol;
  c.relative = true;
  c.pass = c.deviation < tol;
  return c;
}

Check absolute_check(std::string name, double computed, double reference, double tol) {
  Check c;
  c.name = std::move(name);
  c.computed = computed;
  c.reference = reference;
  c.deviation = std::abs(computed - reference);
  c.tolerance = tol;
  c.relative = false;
  c.pass = c.deviation <= tol;
  return c;
}

// Quoted percentages carry two significant digits at most, so the allowed
// gap is 0.1 points or half a unit of the last quoted digit, whichever is larger.
Check percent_check(std::string name, double computed_pct, const std::string& quoted) {
  const auto dot = quoted.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(quoted.size() - dot - 1);
  const double half_unit = 0.5 * std::pow(10.0, -decimals);
  Check c = absolute_check(std::move(name), computed_pct, std::stod(quoted), std::max(0.1, half_unit));
  c.informational = true;
  return c;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void add_percent_checks(RowReport& rep, const FixtureRow& row, double et, double iet) {
  const double exact = row.num("exact");
  const double et_pct = percent_error(et, exact);
  const double iet_pct = percent_error(iet, exact);
  rep.values.push_back({"et_error_pct", et_pct});
  rep.values.push_back({"iet_error_pct", iet_pct});
  if (row.has("et_pct")) rep.checks.push_back(percent_check("et_error_pct", et_pct, row.str("et_pct")));
  if (row.has("iet_pct"))
    rep.checks.push_back(percent_check("iet_error_pct", iet_pct, row.str("iet_pct")));
}

void table1_row(const FixtureRow& row, RowReport& rep) {
  const double beta = row.num("beta");
  rep.label = fmt("beta=%g", beta);
  const IdenticalSystem sys = build_power_identical(beta);
  const NuLambda ground{1.0, 1.0};
  const EtSolution et = solve_with_phi(sys, ground, 2.0).et;
  const IetSolution iet = solve_iet(sys, ground);
  rep.values = {{"beta", beta}, {"et", et.energy}, {"iet", iet.et.energy}, {"phi", iet.phi}};
  rep.checks.push_back(relative_check("et", et.energy, row.num("et"), 5e-5));
  rep.checks.push_back(relative_check("iet", iet.et.energy, row.num("iet"), 5e-5));
  if (beta == 2.0) {
    const double exact = 3.0 * std::sqrt(3.0);
    rep.checks.push_back(absolute_check("et_exact", et.energy, exact, 1e-10));
    rep.checks.push_back(absolute_check("iet_exact", iet.et.energy, exact, 1e-10));
  }
  add_percent_checks(rep, row, et.energy, iet.et.energy);
}

void np1_row(const FixtureRow& row, RowReport& rep, const NPlusOneSystem& sys,
             const Np1Numbers& numbers, bool harmonic) {
  const Np1Solution et = solve_np1_with_phi(sys, numbers, {2.0, 2.0}).et;
  const IetNp1Solution iet = solve_iet_np1(sys, numbers);
  rep.values.push_back({"et", et.energy});
  rep.values.push_back({"iet", iet.et.energy});
  rep.values.push_back({"phi_a", iet.phi.phi_a});
  rep.values.push_back({"phi_b", iet.phi.phi_b});
  rep.checks.push_back(relative_check("et", et.energy, row.num("et"), 5e-4));
  rep.checks.push_back(relative_check("iet", iet.et.energy, row.num("iet"), 5e-4));
  rep.checks.push_back(absolute_check("phi_a", iet.phi.phi_a, row.num("phi_a"), 0.005));
  rep.checks.push_back(absolute_check("phi_b", iet.phi.phi_b, row.num("phi_b"), 0.005));
  if (harmonic) {
    rep.checks.push_back(relative_check("iet_equals_et", iet.et.energy, et.energy, 1e-9));
    rep.checks.push_back(absolute_check("phi_a_exact", iet.phi.phi_a, 2.0, 1e-9));
    rep.checks.push_back(absolute_check("phi_b_exact", iet.phi.phi_b, 2.0, 1e-9));
  }
  add_percent_checks(rep, row, et.energy, iet.et.energy);
}

void table2_row(const FixtureRow& row, RowReport& rep) {
  const double kappa = row.num("kappa");
  const Np1Numbers n{row.num("nu_a"), row.num("lambda_a"), row.num("nu_b"), row.num("lambda_b")};
  rep.label = fmt("kappa=%g", kappa) + fmt(" <%g,%g,", n.nu_a, n.lambda_a) +
              fmt("%g,%g>", n.nu_b, n.lambda_b);
  rep.values = {{"kappa", kappa}};
  np1_row(row, rep, build_uroh(kappa), n, false);
}

void table3_row(const FixtureRow& row, RowReport& rep) {
  const double m = row.num("m");
  const double beta = row.num("beta");
  rep.label = fmt("m=%g beta=%g", m, beta);
  rep.values = {{"m", m}, {"beta", beta}};
  np1_row(row, rep, build_power(m, beta), {0.5, 0.5, 0.5, 0.5}, beta == 2.0);
}

void table4_row(const FixtureRow& row, RowReport& rep) {
  const double z = row.num("z");
  const int electrons = static_cast<int>(row.num("electrons"));
  const double mass = row.num("mass");
  rep.label = row.str("label");
  const AtomResult et = solve_atom(z, electrons, mass, Method::et);
  const AtomResult iet = solve_atom(z, electrons, mass, Method::iet);
  rep.values = {{"z", z},
                {"electrons", static_cast<double>(electrons)},
                {"nucleus_mass", mass},
                {"et_ev", et.binding_ev},
                {"iet_ev", iet.binding_ev},
                {"phi_a", iet.phi.phi_a},
                {"phi_b", iet.phi.phi_b},
                {"fixed_point_iterations", static_cast<double>(iet.fixed_point_iterations)}};
  rep.checks.push_back(absolute_check("et_ev", et.binding_ev, row.num("et"), 1.0));
  rep.checks.push_back(absolute_check("iet_ev", iet.binding_ev, row.num("iet"), 1.0));
  rep.checks.push_back(absolute_check("phi_a", iet.phi.phi_a, row.num("phi_a"), 0.01));
  rep.checks.push_back(absolute_check("phi_b", iet.phi.phi_b, row.num("phi_b"), 0.01));
  rep.note = iet.warning;
}

RowReport run_row(const FixtureRow& row, int index) {
  RowReport rep;
  rep.table = row.table;
  rep.row = index;
  try {
    switch (row.table) {
      case 1: table1_row(row, rep); break;
      case 2: table2_row(row, rep); break;
      case 3: table3_row(row, rep); break;
      case 4: table4_row(row, rep); break;
      default: throw InputError("unknown table");
    }
  } catch (const Error& e) {
    rep.error = e.kind() + ": " + e.what();
    Check failed;
    failed.name = "solver";
    rep.checks.push_back(failed);
  }
  return rep;
}

}  // namespace

double FixtureRow::num(const std::string& key) const { return std::stod(str(key)); }

std::string FixtureRow::str(const std::string& key) const {
  const auto it = fields.find(key);
  if (it == fields.end()) throw InputError("fixture row lacks field '" + key + "'");
  return it->second;
}

std::vector<FixtureRow> parse_fixtures(std::string_view text) {
  std::vector<FixtureRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;
    FixtureRow row;
    try {
      row.table = std::stoi(tok);
    } catch (const std::exception&) {
      throw InputError("fixture line " + std::to_string(lineno) + ": bad table id");
    }
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0)
        throw InputError("fixture line " + std::to_string(lineno) + ": expected key=value");
      row.fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view builtin_fixture_text() { return detail::fixture_text(); }

const std::vector<FixtureRow>& builtin_fixtures() {
  static const std::vector<FixtureRow> rows = parse_fixtures(builtin_fixture_text());
  return rows;
}

std::vector<FixtureRow> fixtures_for(int table) {
  std::vector<FixtureRow> out;
  for (const auto& r : builtin_fixtures())
    if (r.table == table) out.push_back(r);
  return out;
}

NPlusOneSystem build_uroh(double kappa) {
  if (!(kappa > 0.0)) throw InputError("kappa must be positive");
  return {2, 3, Law::power(1.0, 1.0), Law::power(1.0, 1.0), Law::harmonic(1.0),
          Law::harmonic(kappa)};
}

NPlusOneSystem build_power(double m, double beta) {
  if (!(m > 0.0)) throw InputError("mass ratio must be positive");
  if (beta == 0.0) throw InputError("beta must be nonzero");
  return {2, 3, Law::power(0.5, 2.0), Law::power(0.5 / m, 2.0), Law::signed_power(0.5, beta),
          Law::signed_power(0.5, beta)};
}

IdenticalSystem build_power_identical(double beta) {
  if (beta == 0.0) throw InputError("beta must be nonzero");
  return {3, 3, Law::power(0.5, 2.0), Law::signed_power(0.5, beta)};
}

bool RowReport::pass() const {
  for (const auto& c : checks)
    if (!c.informational && !c.pass) return false;
  return true;
}

bool TableReport::pass() const {
  if (rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.pass()) return false;
  return true;
}

double percent_error(double x, double ref) { return 100.0 * std::abs(x - ref) / std::abs(ref); }

TableReport run_table(int table, bool parallel) {
  if (table < 1 || table > 4) throw InputError("table must be 1, 2, 3 or 4");
  const auto rows = fixtures_for(table);
  TableReport rep;
  rep.table = table;
  if (parallel) {
    std::vector<std::future<RowReport>> jobs;
    for (std::size_t i = 0; i < rows.size(); ++i)
      jobs.push_back(std::async(std::launch::async, run_row, std::cref(rows[i]), static_cast<int>(i + 1)));
    for (auto& j : jobs) rep.rows.push_back(j.get());
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i)
      rep.rows.push_back(run_row(rows[i], static_cast<int>(i + 1)));
  }
  return rep;
}

}  // namespace envelope::repro
