#include "envelope/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "CLI11.hpp"
#include "envelope/critical.hpp"
#include "envelope/errors.hpp"
#include "envelope/identical.hpp"
#include "envelope/nplus1.hpp"
#include "envelope/qnum.hpp"
#include "envelope/report.hpp"
#include "envelope/repro.hpp"
#include "envelope/sysdef.hpp"

namespace envelope::cli {

namespace {

using report::number;
using report::Record;

struct Globals {
  std::string output = "json";
  double tol = 1e-9;
  bool quiet = false;
};

class Emitter {
 public:
  Emitter(const Globals& g, std::ostream& out) : g_(g), out_(out), csv_(out) {}
  void emit(const Record& r) {
    if (g_.output == "json") {
      report::write_json(r, out_);
    } else if (g_.output == "csv") {
      csv_.write(r);
    } else {
      report::write_pretty(r, out_);
      out_ << '\n';
    }
  }
  void emit_all(const std::vector<Record>& rs) {
    if (g_.output == "csv") {
      csv_.write_all(rs);
    } else {
      for (const auto& r : rs) emit(r);
    }
  }

 private:
  const Globals& g_;
  std::ostream& out_;
  report::CsvWriter csv_;
};

Record error_record(const std::string& kind, const std::string& message, int status) {
  Record r;
  r["status"] = "error";
  r["kind"] = kind;
  r["message"] = message;
  r["exit"] = status;
  return r;
}

Record filling_record(const GroundStateResult& g) {
  Record levels = Record::array();
  for (const auto& l : g.levels) levels.push_back({{"n", l.n}, {"l", l.l}, {"occupancy", l.occupancy}});
  return levels;
}

// ---------------------------------------------------------------- identical

Record identical_inputs(const std::string& path, const sysdef::SystemDefinition& def) {
  const auto& s = *def.identical;
  return {{"definition", path},
          {"particles", "identical"},
          {"n", s.n},
          {"dimension", s.dimension},
          {"kinetic", s.kinetic.describe()},
          {"potential", s.potential.describe()},
          {"state", sysdef::to_string(def.state)},
          {"degeneracy", def.degeneracy},
          {"method", sysdef::to_string(def.method)},
          {"unit", number(def.unit)}};
}

Record et_block(const EtSolution& et, double unit) {
  Record r;
  r["energy"] = number(et.energy * unit);
  r["q"] = number(et.q);
  r["variables"] = {{"rho0", number(et.rho0)}, {"p0", number(et.p0)}};
  r["residuals"] = {{"quantization", number(et.quantization_residual)},
                    {"motion", number(et.motion_residual)}};
  r["root_count"] = et.root_count();
  r["bound"] = to_string(et.bound);
  return r;
}

Record run_identical(const std::string& command, const std::string& path,
                     const sysdef::SystemDefinition& def, sysdef::SolveMethod method,
                     const SolverOptions& opts, std::string& warning) {
  const auto& sys = *def.identical;
  Record r;
  r["command"] = command;
  r["status"] = "ok";
  r["inputs"] = identical_inputs(path, def);
  r["inputs"]["method"] = sysdef::to_string(method);

  NuLambda numbers;
  std::optional<GroundStateResult> filling;
  if (def.state == sysdef::StateKind::modes) {
    numbers = decompose(def.dimension, def.spec.internal);
  }

  if (method == sysdef::SolveMethod::dosm) {
    if (def.state != sysdef::StateKind::modes) {
      filling = def.state == sysdef::StateKind::bgs
                    ? bgs(sys.n, sys.dimension, 2.0)
                    : fgs_fill(sys.n, sys.dimension, def.degeneracy, 2.0);
      numbers = filling->nu_lambda();
    }
    const auto rep = dosm_identical(sys, numbers.lambda, numbers.nu, opts);
    const Record et = et_block(rep.orbital, def.unit);
    r["energy"] = number(*rep.dosm_energy * def.unit);
    r["nu"] = number(numbers.nu);
    r["lambda"] = number(numbers.lambda);
    r["phi"] = number(rep.phi);
    r["variables"] = et["variables"];
    r["residuals"] = et["residuals"];
    r["dosm"] = {{"orbital_energy", number(rep.orbital.energy * def.unit)},
                 {"mu", number(rep.mu)},
                 {"stiffness", number(rep.stiffness)},
                 {"slope", number(rep.slope)}};
    r["iterations"] = {{"fixed_point", 0}};
  } else {
    const bool improved = method == sysdef::SolveMethod::iet;
    IetSolution sol;
    int iterations = 0;
    if (def.state == sysdef::StateKind::modes) {
      sol = improved ? solve_iet(sys, numbers, opts) : solve_with_phi(sys, numbers, 2.0, opts);
    } else {
      const auto stats =
          def.state == sysdef::StateKind::bgs ? Statistics::boson : Statistics::fermion;
      auto g = solve_ground_identical(sys, stats, def.degeneracy, improved, opts);
      sol = g.solution;
      filling = g.filling;
      iterations = g.fixed_point_iterations;
      warning = g.warning;
    }
    Record et = et_block(sol.et, def.unit);
    r["energy"] = et["energy"];
    r["nu"] = number(sol.numbers.nu);
    r["lambda"] = number(sol.numbers.lambda);
    r["phi"] = number(sol.phi);
    r["q"] = et["q"];
    r["variables"] = et["variables"];
    r["residuals"] = et["residuals"];
    r["root_count"] = et["root_count"];
    r["bound"] = et["bound"];
    r["iterations"] = {{"fixed_point", iterations}};
  }
  if (filling) r["filling"] = filling_record(*filling);
  return r;
}

// ---------------------------------------------------------------- N_a + 1

Record np1_block(const Np1Solution& s, double unit) {
  Record r;
  r["energy"] = number(s.energy * unit);
  r["q_a"] = number(s.q_a);
  r["q_b"] = number(s.q_b);
  r["variables"] = {{"p_a", number(s.p_a)},
                    {"r_aa", number(s.r_aa)},
                    {"P0", number(s.P0)},
                    {"R0", number(s.R0)},
                    {"p_a_prime", number(s.p_a_prime)},
                    {"r0_prime", number(s.r0_prime)}};
  r["residuals"] = {{"quantization_a", number(s.quantization_residual_a)},
                    {"quantization_b", number(s.quantization_residual_b)},
                    {"motion_a", number(s.motion_residual_a)},
                    {"motion_b", number(s.motion_residual_b)}};
  r["iterations"] = {{"newton", s.iterations},
                     {"converged_starts", s.converged_starts},
                     {"distinct_roots", s.distinct_roots}};
  return r;
}

Record run_np1(const std::string& command, const std::string& path,
               const sysdef::SystemDefinition& def, sysdef::SolveMethod method,
               const Np1Options& opts, std::string& warning) {
  const auto& sys = *def.n_plus_one;
  Record r;
  r["command"] = command;
  r["status"] = "ok";
  r["inputs"] = {{"definition", path},
                 {"particles", "n_plus_one"},
                 {"n_a", sys.n_a},
                 {"dimension", sys.dimension},
                 {"kinetic_a", sys.kinetic_a.describe()},
                 {"kinetic_b", sys.kinetic_b.describe()},
                 {"potential_aa", sys.potential_aa.describe()},
                 {"potential_ab", sys.potential_ab.describe()},
                 {"state", sysdef::to_string(def.state)},
                 {"degeneracy", def.degeneracy},
                 {"method", sysdef::to_string(method)},
                 {"unit", number(def.unit)}};

  Np1Solution sol;
  Np1Numbers numbers;
  PhiPair phi{2.0, 2.0};
  int fixed_point = 0;
  std::optional<GroundStateResult> filling;
  std::optional<DosmNp1Report> dosm;

  const bool modes = def.state == sysdef::StateKind::modes;
  const auto stats = def.state == sysdef::StateKind::fgs ? Statistics::fermion : Statistics::boson;
  if (modes) numbers = decompose_np1(def.spec);

  if (method == sysdef::SolveMethod::dosm) {
    if (!modes) {
      auto g = solve_ground_np1(sys, stats, def.degeneracy, Method::et, opts);
      numbers = g.numbers;
      filling = g.filling;
    }
    dosm = dosm_np1(sys, numbers.lambda_a, numbers.lambda_b, numbers.nu_a, numbers.nu_b, opts);
    sol = dosm->orbital;
    phi = {dosm->phi_a, dosm->phi_b};
  } else if (modes) {
    const auto it = method == sysdef::SolveMethod::iet
                        ? solve_iet_np1(sys, numbers, opts)
                        : solve_np1_with_phi(sys, numbers, {2.0, 2.0}, opts);
    sol = it.et;
    phi = it.phi;
  } else {
    auto g = solve_ground_np1(sys, stats, def.degeneracy,
                              method == sysdef::SolveMethod::iet ? Method::iet : Method::et, opts);
    sol = g.solution;
    numbers = g.numbers;
    phi = g.phi;
    filling = g.filling;
    fixed_point = g.fixed_point_iterations;
    warning = g.warning;
  }

  Record b = np1_block(sol, def.unit);
  r["energy"] = dosm ? number(*dosm->dosm_energy * def.unit) : b["energy"];
  r["numbers"] = {{"nu_a", number(numbers.nu_a)},
                  {"lambda_a", number(numbers.lambda_a)},
                  {"nu_b", number(numbers.nu_b)},
                  {"lambda_b", number(numbers.lambda_b)}};
  r["phi_a"] = number(phi.phi_a);
  r["phi_b"] = number(phi.phi_b);
  r["q_a"] = b["q_a"];
  r["q_b"] = b["q_b"];
  r["variables"] = b["variables"];
  r["residuals"] = b["residuals"];
  r["iterations"] = b["iterations"];
  r["iterations"]["fixed_point"] = fixed_point;
  if (dosm) {
    r["dosm"] = {{"orbital_energy", number(dosm->orbital.energy * def.unit)},
                 {"mu_a", number(dosm->form.mu_a)},
                 {"mu_b", number(dosm->form.mu_b)},
                 {"k_a", number(dosm->form.k_a)},
                 {"k_b", number(dosm->form.k_b)},
                 {"k_c", number(dosm->form.k_c)},
                 {"mode_a", number(dosm->modes.a)},
                 {"mode_b", number(dosm->modes.b)}};
  }
  if (filling) r["filling"] = filling_record(*filling);
  return r;
}

// ---------------------------------------------------------------- others

double default_nucleus_mass(double z) {
  for (const auto& row : repro::fixtures_for(4))
    if (row.num("z") == z) return row.num("mass");
  throw InputError("no built-in nucleus mass for this Z; pass --mass");
}

Record run_atom(double z, int electrons, std::optional<double> mass, const std::string& method,
                const Np1Options& opts, std::string& warning) {
  const double m = mass ? *mass : default_nucleus_mass(z);
  const AtomResult a = solve_atom(z, electrons, m, method == "iet" ? Method::iet : Method::et, opts);
  warning = a.warning;
  Record b = np1_block(a.solution, 1.0);
  Record r;
  r["command"] = "atom";
  r["status"] = "ok";
  r["inputs"] = {{"z", number(z)},
                 {"electrons", electrons},
                 {"nucleus_mass", number(m)},
                 {"method", method},
                 {"unit_ev", number(kHartreeEv)}};
  r["energy"] = number(a.binding_ev);
  r["eigenvalue"] = number(a.energy);
  r["numbers"] = {{"nu_a", number(a.numbers.nu_a)},
                  {"lambda_a", number(a.numbers.lambda_a)},
                  {"nu_b", number(a.numbers.nu_b)},
                  {"lambda_b", number(a.numbers.lambda_b)}};
  r["phi_a"] = number(a.phi.phi_a);
  r["phi_b"] = number(a.phi.phi_b);
  r["variables"] = b["variables"];
  r["residuals"] = b["residuals"];
  r["iterations"] = b["iterations"];
  r["iterations"]["fixed_point"] = a.fixed_point_iterations;
  r["filling"] = filling_record(a.filling);
  return r;
}

Record run_fgs(int n, int dimension, int degeneracy, double phi, const std::string& statistics) {
  if (n < 1) throw InputError("N must be >= 1");
  if (dimension < 1) throw InputError("D must be >= 1");
  if (degeneracy < 1) throw InputError("d must be >= 1");
  if (!(phi > 0.0)) throw InputError("phi must be positive");
  const bool fermion = statistics == "fermion";
  const GroundStateResult g =
      fermion ? fgs_fill(n, dimension, degeneracy, phi) : bgs(n, dimension, phi);
  Record r;
  r["command"] = "fgs";
  r["status"] = "ok";
  r["inputs"] = {{"n", n}, {"dimension", dimension}, {"degeneracy", degeneracy},
                 {"phi", number(phi)}, {"statistics", statistics}};
  r["q_phi"] = number(g.q_phi);
  r["nu"] = number(g.nu);
  r["lambda"] = number(g.lambda);
  if (fermion && (phi == 2.0 || phi == 1.0))
    r["closed_form"] = number(fgs_closed(n, dimension, degeneracy,
                                         phi == 2.0 ? FgsVariant::phi2 : FgsVariant::phi1));
  if (fermion) r["approximation"] = number(fgs_approx(n, dimension, degeneracy, phi));
  r["filling"] = filling_record(g);
  return r;
}

Record run_critical(const std::string& shape, double m, int n, const std::string& statistics,
                    int degeneracy, int dimension, const std::string& q_source) {
  if (n < 2) throw InputError("N must be >= 2");
  const Law v = shape_by_name(shape);
  double q = 0.0;
  if (statistics == "boson") {
    q = bgs(n, dimension, 2.0).q_phi;
  } else if (q_source == "approx") {
    q = fgs_approx(n, dimension, degeneracy, 2.0);
  } else {
    q = fgs_fill(n, dimension, degeneracy, 2.0).q_phi;
  }
  const double u = u_star(v);
  Record r;
  r["command"] = "critical-coupling";
  r["status"] = "ok";
  r["inputs"] = {{"shape", shape},     {"m", number(m)},
                 {"n", n},             {"statistics", statistics},
                 {"degeneracy", degeneracy}, {"dimension", dimension},
                 {"q_source", statistics == "boson" ? "bgs" : q_source}};
  r["q"] = number(q);
  r["u"] = number(u);
  r["v_u"] = number(v(u));
  r["g"] = number(critical_g(v, m, n, q));
  return r;
}

Record row_record(const repro::RowReport& row) {
  Record r;
  r["command"] = "reproduce";
  r["table"] = row.table;
  r["row"] = row.row;
  r["label"] = row.label;
  r["pass"] = row.pass();
  Record values = Record::object();
  for (const auto& [k, v] : row.values) values[k] = number(v);
  r["values"] = values;
  Record checks = Record::object();
  for (const auto& c : row.checks) {
    checks[c.name] = {{"computed", number(c.computed)},
                      {"reference", number(c.reference)},
                      {"deviation", number(c.deviation)},
                      {"tolerance", number(c.tolerance)},
                      {"relative", c.relative},
                      {"informational", c.informational},
                      {"pass", c.pass}};
  }
  r["checks"] = checks;
  r["error"] = row.error;
  r["note"] = row.note;
  return r;
}

std::vector<std::pair<std::string, std::string>> row_columns(const repro::RowReport& row) {
  std::vector<std::pair<std::string, std::string>> cols;
  cols.emplace_back("row", std::to_string(row.row));
  cols.emplace_back("label", row.label);
  for (const auto& [k, v] : row.values) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    cols.emplace_back(k, buf);
  }
  std::string failed;
  for (const auto& c : row.checks)
    if (!c.pass && !c.informational) failed += (failed.empty() ? "" : ",") + c.name;
  cols.emplace_back("result", row.pass() ? "pass" : "FAIL " + failed);
  return cols;
}

int run_reproduce(const std::string& which, bool serial, const Globals& g, Emitter& emit,
                  std::ostream& out, std::ostream& err) {
  std::vector<int> tables;
  if (which == "all") {
    tables = {1, 2, 3, 4};
  } else if (which == "1" || which == "2" || which == "3" || which == "4") {
    tables = {std::stoi(which)};
  } else {
    throw InputError("--table must be 1, 2, 3, 4 or all");
  }
  bool all_pass = true;
  std::vector<Record> records;
  for (int t : tables) {
    const auto rep = repro::run_table(t, !serial);
    if (g.output == "pretty") {
      std::vector<std::vector<std::pair<std::string, std::string>>> rows;
      for (const auto& row : rep.rows) rows.push_back(row_columns(row));
      out << "table " << t << '\n';
      report::write_columns(rows, out);
      out << '\n';
    } else {
      for (const auto& row : rep.rows) records.push_back(row_record(row));
    }
    int passed = 0;
    for (const auto& row : rep.rows) passed += row.pass() ? 1 : 0;
    if (!g.quiet) {
      err << "table " << t << ": " << passed << "/" << rep.rows.size() << " rows pass\n";
      for (const auto& row : rep.rows)
        if (!row.error.empty()) err << "table " << t << " row " << row.row << ": " << row.error << '\n';
    }
    all_pass = all_pass && rep.pass();
  }
  emit.emit_all(records);
  return all_pass ? kOk : kRowsFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Envelope-theory solver for N-body bound states", "envelope"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--output", g.output, "Record format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--tol", g.tol, "Residual acceptance tolerance (relative)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress warnings and summaries on stderr");

  std::string def_path;
  int root_index = 0;
  auto* solve_id = app.add_subcommand("solve-identical", "Solve an identical-particle definition");
  auto* iet_id = app.add_subcommand("iet-identical", "IET for an identical-particle definition");
  auto* solve_np = app.add_subcommand("solve-np1", "Solve an N_a+1 definition");
  auto* iet_np = app.add_subcommand("iet-np1", "IET for an N_a+1 definition");
  for (auto* s : {solve_id, iet_id, solve_np, iet_np})
    s->add_option("definition", def_path, "System definition file")->required();
  for (auto* s : {solve_id, iet_id})
    s->add_option("--root-index", root_index, "Root to report, by increasing energy")
        ->check(CLI::NonNegativeNumber);

  auto* atom = app.add_subcommand("atom", "Atom as electrons plus nucleus");
  double z = 0.0;
  int electrons = 0;
  std::optional<double> mass;
  std::string atom_method = "et";
  atom->add_option("--Z", z, "Nuclear charge")->required()->check(CLI::PositiveNumber);
  atom->add_option("--electrons", electrons, "Number of electrons (>= 2)")->required();
  atom->add_option("--mass", mass, "Nucleus mass in electron masses");
  atom->add_option("--method", atom_method)->check(CLI::IsMember({"et", "iet"}));

  auto* fgs = app.add_subcommand("fgs", "Ground-state level filling");
  int fn = 0, fd = 3, fdeg = 2;
  double fphi = 2.0;
  std::string fstats = "fermion";
  fgs->add_option("--N", fn, "Number of particles")->required();
  fgs->add_option("--D", fd, "Dimension")->capture_default_str();
  fgs->add_option("--d", fdeg, "Internal degeneracy")->capture_default_str();
  fgs->add_option("--phi", fphi, "Radial weight phi")->capture_default_str();
  fgs->add_option("--statistics", fstats)->check(CLI::IsMember({"boson", "fermion"}));

  auto* crit = app.add_subcommand("critical-coupling", "Critical coupling of -g v(r)");
  std::string shape = "gaussian", cstats = "boson", qsource = "fill";
  double cm = 1.0;
  int cn = 2, cdeg = 2, cdim = 3;
  crit->add_option("--shape", shape)->check(CLI::IsMember({"gaussian", "exponential", "rational"}));
  crit->add_option("--m", cm, "Particle mass")->check(CLI::PositiveNumber);
  crit->add_option("--N", cn, "Number of particles");
  crit->add_option("--statistics", cstats)->check(CLI::IsMember({"boson", "fermion"}));
  crit->add_option("--d", cdeg, "Fermion degeneracy");
  crit->add_option("--D", cdim, "Dimension");
  crit->add_option("--q-source", qsource, "Fermion Q from level filling or the large-N formula")
      ->check(CLI::IsMember({"fill", "approx"}));

  auto* repro_cmd = app.add_subcommand("reproduce", "Recompute the reference tables");
  std::string table;
  bool serial = false;
  repro_cmd->add_option("--table", table, "1, 2, 3, 4 or all")->required();
  repro_cmd->add_flag("--serial", serial, "Run rows one after another");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report::write_json(error_record("input", e.what(), kInputError), err);
    return kInputError;
  }

  SolverOptions sopts;
  sopts.residual_tol = g.tol;
  sopts.root_index = root_index;
  Np1Options nopts;
  nopts.residual_tol = g.tol;

  Emitter emit(g, out);
  std::string warning;
  try {
    if (solve_id->parsed() || iet_id->parsed()) {
      const auto def = sysdef::load_definition(def_path);
      if (!def.identical) throw InputError("definition describes an N_a+1 system; use solve-np1");
      const auto method = iet_id->parsed() ? sysdef::SolveMethod::iet : def.method;
      emit.emit(run_identical(iet_id->parsed() ? "iet-identical" : "solve-identical", def_path, def,
                              method, sopts, warning));
    } else if (solve_np->parsed() || iet_np->parsed()) {
      const auto def = sysdef::load_definition(def_path);
      if (!def.n_plus_one) throw InputError("definition describes identical particles; use solve-identical");
      const auto method = iet_np->parsed() ? sysdef::SolveMethod::iet : def.method;
      emit.emit(run_np1(iet_np->parsed() ? "iet-np1" : "solve-np1", def_path, def, method, nopts,
                        warning));
    } else if (atom->parsed()) {
      emit.emit(run_atom(z, electrons, mass, atom_method, nopts, warning));
    } else if (fgs->parsed()) {
      emit.emit(run_fgs(fn, fd, fdeg, fphi, fstats));
    } else if (crit->parsed()) {
      emit.emit(run_critical(shape, cm, cn, cstats, cdeg, cdim, qsource));
    } else if (repro_cmd->parsed()) {
      return run_reproduce(table, serial, g, emit, out, err);
    }
  } catch (const InputError& e) {
    report::write_json(error_record(e.kind(), e.what(), kInputError), err);
    return kInputError;
  } catch (const NonConvergenceError& e) {
    Record r = error_record(e.kind(), e.what(), kSolverError);
    r["last_r_aa"] = number(e.last_r_aa());
    r["last_R0"] = number(e.last_R0());
    r["last_residual"] = number(e.last_residual());
    report::write_json(r, err);
    return kSolverError;
  } catch (const NoRootError& e) {
    Record r = error_record(e.kind(), e.what(), kSolverError);
    r["scan_trace"] = e.trace();
    report::write_json(r, err);
    return kSolverError;
  } catch (const Error& e) {
    report::write_json(error_record(e.kind(), e.what(), kSolverError), err);
    return kSolverError;
  }
  if (!warning.empty() && !g.quiet) err << "warning: " << warning << '\n';
  return kOk;
}

}  // namespace envelope::cli
