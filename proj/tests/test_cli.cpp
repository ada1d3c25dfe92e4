#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "envelope/cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = envelope::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string example(const std::string& name) {
  return std::string(ENVELOPE_EXAMPLES_DIR) + "/" + name;
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) v.push_back(json::parse(l));
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("solve-identical on three harmonic bosons") {
  const auto o = run({"solve-identical", example("three_bosons.def")});
  REQUIRE(o.code == envelope::cli::kOk);
  const auto recs = lines(o.out);
  REQUIRE(recs.size() == 1);
  const auto& r = recs[0];
  CHECK(r["status"] == "ok");
  CHECK(r["energy"].get<double>() == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-10));

  // re-check the reported solution from its printed variables
  const double rho = r["variables"]["rho0"], p = r["variables"]["p0"], q = r["q"];
  CHECK(std::sqrt(3.0) * rho * p == doctest::Approx(q).epsilon(1e-9));
  CHECK(3.0 * p == doctest::Approx(3.0 * rho).epsilon(1e-9));
  CHECK(1.5 * p * p + 1.5 * rho * rho == doctest::Approx(r["energy"].get<double>()).epsilon(1e-9));
}

TEST_CASE("iet and other definitions") {
  auto o = run({"iet-identical", example("three_bosons.def")});
  REQUIRE(o.code == envelope::cli::kOk);
  CHECK(lines(o.out)[0]["energy"].get<double>() == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-9));

  o = run({"solve-identical", example("cornell_fermions.def")});
  CHECK(o.code == envelope::cli::kOk);
  o = run({"solve-np1", example("uroh.def")});
  REQUIRE(o.code == envelope::cli::kOk);
  CHECK(lines(o.out)[0]["energy"].get<double>() == doctest::Approx(5.307).epsilon(1e-3));
  o = run({"solve-np1", example("helium.def")});
  CHECK(o.code == envelope::cli::kOk);

  o = run({"solve-np1", example("three_bosons.def")});
  CHECK(o.code == envelope::cli::kInputError);
}

TEST_CASE("atom") {
  const auto o = run({"atom", "--Z", "2", "--electrons", "2", "--method", "et"});
  REQUIRE(o.code == envelope::cli::kOk);
  CHECK(lines(o.out)[0]["energy"].get<double>() == doctest::Approx(33.0).epsilon(0.03));
}

TEST_CASE("reproduce table 1 as csv") {
  const auto o = run({"--output", "csv", "--quiet", "reproduce", "--table", "1"});
  CHECK(o.code == envelope::cli::kOk);
  std::istringstream in(o.out);
  std::vector<std::string> rows;
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) rows.push_back(l);
  REQUIRE(rows.size() == 8);
  const auto header = split_csv(rows[0]);
  std::size_t pass_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == "pass") pass_col = i;
  REQUIRE(pass_col < header.size());
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(split_csv(rows[i])[pass_col] == "true");
}

TEST_CASE("csv and json carry the same numbers") {
  const auto j = run({"fgs", "--N", "5", "--D", "3", "--d", "2", "--statistics", "fermion"});
  const auto c = run({"--output", "csv", "fgs", "--N", "5", "--D", "3", "--d", "2", "--statistics", "fermion"});
  REQUIRE(j.code == 0);
  REQUIRE(c.code == 0);
  const auto rec = lines(j.out)[0];
  CHECK(rec["q_phi"].get<double>() == doctest::Approx(9.0));
  std::istringstream in(c.out);
  std::string h, v;
  std::getline(in, h);
  std::getline(in, v);
  const auto keys = split_csv(h), vals = split_csv(v);
  REQUIRE(keys.size() == vals.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] != "q_phi" && keys[i] != "nu" && keys[i] != "lambda") continue;
    CHECK(vals[i] == rec[keys[i]].dump());
  }
}

TEST_CASE("critical coupling") {
  const auto o = run({"critical-coupling", "--shape", "gaussian", "--N", "2", "--m", "1"});
  REQUIRE(o.code == envelope::cli::kOk);
  const auto r = lines(o.out)[0];
  CHECK(r["u"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("input errors") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"solve-identical", "/nonexistent.def"},
           {"fgs", "--N", "0"},
           {"atom", "--Z", "-1", "--electrons", "2"},
           {"reproduce", "--table", "9"},
           {"--output", "xml", "fgs", "--N", "3"}}) {
    const auto o = run(args);
    CHECK(o.code == envelope::cli::kInputError);
    const auto errs = lines(o.err);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0]["status"] == "error");
  }
}
