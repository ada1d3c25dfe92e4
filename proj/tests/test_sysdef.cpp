#include "doctest.h"
#include "envelope/errors.hpp"
#include "envelope/sysdef.hpp"

using namespace envelope;

TEST_CASE("sections and keys") {
  const auto doc = sysdef::parse("n = 3   # comment\n[kinetic]\nkind = power\n\n[ potential ]\nkind=coulomb\n");
  REQUIRE(doc.sections.size() == 3);
  CHECK(doc.sections[0].name == "system");
  CHECK(doc.require("system").integer("n") == 3);
  CHECK(doc.require("potential").get("kind") == "coulomb");
  CHECK(doc.find("missing") == nullptr);
  CHECK_THROWS_AS(sysdef::parse("[a]\n[a]\n"), InputError);
  CHECK_THROWS_AS(sysdef::parse("[a\n"), InputError);
  CHECK_THROWS_AS(sysdef::parse("novalue\n"), InputError);
  CHECK_THROWS_AS(sysdef::parse("k = 1\nk = 2\n"), InputError);
}

TEST_CASE("laws") {
  const auto doc = sysdef::parse(R"(
[v]
kind = sum
[v.1]
weight = 1
kind = power
coefficient = 1
exponent = 1
[v.2]
weight = 1
kind = coulomb
strength = 1
[h]
kind = harmonic
stiffness = x
)");
  CHECK(sysdef::read_law(doc, "v")(1.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(sysdef::read_law(doc, "h"), InputError);
  CHECK_THROWS_AS(sysdef::read_law(sysdef::parse("[q]\nkind = cubic\n"), "q"), InputError);
}

TEST_CASE("definitions") {
  const char* text = R"(
[system]
particles = identical
n = 3
method = iet
[kinetic]
kind = power
coefficient = 0.5
exponent = 2
[potential]
kind = signed_power
strength = 0.5
exponent = 1
[state]
kind = modes
internal = 0 0; 1 2
)";
  const auto def = sysdef::parse_definition(text);
  REQUIRE(def.identical);
  CHECK(def.identical->n == 3);
  CHECK(def.method == sysdef::SolveMethod::iet);
  CHECK(def.state == sysdef::StateKind::modes);
  REQUIRE(def.spec.internal.size() == 2);
  CHECK(def.spec.internal[1].n == 1);
  CHECK(def.spec.internal[1].l == 2);

  std::string wrong_count = text;
  wrong_count.replace(wrong_count.find("0 0; 1 2"), 8, "0 0");
  CHECK_THROWS_AS(sysdef::parse_definition(wrong_count), InputError);
  CHECK_THROWS_AS(sysdef::parse_definition("[system]\nparticles = many\n"), InputError);
  CHECK_THROWS_AS(sysdef::load_definition("/nonexistent/file.def"), InputError);
}

TEST_CASE("N_a+1 definitions need a relative mode") {
  const char* text = R"(
particles = n_plus_one
n_a = 2
[kinetic_a]
kind = power
coefficient = 1
exponent = 1
[kinetic_b]
kind = power
coefficient = 1
exponent = 1
[potential_aa]
kind = harmonic
stiffness = 1
[potential_ab]
kind = harmonic
stiffness = 1
[state]
kind = modes
internal = 0 0
)";
  CHECK_THROWS_AS(sysdef::parse_definition(text), InputError);
  const auto def = sysdef::parse_definition(std::string(text) + "relative = 0 1\n");
  REQUIRE(def.n_plus_one);
  REQUIRE(def.spec.relative);
  CHECK(def.spec.relative->l == 1);
}
