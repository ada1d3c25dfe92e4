#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envelope/identical.hpp"
#include "envelope/nplus1.hpp"

namespace envelope::sysdef {

/// Line-oriented `key = value` text with `[section]` headers; `#` starts a
/// comment. Keys before the first header belong to section "system".
struct Section {
  std::string name;
  std::map<std::string, std::string> values;
  int line = 0;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
};

struct Document {
  std::vector<Section> sections;
  const Section* find(const std::string& name) const;
  const Section& require(const std::string& name) const;
};

Document parse(std::string_view text);

/// Reads a law from `section`. Kinds: power (coefficient, exponent),
/// signed_power (strength, exponent), coulomb (strength), harmonic
/// (stiffness), gaussian_well / exponential_well (depth, range) and sum,
/// whose terms live in sections `<section>.1`, `<section>.2`, ... each with
/// a `weight` and its own law keys.
Law read_law(const Document& doc, const std::string& section);

enum class Particles { identical, n_plus_one };
enum class StateKind { modes, bgs, fgs };
enum class SolveMethod { et, iet, dosm };

const char* to_string(Particles p);
const char* to_string(StateKind s);
const char* to_string(SolveMethod m);

struct SystemDefinition {
  Particles particles = Particles::identical;
  int dimension = 3;
  std::optional<IdenticalSystem> identical;
  std::optional<NPlusOneSystem> n_plus_one;
  StateKind state = StateKind::bgs;
  int degeneracy = 1;  // fermion internal degeneracy
  QuantumSpec spec;    // filled for StateKind::modes
  SolveMethod method = SolveMethod::et;
  double unit = 1.0;   // multiplies reported energies
};

/// Throws InputError with the offending line on malformed input.
SystemDefinition parse_definition(std::string_view text);
SystemDefinition load_definition(const std::string& path);

}  // namespace envelope::sysdef
