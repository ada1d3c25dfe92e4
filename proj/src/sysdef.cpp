#include "envelope/sysdef.hpp"

#include <fstream>
#include <sstream>

#include "envelope/errors.hpp"

namespace envelope::sysdef {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(const Section& s, const std::string& what) {
  throw InputError("[" + s.name + "] (line " + std::to_string(s.line) + "): " + what);
}

double to_number(const Section& s, const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(s, key + " = '" + text + "' is not a number");
  }
}

// "n l; n l; ..." (commas also accepted as separators).
std::vector<Mode> parse_modes(const Section& s, const std::string& key) {
  std::string text = s.get(key);
  for (char& c : text)
    if (c == ';' || c == ',') c = '\n';
  std::vector<Mode> modes;
  std::istringstream lines(text);
  std::string item;
  while (std::getline(lines, item)) {
    if (trim(item).empty()) continue;
    std::istringstream in(item);
    Mode m;
    std::string extra;
    if (!(in >> m.n >> m.l) || (in >> extra) || m.n < 0 || m.l < 0)
      fail(s, key + ": expected non-negative 'n l' pairs");
    modes.push_back(m);
  }
  return modes;
}

Law read_single(const Document& doc, const Section& s, const std::string& kind) {
  if (kind == "power") return Law::power(s.number("coefficient"), s.number("exponent"));
  if (kind == "signed_power") {
    const double e = s.number("exponent");
    if (e == 0.0 || !(s.number("strength") > 0.0))
      fail(s, "signed_power needs strength > 0 and exponent != 0");
    return Law::signed_power(s.number("strength"), e);
  }
  if (kind == "coulomb") return Law::coulomb(s.number("strength"));
  if (kind == "harmonic") return Law::harmonic(s.number("stiffness"));
  if (kind == "gaussian_well") return Law::gaussian_well(s.number("depth"), s.number("range"));
  if (kind == "exponential_well")
    return Law::exponential_well(s.number("depth"), s.number("range"));
  if (kind == "sum") {
    std::vector<Law::Term> terms;
    for (int i = 1;; ++i) {
      const std::string sub = s.name + "." + std::to_string(i);
      const Section* t = doc.find(sub);
      if (!t) break;
      terms.push_back({t->number("weight"), read_law(doc, sub)});
    }
    if (terms.empty()) fail(s, "sum needs sections [" + s.name + ".1], [" + s.name + ".2], ...");
    return make_weighted_sum(std::move(terms));
  }
  fail(s, "unknown law kind '" + kind + "'");
}

}  // namespace

const std::string& Section::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) fail(*this, "missing key '" + key + "'");
  return it->second;
}

double Section::number(const std::string& key) const { return to_number(*this, key, get(key)); }

double Section::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Section::integer(const std::string& key) const {
  const double v = number(key);
  if (v != static_cast<int>(v)) fail(*this, key + " must be an integer");
  return static_cast<int>(v);
}

const Section* Document::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

const Section& Document::require(const std::string& name) const {
  if (const Section* s = find(name)) return *s;
  throw InputError("missing section [" + name + "]");
}

Document parse(std::string_view text) {
  Document doc;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto current = [&]() -> Section& {
    if (doc.sections.empty()) doc.sections.push_back({"system", {}, lineno});
    return doc.sections.back();
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw InputError("line " + std::to_string(lineno) + ": malformed section header");
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      for (const auto& s : doc.sections)
        if (s.name == name)
          throw InputError("line " + std::to_string(lineno) + ": duplicate section [" + name + "]");
      doc.sections.push_back({name, {}, lineno});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw InputError("line " + std::to_string(lineno) + ": empty key");
    Section& s = current();
    if (!s.values.emplace(key, value).second)
      throw InputError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return doc;
}

Law read_law(const Document& doc, const std::string& section) {
  const Section& s = doc.require(section);
  return read_single(doc, s, s.get("kind"));
}

const char* to_string(Particles p) {
  return p == Particles::identical ? "identical" : "n_plus_one";
}

const char* to_string(StateKind s) {
  switch (s) {
    case StateKind::modes: return "modes";
    case StateKind::bgs: return "bgs";
    case StateKind::fgs: return "fgs";
  }
  return "?";
}

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::et: return "et";
    case SolveMethod::iet: return "iet";
    case SolveMethod::dosm: return "dosm";
  }
  return "?";
}

SystemDefinition parse_definition(std::string_view text) {
  const Document doc = parse(text);
  const Section& sys = doc.require("system");
  SystemDefinition def;

  const std::string particles = sys.has("particles") ? sys.get("particles") : "identical";
  if (particles == "identical") {
    def.particles = Particles::identical;
  } else if (particles == "n_plus_one") {
    def.particles = Particles::n_plus_one;
  } else {
    fail(sys, "particles must be 'identical' or 'n_plus_one'");
  }
  def.dimension = sys.has("dimension") ? sys.integer("dimension") : 3;
  def.unit = sys.number_or("unit", 1.0);
  if (!(def.unit > 0.0)) fail(sys, "unit must be positive");

  const std::string method = sys.has("method") ? sys.get("method") : "et";
  if (method == "et") def.method = SolveMethod::et;
  else if (method == "iet") def.method = SolveMethod::iet;
  else if (method == "dosm") def.method = SolveMethod::dosm;
  else fail(sys, "method must be et, iet or dosm");

  int internal_modes = 0;
  if (def.particles == Particles::identical) {
    IdenticalSystem s{sys.integer("n"), def.dimension, read_law(doc, "kinetic"),
                      read_law(doc, "potential")};
    s.validate();
    internal_modes = s.n - 1;
    def.identical = std::move(s);
  } else {
    NPlusOneSystem s{sys.integer("n_a"), def.dimension, read_law(doc, "kinetic_a"),
                     read_law(doc, "kinetic_b"), read_law(doc, "potential_aa"),
                     read_law(doc, "potential_ab")};
    s.validate();
    internal_modes = s.n_a - 1;
    def.n_plus_one = std::move(s);
  }

  const Section* st = doc.find("state");
  const std::string kind = st && st->has("kind") ? st->get("kind") : "bgs";
  if (kind == "bgs") {
    def.state = StateKind::bgs;
  } else if (kind == "fgs") {
    def.state = StateKind::fgs;
    def.degeneracy = st->integer("degeneracy");
    if (def.degeneracy < 1) fail(*st, "degeneracy must be >= 1");
  } else if (kind == "modes") {
    def.state = StateKind::modes;
    def.spec.dimension = def.dimension;
    def.spec.internal = parse_modes(*st, "internal");
    if (static_cast<int>(def.spec.internal.size()) != internal_modes)
      fail(*st, "internal must list " + std::to_string(internal_modes) + " modes");
    if (def.particles == Particles::n_plus_one) {
      const auto rel = parse_modes(*st, "relative");
      if (rel.size() != 1) fail(*st, "relative must be a single 'n l' pair");
      def.spec.relative = rel.front();
    }
  } else {
    fail(*st, "state kind must be bgs, fgs or modes");
  }
  return def;
}

SystemDefinition load_definition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open definition file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_definition(buf.str());
}

}  // namespace envelope::sysdef
