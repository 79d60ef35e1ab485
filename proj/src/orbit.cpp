#include "mol/orbit.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mol/errors.hpp"

namespace mol {

using nlohmann::json;

namespace {

// Vanishing cycles d1..d4 sit at the vertices of the quadrilateral and the
// cycle gamma is their product; trapezoid adds d5 at the apex of the
// adjacent triangle, whose real cycle g1 contributes g1 and [d2,d3].
constexpr std::string_view kGeneric4 = R"json({
  "name": "generic4",
  "alphabet": ["d1", "d2", "d3", "d4", "d5", "d6"],
  "cycle": "d1 d2 d3 d4",
  "auxiliary_cycles": {},
  "orbit_families": [
    {"template": "d1 d2 d3 d4"},
    {"template": "[d1,d2]"}, {"template": "[d1,d3]"}, {"template": "[d1,d4]"},
    {"template": "[d1,d5]"}, {"template": "[d1,d6]"}, {"template": "[d2,d3]"},
    {"template": "[d2,d4]"}, {"template": "[d2,d5]"}, {"template": "[d2,d6]"},
    {"template": "[d3,d4]"}, {"template": "[d3,d5]"}, {"template": "[d3,d6]"},
    {"template": "[d4,d5]"}, {"template": "[d4,d6]"}, {"template": "[d5,d6]"}
  ],
  "intersections": [
    ["gamma", "d1", 1], ["gamma", "d2", 1], ["gamma", "d3", 1], ["gamma", "d4", 1]
  ],
  "notes": "Four lines in general position, one vanishing cycle per double point. The commutator subgroup lies in the orbit, encoded by every commutator [di,dj]."
})json";

constexpr std::string_view kTrapezoid = R"json({
  "name": "trapezoid",
  "alphabet": ["d1", "d2", "d3", "d4", "d5"],
  "cycle": "d1 d2 d3 d4",
  "auxiliary_cycles": {"g1": "d5"},
  "orbit_families": [
    {"template": "d1 d2 d3 d4"},
    {"template": "g1"},
    {"template": "[d2,d3]"},
    {"template": "[d1 d2, ad(d2)^m(d2 d3)]", "parameter": "m", "range": [0, "c-2"]}
  ],
  "intersections": [
    ["gamma", "g1", 1], ["g1", "d2", 1], ["g1", "d3", 1], ["g1", "d5", 1],
    ["gamma", "d1", 1], ["gamma", "d2", 1], ["gamma", "d3", 1], ["gamma", "d4", 1]
  ],
  "notes": "Quadrilateral with exactly one pair of parallel sides next to a triangle. The orbit of g1 enters through g1 itself and [d2,d3]."
})json";

constexpr std::string_view kParallelogram = R"json({
  "name": "parallelogram",
  "alphabet": ["d1", "d2", "d3", "d4"],
  "cycle": "d1 d2 d3 d4",
  "auxiliary_cycles": {},
  "orbit_families": [
    {"template": "d1 d2 d3 d4"},
    {"template": "[d1 d2, ad(d2)^m(d2 d3)]", "parameter": "m", "range": [0, "c-2"]}
  ],
  "intersections": [
    ["gamma", "d1", 1], ["gamma", "d2", 1], ["gamma", "d3", 1], ["gamma", "d4", 1]
  ],
  "notes": "Two pairs of parallel lines bounding a parallelogram."
})json";

const std::map<std::string_view, std::string_view>& builtins() {
  static const std::map<std::string_view, std::string_view> table{
      {"generic4", kGeneric4}, {"parallelogram", kParallelogram}, {"trapezoid", kTrapezoid}};
  return table;
}

RangeBound parse_bound(const json& j, const std::string& path) {
  if (j.is_number_integer()) return RangeBound{j.get<long>(), false};
  if (!j.is_string()) throw ConfigError(path, "expected an integer or \"c\", \"c-N\", \"c+N\"");
  std::string s = j.get<std::string>();
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
          s.end());
  if (s.empty() || s[0] != 'c') throw ConfigError(path, "bound must be relative to the class c");
  if (s.size() == 1) return RangeBound{0, true};
  if ((s[1] != '-' && s[1] != '+') || s.size() == 2) throw ConfigError(path, "malformed bound '" + s + "'");
  long offset = 0;
  for (std::size_t i = 2; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ConfigError(path, "malformed bound '" + s + "'");
    offset = offset * 10 + (s[i] - '0');
    if (offset > 1000) throw ConfigError(path, "offset too large");
  }
  return RangeBound{s[1] == '-' ? -offset : offset, true};
}

json bound_to_json(const RangeBound& b) {
  if (!b.relative_to_class) return b.value;
  if (b.value == 0) return "c";
  return std::string("c") + (b.value < 0 ? "-" : "+") + std::to_string(b.value < 0 ? -b.value : b.value);
}

Word parse_at(const std::string& text, const AlphabetPtr& alphabet, const WordSymbols& symbols,
              const std::string& path) {
  try {
    return parse_word(text, alphabet, symbols);
  } catch (const ParseError& e) {
    throw ConfigError(path, e.what());
  }
}

const json& require(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string require_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

}  // namespace

// ------------------------------------------------------------ Configuration

WordSymbols Configuration::symbols() const {
  WordSymbols s;
  for (const auto& [name, word] : auxiliary_cycles) s.words.emplace(name, word);
  return s;
}

std::vector<Word> Configuration::orbit_words(int cutoff) const {
  std::vector<Word> out;
  WordSymbols sym = symbols();
  for (const auto& family : orbit_families) {
    if (!family.parameter) {
      out.push_back(parse_word(family.template_text, alphabet, sym));
      continue;
    }
    const long from = family.from.resolve(cutoff);
    const long to = family.to.resolve(cutoff);
    for (long m = from; m <= to; ++m) {
      sym.parameters[*family.parameter] = m;
      out.push_back(parse_word(family.template_text, alphabet, sym));
    }
    sym.parameters.erase(*family.parameter);
  }
  return out;
}

std::optional<long> Configuration::intersection(std::string_view a, std::string_view b) const {
  for (const auto& i : intersections) {
    if (i.first == a && i.second == b) return i.value;
    if (i.first == b && i.second == a) return -i.value;
  }
  return std::nullopt;
}

Configuration config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
  static const std::set<std::string> known{"name", "alphabet", "cycle", "auxiliary_cycles",
                                           "orbit_families", "intersections", "notes"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError(key, "unknown field");
  }

  const std::string name = require_string(require(j, "name", ""), "name");

  const json& alpha = require(j, "alphabet", "");
  if (!alpha.is_array() || alpha.empty()) throw ConfigError("alphabet", "expected a nonempty array of names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    names.push_back(require_string(alpha[i], "alphabet[" + std::to_string(i) + "]"));
  }
  AlphabetPtr alphabet;
  try {
    alphabet = make_alphabet(names);
  } catch (const DomainError& e) {
    throw ConfigError("alphabet", e.what());
  }

  std::vector<std::pair<std::string, Word>> aux;
  WordSymbols symbols;
  if (auto it = j.find("auxiliary_cycles"); it != j.end()) {
    if (!it->is_object()) throw ConfigError("auxiliary_cycles", "expected an object of named words");
    for (const auto& [aux_name, value] : it->items()) {
      const std::string path = "auxiliary_cycles." + aux_name;
      if (alphabet->find(aux_name) || aux_name == "gamma" || aux_name == "ad") {
        throw ConfigError(path, "name clashes with a generator or reserved name");
      }
      Word w = parse_at(require_string(value, path), alphabet, symbols, path);
      symbols.words.emplace(aux_name, w);
      aux.emplace_back(aux_name, std::move(w));
    }
  }

  Word cycle = parse_at(require_string(require(j, "cycle", ""), "cycle"), alphabet, symbols, "cycle");

  std::vector<OrbitFamily> families;
  if (auto it = j.find("orbit_families"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("orbit_families", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "orbit_families[" + std::to_string(i) + "]";
      const json& f = (*it)[i];
      if (!f.is_object()) throw ConfigError(path, "expected an object");
      for (const auto& [key, value] : f.items()) {
        if (key != "template" && key != "parameter" && key != "range") {
          throw ConfigError(path + "." + key, "unknown field");
        }
      }
      OrbitFamily family;
      family.template_text = require_string(require(f, "template", path), path + ".template");
      const bool has_range = f.contains("range");
      if (f.contains("parameter")) {
        family.parameter = require_string(f["parameter"], path + ".parameter");
        if (alphabet->find(*family.parameter) || symbols.words.count(*family.parameter)) {
          throw ConfigError(path + ".parameter", "parameter name clashes with a cycle name");
        }
      } else if (has_range) {
        family.parameter = "m";
      }
      if (family.parameter && !has_range) throw ConfigError(path + ".range", "parametric family needs a range");
      if (has_range) {
        const json& r = f["range"];
        if (!r.is_array() || r.size() != 2) throw ConfigError(path + ".range", "expected [from, to]");
        family.from = parse_bound(r[0], path + ".range[0]");
        family.to = parse_bound(r[1], path + ".range[1]");
        if (family.from.resolve(2) < 0) throw ConfigError(path + ".range[0]", "parameter values must be nonnegative");
      }
      WordSymbols probe = symbols;
      if (family.parameter) probe.parameters[*family.parameter] = 0;
      parse_at(family.template_text, alphabet, probe, path + ".template");
      families.push_back(std::move(family));
    }
  }

  std::vector<Intersection> intersections;
  if (auto it = j.find("intersections"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("intersections", "expected an array");
    auto known_cycle = [&](const std::string& s) {
      return s == "gamma" || alphabet->find(s).has_value() || symbols.words.count(s) > 0;
    };
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "intersections[" + std::to_string(i) + "]";
      const json& e = (*it)[i];
      if (!e.is_array() || e.size() != 3 || !e[2].is_number_integer()) {
        throw ConfigError(path, "expected [cycle, cycle, integer]");
      }
      Intersection x{require_string(e[0], path + "[0]"), require_string(e[1], path + "[1]"), e[2].get<long>()};
      if (!known_cycle(x.first)) throw ConfigError(path + "[0]", "unknown cycle '" + x.first + "'");
      if (!known_cycle(x.second)) throw ConfigError(path + "[1]", "unknown cycle '" + x.second + "'");
      if (x.first == x.second && x.value != 0) throw ConfigError(path, "self-intersection must be 0");
      for (const auto& prev : intersections) {
        const bool same = prev.first == x.first && prev.second == x.second;
        const bool swapped = prev.first == x.second && prev.second == x.first;
        if ((same && prev.value != x.value) || (swapped && prev.value != -x.value)) {
          throw ConfigError(path, "intersection numbers are not antisymmetric");
        }
      }
      intersections.push_back(std::move(x));
    }
  }

  std::string notes;
  if (auto it = j.find("notes"); it != j.end()) notes = require_string(*it, "notes");

  return Configuration{name,     alphabet,        std::move(cycle),         std::move(aux),
                       std::move(families), std::move(intersections), std::move(notes)};
}

json to_json(const Configuration& cfg) {
  json j;
  j["name"] = cfg.name;
  j["alphabet"] = cfg.alphabet->names();
  j["cycle"] = to_string(cfg.cycle);
  j["auxiliary_cycles"] = json::object();
  for (const auto& [name, w] : cfg.auxiliary_cycles) j["auxiliary_cycles"][name] = to_string(w);
  j["orbit_families"] = json::array();
  for (const auto& f : cfg.orbit_families) {
    json fj{{"template", f.template_text}};
    if (f.parameter) {
      fj["parameter"] = *f.parameter;
      fj["range"] = json::array({bound_to_json(f.from), bound_to_json(f.to)});
    }
    j["orbit_families"].push_back(std::move(fj));
  }
  j["intersections"] = json::array();
  for (const auto& i : cfg.intersections) j["intersections"].push_back(json::array({i.first, i.second, i.value}));
  j["notes"] = cfg.notes;
  return j;
}

std::vector<std::string> builtin_config_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : builtins()) names.emplace_back(name);
  return names;
}

std::string builtin_config_text(std::string_view name) {
  auto it = builtins().find(name);
  if (it == builtins().end()) throw ConfigError("config", "no built-in configuration '" + std::string(name) + "'");
  return std::string(it->second);
}

Configuration load_config(std::string_view path_or_name) {
  std::string text;
  if (builtins().count(path_or_name)) {
    text = builtin_config_text(path_or_name);
  } else {
    const std::filesystem::path path(path_or_name);
    std::ifstream in(path);
    if (!in) {
      throw ConfigError("config", "'" + std::string(path_or_name) +
                                      "' is neither a built-in configuration nor a readable file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

// ---------------------------------------------------------------- ideals

LieContext make_lie_context(std::size_t rank, int cutoff, std::size_t max_basis) {
  LieContext ctx;
  ctx.basis = hall_basis(rank, cutoff, max_basis);
  ctx.table = std::make_shared<const LetterBracketTable>(ctx.basis);
  return ctx;
}

std::vector<LieElement> orbit_generators(const Configuration& cfg, const LieContext& ctx) {
  std::vector<LieElement> gens;
  auto push = [&](const Word& w) {
    if (w.is_identity()) return;
    LieElement x = log_leading(w, ctx.basis);
    if (!x.is_zero()) gens.push_back(std::move(x));
  };
  push(cfg.cycle);
  for (const auto& w : cfg.orbit_words(ctx.basis->cutoff())) push(w);
  return gens;
}

GradedSubspace orbit_ideal(const Configuration& cfg, const LieContext& ctx) {
  const auto gens = orbit_generators(cfg, ctx);
  return ideal_closure(gens, *ctx.table);
}

GradedSubspace commutator_ideal(const GradedSubspace& orbit, const LieContext& ctx) {
  return bracket_with_algebra(orbit, *ctx.table);
}

// ------------------------------------------------------------ invariants

std::string to_string(const InvariantValue& v) {
  switch (v.kind) {
    case InvariantValue::Kind::Exact:
      return std::to_string(v.value);
    case InvariantValue::Kind::AtLeast:
      return "≥ " + std::to_string(v.value);
    case InvariantValue::Kind::TrivialGroup:
      break;
  }
  return "trivial group";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedTrue:
      return "certified-true";
    case Verdict::CertifiedFalse:
      return "certified-false";
    case Verdict::Undetermined:
      break;
  }
  return "undetermined-at-cutoff";
}

QuotientAlgebra::QuotientAlgebra(const GradedSubspace& orbit, LieContext ctx)
    : ctx_(std::move(ctx)), kernel_(ctx_.basis) {
  if (orbit.basis_ptr() != ctx_.basis) throw MismatchError("orbit ideal over a different basis");
  for (int d = 2; d <= cutoff(); ++d) kernel_.component(d) = orbit.component(d);
}

std::size_t QuotientAlgebra::dimension(int degree) const {
  return ctx_.basis->degree_size(degree) - kernel_.component(degree).rank();
}

std::vector<std::size_t> QuotientAlgebra::dimensions() const {
  std::vector<std::size_t> dims;
  for (int d = 1; d <= cutoff(); ++d) dims.push_back(dimension(d));
  return dims;
}

LieElement QuotientAlgebra::reduce(const LieElement& x) const {
  LieElement out(ctx_.basis);
  for (int d = 1; d <= cutoff(); ++d) {
    auto v = x.component(d);
    if (v.empty()) continue;
    out += LieElement::from_component(ctx_.basis, d, kernel_.component(d).reduce(std::move(v)));
  }
  return out;
}

std::vector<LieElement> QuotientAlgebra::complement_basis(int degree) const {
  const auto pivots = kernel_.component(degree).pivots();
  std::vector<LieElement> out;
  const std::size_t begin = ctx_.basis->degree_begin(degree);
  std::size_t p = 0;
  for (std::size_t col = 0; col < ctx_.basis->degree_size(degree); ++col) {
    if (p < pivots.size() && pivots[p] == col) {
      ++p;
      continue;
    }
    out.push_back(LieElement::basis_element(ctx_.basis, begin + col));
  }
  return out;
}

NilpotenceResult nilpotence_class(const QuotientAlgebra& q) {
  if (q.dimension(1) == 0) return {InvariantValue::trivial(), std::nullopt};
  // q is generated in degree 1, so q_{j+1} = 0 forces every higher degree
  // to vanish as well.
  for (int j = 1; j + 1 <= q.cutoff(); ++j) {
    if (q.dimension(j + 1) == 0) return {InvariantValue::exact(j), std::nullopt};
  }
  const int top = q.cutoff();
  return {InvariantValue::at_least(top), GradedWitness{top, q.complement_basis(top).front()}};
}

DerivedResult derived_length(const QuotientAlgebra& q, const NilpotenceResult& nilpotence) {
  DerivedResult out;
  if (nilpotence.value.kind == InvariantValue::Kind::TrivialGroup) {
    out.value = InvariantValue::trivial();
    return out;
  }
  const int c = q.cutoff();
  const auto& basis = q.context().basis;
  // Reduced representatives of q^j, one echelon basis per degree.
  std::vector<EchelonBasis> current;
  for (int d = 1; d <= c; ++d) current.emplace_back(basis->degree_size(d));
  for (int d = 2; d <= c; ++d) {
    for (const auto& x : q.complement_basis(d)) current[d - 1].insert(x.component(d));
  }
  for (int j = 1;; ++j) {
    int lowest = 0;
    for (int d = 1; d <= c && lowest == 0; ++d) {
      if (current[d - 1].rank() > 0) lowest = d;
    }
    if (lowest == 0) {
      out.value = nilpotence.value.kind == InvariantValue::Kind::Exact ? InvariantValue::exact(j)
                                                                       : InvariantValue::at_least(j);
      return out;
    }
    out.witnesses.emplace_back(
        j, GradedWitness{lowest, LieElement::from_component(basis, lowest, current[lowest - 1].rows().front())});

    std::vector<EchelonBasis> next;
    for (int d = 1; d <= c; ++d) next.emplace_back(basis->degree_size(d));
    bool any = false;
    for (int a = 1; a <= c; ++a) {
      for (int b = a; a + b <= c; ++b) {
        if (next[a + b - 1].is_full()) continue;
        for (const auto& ra : current[a - 1].rows()) {
          const LieElement x = LieElement::from_component(basis, a, ra);
          const auto& rows_b = current[b - 1].rows();
          for (const auto& rb : rows_b) {
            const LieElement y = LieElement::from_component(basis, b, rb);
            const LieElement z = q.reduce(bracket(x, y));
            if (!z.is_zero()) any = next[a + b - 1].insert(z.component(a + b)) || any;
          }
        }
      }
    }
    current = std::move(next);
    if (!any) {
      // q^{j+1} vanishes through the cutoff.
      const bool certified = nilpotence.value.kind == InvariantValue::Kind::Exact;
      out.value = certified ? InvariantValue::exact(j + 1) : InvariantValue::at_least(j + 1);
      return out;
    }
  }
}

// ----------------------------------------------------------------- depth

std::vector<LevelVerdict> level_verdicts(const GradedSubspace& orbit, const GradedSubspace& commutator) {
  const int c = orbit.basis().cutoff();
  std::vector<bool> fails(static_cast<std::size_t>(c) + 1, false);
  for (int d = 2; d <= c; ++d) {
    fails[d] = orbit.component(d).rank() > commutator.component(d).rank();
  }
  std::vector<LevelVerdict> out;
  for (int j = 1; j < c; ++j) {
    LevelVerdict v;
    v.level = j;
    for (int d = j + 1; d <= c; ++d) {
      if (fails[d]) v.failing_degrees.push_back(d);
    }
    if (j > c - 2) {
      v.verdict = Verdict::Undetermined;
    } else if (v.failing_degrees.empty()) {
      v.verdict = Verdict::CertifiedTrue;
    } else {
      v.verdict = Verdict::CertifiedFalse;
      const int d = v.failing_degrees.front();
      for (const auto& row : orbit.component(d).reduced_rows()) {
        if (!commutator.component(d).contains(row)) {
          v.witness = GradedWitness{d, LieElement::from_component(orbit.basis_ptr(), d, row)};
          break;
        }
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

InvariantValue depth_from_levels(const std::vector<LevelVerdict>& levels, bool* monotone) {
  std::vector<const LevelVerdict*> decided;
  for (const auto& l : levels) {
    if (l.verdict != Verdict::Undetermined) decided.push_back(&l);
  }
  bool mono = true;
  bool seen_pass = false;
  for (const auto* l : decided) {
    if (l->verdict == Verdict::CertifiedTrue) {
      seen_pass = true;
    } else if (seen_pass) {
      mono = false;
    }
  }
  if (monotone != nullptr) *monotone = mono;
  if (decided.empty()) return InvariantValue::at_least(1);
  if (decided.back()->verdict == Verdict::CertifiedFalse) {
    return InvariantValue::at_least(decided.back()->level + 1);
  }
  std::size_t first = decided.size();
  while (first > 0 && decided[first - 1]->verdict == Verdict::CertifiedTrue) --first;
  return InvariantValue::exact(decided[first]->level);
}

DepthReport orbit_depth(const Configuration& cfg, int cutoff, const OrbitOptions& options) {
  if (cutoff < 2) throw DomainError("class cutoff must be at least 2");
  if (cutoff > options.max_class) {
    throw ResourceLimit("class " + std::to_string(cutoff) + " exceeds the cap " + std::to_string(options.max_class));
  }
  const LieContext ctx = make_lie_context(cfg.alphabet->rank(), cutoff, options.max_basis);
  const GradedSubspace orbit = orbit_ideal(cfg, ctx);
  const GradedSubspace commutator = commutator_ideal(orbit, ctx);
  if (!commutator.is_subspace_of(orbit)) throw InvariantViolation("[O, pi1] is not contained in O");

  DepthReport r;
  r.config = cfg.name;
  r.alphabet = cfg.alphabet;
  r.cutoff = cutoff;
  r.algebra_dimensions = ctx.basis->dimensions();
  r.orbit_dimensions = orbit.dimensions();
  r.commutator_dimensions = commutator.dimensions();
  r.levels = level_verdicts(orbit, commutator);
  r.k = depth_from_levels(r.levels, &r.monotone);

  const QuotientAlgebra q(orbit, ctx);
  r.quotient_dimensions = q.dimensions();
  const auto nil = nilpotence_class(q);
  r.n = nil.value;
  r.nilpotence_witness = nil.witness;
  const auto der = derived_length(q, nil);
  r.d = der.value;
  r.derived_witnesses = der.witnesses;
  return r;
}

InequalityCheck verify_inequalities(const DepthReport& r) {
  InequalityCheck out;
  std::ostringstream why;
  const bool n_known = r.n.is_exact();
  const int n = r.n.value;
  if (n_known && r.k.kind == InvariantValue::Kind::Exact) {
    if (r.k.value > n + 1) {
      throw InvariantViolation("report violates k <= n+1: k = " + std::to_string(r.k.value) +
                               ", n = " + std::to_string(n));
    }
    out.k_le_n_plus_1_checked = true;
    why << "k = " << r.k.value << " <= n+1 = " << n + 1 << "; ";
  } else if (n_known && r.k.value > n + 1) {
    throw InvariantViolation("report violates k <= n+1: k " + to_string(r.k) + ", n = " + std::to_string(n));
  } else {
    why << "k <= n+1 not checkable (k " << to_string(r.k) << ", n " << to_string(r.n) << "); ";
  }
  if (n_known && r.d.is_exact()) {
    if (r.d.value > n) {
      throw InvariantViolation("report violates d <= n: d = " + std::to_string(r.d.value) +
                               ", n = " + std::to_string(n));
    }
    out.d_le_n_checked = true;
    why << "d = " << r.d.value << " <= n = " << n << "; ";
  } else if (n_known && r.d.value > n) {
    throw InvariantViolation("report violates d <= n: d " + to_string(r.d) + ", n = " + std::to_string(n));
  } else {
    why << "d <= n not checkable (d " << to_string(r.d) << ", n " << to_string(r.n) << "); ";
  }
  if (r.k.kind == InvariantValue::Kind::Exact) {
    out.melnikov_bound = r.k.value;
    why << "first nonzero Melnikov function has length <= " << r.k.value;
  } else {
    why << "no Melnikov length bound at this cutoff";
  }
  out.explanation = why.str();
  return out;
}

// ------------------------------------------------------------------ JSON

json to_json(const InvariantValue& v) {
  static const char* kinds[] = {"exact", "at-least", "trivial-group"};
  return json{{"kind", kinds[static_cast<int>(v.kind)]}, {"value", v.value}, {"text", to_string(v)}};
}

namespace {

json witness_json(const GradedWitness& w, const Alphabet* names) {
  return json{{"degree", w.degree}, {"element", to_string(w.element, names)}};
}

}  // namespace

json to_json(const DepthReport& r) {
  const Alphabet* names = r.alphabet.get();
  json j;
  j["config"] = r.config;
  j["class"] = r.cutoff;
  j["qualifier"] = r.qualifier;
  j["dimensions"] = {{"algebra", r.algebra_dimensions},
                     {"orbit_ideal", r.orbit_dimensions},
                     {"commutator_ideal", r.commutator_dimensions},
                     {"quotient", r.quotient_dimensions}};
  j["levels"] = json::array();
  for (const auto& l : r.levels) {
    json lj{{"j", l.level}, {"verdict", to_string(l.verdict)}, {"failing_degrees", l.failing_degrees}};
    lj["witness"] = l.witness ? witness_json(*l.witness, names) : json(nullptr);
    j["levels"].push_back(std::move(lj));
  }
  j["monotone"] = r.monotone;
  j["k"] = to_json(r.k);
  j["n"] = to_json(r.n);
  j["d"] = to_json(r.d);
  j["nilpotence_witness"] = r.nilpotence_witness ? witness_json(*r.nilpotence_witness, names) : json(nullptr);
  j["derived_witnesses"] = json::array();
  for (const auto& [level, w] : r.derived_witnesses) {
    json wj = witness_json(w, names);
    wj["j"] = level;
    j["derived_witnesses"].push_back(std::move(wj));
  }
  return j;
}

json to_json(const InequalityCheck& c) {
  json j{{"k_le_n_plus_1_checked", c.k_le_n_plus_1_checked},
         {"d_le_n_checked", c.d_le_n_checked},
         {"explanation", c.explanation}};
  j["melnikov_length_bound"] = c.melnikov_bound ? json(*c.melnikov_bound) : json(nullptr);
  return j;
}

json to_json(const GradedSubspace& s, const Alphabet* names) {
  const auto& basis = s.basis();
  json j{{"qualifier", "rational"}, {"degrees", json::array()}};
  for (int d = 1; d <= basis.cutoff(); ++d) {
    json dj{{"degree", d}, {"dimension", s.component(d).rank()}};
    json hall = json::array();
    const std::size_t begin = basis.degree_begin(d);
    for (std::size_t i = 0; i < basis.degree_size(d); ++i) hall.push_back(basis.to_string(begin + i, names));
    dj["hall_basis"] = std::move(hall);
    json rows = json::array();
    for (const auto& row : s.component(d).reduced_rows()) {
      json rj = json::array();
      for (const auto& [col, value] : row) rj.push_back(json::array({col, to_string(value)}));
      rows.push_back(std::move(rj));
    }
    dj["rows"] = std::move(rows);
    j["degrees"].push_back(std::move(dj));
  }
  return j;
}

}  // namespace mol
