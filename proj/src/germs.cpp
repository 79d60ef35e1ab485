#include "mol/germs.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mol/expr_parser.hpp"

namespace mol {

using nlohmann::json;

// ----------------------------------------------------------------- EpsPoly

EpsPoly::EpsPoly(const Rational& c) {
  if (c != 0) terms_.emplace(EpsMonomial{}, c);
}

EpsPoly EpsPoly::eps(int eps_order) {
  EpsPoly p;
  p.eps_order_ = eps_order;
  p.add_term(EpsMonomial{1, {}}, 1);
  return p;
}

EpsPoly EpsPoly::unit(std::string name, int eps_order) {
  EpsPoly p;
  p.eps_order_ = eps_order;
  p.add_term(EpsMonomial{0, {{std::move(name), 1}}}, 1);
  return p;
}

EpsPoly EpsPoly::truncated(int eps_order) const {
  EpsPoly out;
  out.eps_order_ = std::min(eps_order, eps_order_);
  for (const auto& [m, c] : terms_) {
    if (m.eps <= out.eps_order_) out.terms_.emplace(m, c);
  }
  return out;
}

void EpsPoly::add_term(const EpsMonomial& m, const Rational& c) {
  if (m.eps > eps_order_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& other) {
  if (other.eps_order_ < eps_order_) *this = truncated(other.eps_order_);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

EpsPoly& EpsPoly::operator-=(const EpsPoly& other) {
  if (other.eps_order_ < eps_order_) *this = truncated(other.eps_order_);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

EpsPoly EpsPoly::operator-() const {
  EpsPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool EpsPoly::operator==(const EpsPoly& other) const {
  const int order = std::min(eps_order_, other.eps_order_);
  return truncated(order).terms_ == other.truncated(order).terms_;
}

EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
  EpsPoly out;
  out.eps_order_ = std::min(a.eps_order_, b.eps_order_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.eps + mb.eps > out.eps_order_) continue;
      EpsMonomial m{ma.eps + mb.eps, ma.units};
      for (const auto& [name, e] : mb.units) {
        if ((m.units[name] += e) == 0) m.units.erase(name);
      }
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::string to_string(const EpsPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    std::string mono;
    auto append = [&mono](const std::string& name, int e) {
      if (!mono.empty()) mono += '*';
      mono += name;
      if (e != 1) mono += "^" + std::to_string(e);
    };
    if (m.eps != 0) append("eps", m.eps);
    for (const auto& [name, e] : m.units) append(name, e);
    std::string term;
    if (mono.empty()) {
      term = to_string(c);
    } else if (c == 1) {
      term = mono;
    } else if (c == -1) {
      term = "-" + mono;
    } else {
      term = to_string(c) + "*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// ----------------------------------------------------------- germ parsing

namespace {

// Polynomial in z with EpsPoly coefficients, truncated above z^order.
struct ZPoly {
  std::vector<EpsPoly> c;

  ZPoly operator+(const ZPoly& o) const {
    ZPoly r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
  }
  ZPoly operator-(const ZPoly& o) const {
    ZPoly r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
  }
  ZPoly operator*(const ZPoly& o) const { return ZPoly{detail::series_product(c, o.c)}; }
};

std::optional<Rational> as_constant(const ZPoly& p) {
  for (std::size_t i = 1; i < p.c.size(); ++i) {
    if (!p.c[i].is_zero()) return std::nullopt;
  }
  const auto& terms = p.c[0].terms();
  if (terms.empty()) return Rational(0);
  if (terms.size() == 1 && terms.begin()->first == EpsMonomial{}) return terms.begin()->second;
  return std::nullopt;
}

}  // namespace

Germ parse_germ(std::string_view text, int order, int eps_order) {
  if (order < 2) throw DomainError("germ truncation order must be at least 2");
  if (eps_order < 0) throw DomainError("eps truncation order must be nonnegative");
  const std::size_t size = static_cast<std::size_t>(order) + 1;
  auto constant = [size](const EpsPoly& v) {
    ZPoly p{std::vector<EpsPoly>(size)};
    p.c[0] = v;
    return p;
  };
  ExprHooks<ZPoly> hooks;
  hooks.constant = [&](const Rational& q) { return constant(EpsPoly(q)); };
  hooks.symbol = [&](std::string_view name, std::size_t) {
    if (name == "z") {
      ZPoly p{std::vector<EpsPoly>(size)};
      p.c[1] = EpsPoly(1);
      return p;
    }
    if (name == "eps" || name == "ε") return constant(EpsPoly::eps(eps_order));
    return constant(EpsPoly::unit(std::string(name), eps_order));
  };
  hooks.divide = [](const ZPoly& a, const ZPoly& b, std::size_t pos) {
    const auto q = as_constant(b);
    if (!q) throw ParseError("germ coefficients may only be divided by rational constants", pos);
    if (*q == 0) throw ParseError("division by zero", pos);
    ZPoly r = a;
    const EpsPoly inv(Rational(1) / *q);
    for (auto& x : r.c) x = x * inv;
    return r;
  };
  const ZPoly p = parse_expression(text, hooks);
  if (!p.c[0].is_zero()) throw ParseError("germ has a nonzero constant term", 0);
  if (!(p.c[1] == EpsPoly(1))) throw ParseError("germ is not parabolic: the z coefficient must be 1", 0);
  Germ g(order);
  for (int k = 2; k <= order; ++k) g.set_coefficient(k, p.c[static_cast<std::size_t>(k)].truncated(eps_order));
  return g;
}

// ------------------------------------------------------------ assignments

namespace {

const std::map<std::string_view, std::string_view>& builtin_assignments() {
  static const std::map<std::string_view, std::string_view> table{
      {"abelian", R"json({"generators": {"d1": "z + z^2", "d2": "z + 2*z^2 + 2*z^3 + z^4"}})json"},
      {"levels12", R"json({"generators": {"d1": "z + eps*u1*z^2", "d2": "z + eps*u2*z^3"}})json"},
      {"plain12", R"json({"generators": {"d1": "z + z^2", "d2": "z + z^3"}})json"},
  };
  return table;
}

int read_order(const json& j, const char* key, int fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) throw ConfigError(key, "expected an integer");
  return it->get<int>();
}

}  // namespace

const Germ* GermAssignment::find(std::string_view name) const {
  for (const auto& [n, g] : germs) {
    if (n == name) return &g;
  }
  return nullptr;
}

GermAssignment assignment_from_json(const json& j, std::optional<int> order, std::optional<int> eps_order) {
  if (!j.is_object()) throw ConfigError("", "germ file must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "order" && key != "eps_order" && key != "generators") throw ConfigError(key, "unknown field");
  }
  GermAssignment a;
  a.order = order.value_or(read_order(j, "order", kDefaultGermOrder));
  a.eps_order = eps_order.value_or(read_order(j, "eps_order", kDefaultEpsOrder));
  if (a.order < 2) throw ConfigError("order", "must be at least 2");
  if (a.eps_order < 0) throw ConfigError("eps_order", "must be nonnegative");
  auto it = j.find("generators");
  if (it == j.end() || !it->is_object()) throw ConfigError("generators", "expected an object of germ expressions");
  std::vector<std::string> names;
  for (const auto& [name, value] : it->items()) {
    const std::string path = "generators." + name;
    if (!value.is_string()) throw ConfigError(path, "expected a germ expression string");
    try {
      a.germs.emplace_back(name, parse_germ(value.get<std::string>(), a.order, a.eps_order));
    } catch (const ParseError& e) {
      throw ConfigError(path, e.what());
    }
    names.push_back(name);
  }
  try {
    a.alphabet = make_alphabet(std::move(names));
  } catch (const DomainError& e) {
    throw ConfigError("generators", e.what());
  }
  return a;
}

std::vector<std::string> builtin_assignment_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : builtin_assignments()) out.emplace_back(name);
  return out;
}

std::string builtin_assignment_text(std::string_view name) {
  auto it = builtin_assignments().find(name);
  if (it == builtin_assignments().end()) throw ConfigError("gens", "no built-in germ assignment '" + std::string(name) + "'");
  return std::string(it->second);
}

GermAssignment load_assignment(std::string_view path_or_name, std::optional<int> order, std::optional<int> eps_order) {
  std::string text;
  if (builtin_assignments().count(path_or_name)) {
    text = builtin_assignment_text(path_or_name);
  } else {
    std::ifstream in{std::filesystem::path(path_or_name)};
    if (!in) {
      throw ConfigError("gens", "'" + std::string(path_or_name) + "' is neither a built-in assignment nor a readable file");
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
  return assignment_from_json(j, order, eps_order);
}

Germ poincare_rep(const GermAssignment& asgn, const Word& w) {
  std::vector<Germ> images;
  std::vector<Germ> inverses;
  for (std::size_t i = 0; i < w.alphabet()->rank(); ++i) {
    const Germ* g = asgn.find(w.alphabet()->name(i));
    images.push_back(g ? *g : Germ(asgn.order));
    inverses.push_back(g ? invert(*g) : Germ(asgn.order));
  }
  Germ result(asgn.order);
  for (const auto& letter : w.letters()) {
    const std::string& name = w.alphabet()->name(letter.generator);
    if (!asgn.find(name)) throw DomainError("generator '" + name + "' has no germ assigned");
    result = compose(result, letter.sign > 0 ? images[letter.generator] : inverses[letter.generator]);
  }
  return result;
}

// ------------------------------------------------------------------- JSON

json to_json(const Germ& g) {
  json coefficients = json::object();
  for (int k = 2; k <= g.order(); ++k) {
    if (!g.coefficient(k).is_zero()) coefficients[std::to_string(k)] = to_string(g.coefficient(k));
  }
  const auto p = level(g);
  return json{{"text", to_string(g)},
              {"order", g.order()},
              {"level", p ? json(*p) : json("identity-to-order-" + std::to_string(g.order()))},
              {"coefficients", std::move(coefficients)}};
}

json to_json(const LevelCheck<EpsPoly>& r) {
  auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  return json{{"p", opt(r.p)},
              {"q", opt(r.q)},
              {"degree", r.degree},
              {"predicted", to_string(r.predicted)},
              {"computed", to_string(r.computed)},
              {"commutator_level", opt(r.commutator_level)},
              {"holds", r.holds},
              {"commutator", to_json(r.commutator)}};
}

json to_json(const DichotomyResult<EpsPoly>& r) {
  json j{{"verdict", r.abelian ? "abelian" : "non-abelian"}, {"scope", "at truncation"}};
  j["pair"] = r.pair ? json::array({r.pair->first, r.pair->second}) : json(nullptr);
  j["chain"] = json::array();
  for (std::size_t i = 0; i < r.chain.size(); ++i) {
    const auto& step = r.chain[i];
    j["chain"].push_back(json{{"step", i + 1},
                              {"expression", step.expression},
                              {"level", step.level},
                              {"leading_coefficient", to_string(leading_coefficient(step.germ))},
                              {"germ", to_string(step.germ)}});
  }
  return j;
}

}  // namespace mol
