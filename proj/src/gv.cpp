#include "mol/gv.hpp"

#include "mol/errors.hpp"

namespace mol {

using nlohmann::json;

// ------------------------------------------------------------------ forms

OneForm operator+(const OneForm& a, const OneForm& b) { return {a.A + b.A, a.B + b.B}; }
OneForm operator-(const OneForm& a, const OneForm& b) { return {a.A - b.A, a.B - b.B}; }
OneForm operator*(const RatF& f, const OneForm& w) { return {f * w.A, f * w.B}; }
TwoForm operator+(const TwoForm& a, const TwoForm& b) { return {a.S + b.S}; }
TwoForm operator-(const TwoForm& a, const TwoForm& b) { return {a.S - b.S}; }
TwoForm operator*(const RatF& f, const TwoForm& w) { return {f * w.S}; }

OneForm differential(const RatF& f) { return {f.dx(), f.dF()}; }

TwoForm exterior_d(const OneForm& w) { return {w.A.dF() - w.B.dx()}; }

TwoForm wedge(const OneForm& a, const OneForm& b) { return {a.B * b.A - a.A * b.B}; }

namespace {

std::string coefficient_text(const std::string& s) {
  if (s == "1") return "";
  if (s == "-1") return "-";
  return "(" + s + ") ";
}

}  // namespace

std::string to_string(const OneForm& w) {
  std::string out;
  if (!w.B.is_zero()) out = coefficient_text(to_string(w.B)) + "dF";
  if (!w.A.is_zero()) {
    if (!out.empty()) out += " + ";
    out += coefficient_text(to_string(w.A)) + "dx";
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const TwoForm& w) {
  if (w.is_zero()) return "0";
  return coefficient_text(to_string(w.S)) + "dF∧dx";
}

// --------------------------------------------------------------- sequences

std::vector<TwoForm> gv_residuals(const std::vector<OneForm>& eta) {
  std::vector<TwoForm> out;
  for (std::size_t n = 0; n + 1 < eta.size(); ++n) {
    TwoForm r = exterior_d(eta[n]) - wedge(eta[0], eta[n + 1]);
    Rational binom = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      binom = binom * static_cast<long>(n - k + 1) / static_cast<long>(k);
      r = r - RatF(binom) * wedge(eta[k], eta[n - k + 1]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

GVSequence gv_sequence(const RatF& phi, int max) {
  const int need = phi.degree_F() + 2;
  if (max < 1 || max < need) {
    throw DomainError("max = " + std::to_string(max) + " is too small; need at least " + std::to_string(std::max(need, 1)));
  }
  GVSequence seq;
  seq.phi = phi;
  const RatF eps = RatF::eps();
  seq.eta.push_back(OneForm{eps * phi, RatF(Rational(1))});
  RatF derivative = phi;
  for (int k = 1; k <= max; ++k) {
    derivative = derivative.dF();
    seq.eta.push_back(OneForm{eps * derivative, RatF()});
  }
  seq.residuals = gv_residuals(seq.eta);
  seq.length = 1;
  for (std::size_t j = seq.eta.size(); j-- > 1;) {
    if (!seq.eta[j].is_zero()) {
      seq.length = static_cast<int>(j) + 1;
      break;
    }
  }
  return seq;
}

GVVerification verify_gv(const GVSequence& seq) {
  GVVerification v;
  v.residuals = gv_residuals(seq.eta);
  for (const auto& r : v.residuals) v.all_zero = v.all_zero && r.is_zero();
  for (std::size_t k = 1; k < seq.eta.size(); ++k) v.eta_dx_proportional = v.eta_dx_proportional && seq.eta[k].B.is_zero();
  for (std::size_t k = 1; k < seq.eta.size(); ++k) {
    for (std::size_t l = k + 1; l < seq.eta.size(); ++l) {
      v.eta_products_vanish = v.eta_products_vanish && wedge(seq.eta[k], seq.eta[l]).is_zero();
    }
  }
  return v;
}

int gv_length(const RatF& phi) { return phi.is_zero() ? 1 : phi.degree_F() + 1; }

std::string gv_classification(int length) {
  switch (length) {
    case 1:
      return "closed";
    case 2:
      return "Liouvillian";
    case 3:
      return "Riccati";
    default:
      return "length-" + std::to_string(length);
  }
}

json to_json(const GVSequence& seq, const GVVerification& check) {
  json j;
  j["phi"] = to_string(seq.phi);
  j["deg_F"] = seq.phi.degree_F();
  j["eta"] = json::array();
  for (std::size_t k = 0; k < seq.eta.size(); ++k) j["eta"].push_back(json{{"k", k}, {"form", to_string(seq.eta[k])}});
  j["residuals"] = json::array();
  for (std::size_t n = 0; n < check.residuals.size(); ++n) {
    j["residuals"].push_back(json{{"n", n}, {"value", to_string(check.residuals[n])}});
  }
  j["all_residuals_zero"] = check.all_zero;
  j["eta_products_vanish"] = check.eta_products_vanish;
  j["length"] = seq.length;
  j["classification"] = gv_classification(seq.length);
  if (seq.phi.is_zero()) j["note"] = "eta_0 = dF is closed";
  return j;
}

// --------------------------------------------------------------- extension

ExtElement::ExtElement(const RatF& c) {
  if (!c.is_zero()) terms_.emplace(SymbolMonomial{}, c);
}

ExtElement ExtElement::symbol(const std::string& name) {
  ExtElement e;
  e.terms_.emplace(SymbolMonomial{{name, 1}}, RatF(Rational(1)));
  return e;
}

void ExtElement::add_term(const SymbolMonomial& m, const RatF& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExtElement ExtElement::monomial_inverse() const {
  if (terms_.size() != 1) throw DomainError("only single-term elements are inverted");
  const auto& [m, c] = *terms_.begin();
  if (!c.is_x_only() || c.numerator().begin()->second.degree() != 0 || c.denominator().degree() != 0) {
    throw DomainError("coefficient of an inverted monomial must be a rational constant");
  }
  SymbolMonomial inv;
  for (const auto& [name, e] : m) inv[name] = -e;
  ExtElement out;
  out.add_term(inv, RatF(Rational(1)) / c);
  return out;
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ExtElement operator*(const ExtElement& a, const ExtElement& b) {
  ExtElement out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      SymbolMonomial m = ma;
      for (const auto& [name, e] : mb) {
        if ((m[name] += e) == 0) m.erase(name);
      }
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::string to_string(const ExtElement& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : e.terms()) {
    std::string mono;
    for (const auto& [name, k] : m) {
      if (!mono.empty()) mono += '*';
      mono += name;
      if (k != 1) mono += "^" + std::to_string(k);
    }
    std::string coeff = to_string(c);
    if (coeff.find(' ') != std::string::npos) coeff = "(" + coeff + ")";
    std::string term = mono.empty() ? coeff : coeff == "1" ? mono : coeff == "-1" ? "-" + mono : coeff + "*" + mono;
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

ExtOneForm operator+(const ExtOneForm& a, const ExtOneForm& b) { return {a.A + b.A, a.B + b.B}; }
ExtOneForm operator-(const ExtOneForm& a, const ExtOneForm& b) { return {a.A - b.A, a.B - b.B}; }
ExtOneForm operator*(const ExtElement& f, const ExtOneForm& w) { return {f * w.A, f * w.B}; }
ExtOneForm lift(const OneForm& w) { return {ExtElement(w.A), ExtElement(w.B)}; }

std::string to_string(const ExtOneForm& w) {
  std::string out;
  if (!w.B.is_zero()) out = coefficient_text(to_string(w.B)) + "dF";
  if (!w.A.is_zero()) {
    if (!out.empty()) out += " + ";
    out += coefficient_text(to_string(w.A)) + "dx";
  }
  return out.empty() ? "0" : out;
}

void DifferentialExtension::add_exponential(const std::string& name, const OneForm& alpha) {
  derivative_[name] = ExtElement::symbol(name) * lift(alpha);
}

void DifferentialExtension::add_primitive(const std::string& name, const ExtOneForm& beta) {
  derivative_[name] = beta;
}

ExtOneForm DifferentialExtension::d(const ExtElement& e) const {
  ExtOneForm out;
  for (const auto& [m, c] : e.terms()) {
    ExtElement mono;
    mono.add_term(m, RatF(Rational(1)));
    out = out + mono * lift(differential(c));
    for (const auto& [name, k] : m) {
      auto it = derivative_.find(name);
      if (it == derivative_.end()) throw DomainError("no derivation rule for symbol '" + name + "'");
      SymbolMonomial lowered = m;
      if ((lowered[name] -= 1) == 0) lowered.erase(name);
      ExtElement factor;
      factor.add_term(lowered, c * RatF(Rational(k)));
      out = out + factor * it->second;
    }
  }
  return out;
}

ExtOneForm unit_identity_residual(const OneForm& alpha) {
  DifferentialExtension ext;
  ext.add_exponential("u", alpha);
  const ExtElement u = ExtElement::symbol("u");
  const ExtOneForm du = ext.d(u);
  return u * (u.monomial_inverse() * du) - du;
}

CasaleRecord casale_verify(CasaleCase which) {
  const RatF eps = RatF::eps();
  const RatF F = RatF::F();
  const RatF x = RatF::x();
  const RatF one(Rational(1));
  const RatF over_xm1 = one / (x - one);
  const RatF over_xp1 = one / (x + one);

  CasaleRecord r;
  DifferentialExtension ext;
  RatF phi;
  ExtElement G;
  ExtElement H;
  if (which == CasaleCase::Liouville1) {
    r.name = "Liouville1";
    phi = F * over_xm1;
    const OneForm alpha{eps * over_xm1, RatF()};
    ext.add_exponential("u1", alpha);
    r.symbol_rules.push_back("du1 = u1*" + to_string(alpha) + "  (u1 = (x-1)^eps)");
    G = ExtElement::symbol("u1");
    H = G * ExtElement(F);
    r.G = "u1";
    r.H = "u1*F";
  } else {
    r.name = "Liouville2";
    phi = over_xm1 + F * over_xp1;
    const OneForm alpha{eps * over_xp1, RatF()};
    ext.add_exponential("u2", alpha);
    const ExtOneForm beta = ExtElement::symbol("u2") * lift(OneForm{eps * over_xm1, RatF()});
    ext.add_primitive("P", beta);
    r.symbol_rules.push_back("du2 = u2*" + to_string(alpha) + "  (u2 = (x+1)^eps)");
    r.symbol_rules.push_back("dP = " + to_string(beta) + "  (P = ∫ u2 d(x-1)^eps/(x-1)^eps)");
    G = ExtElement::symbol("u2");
    H = G * ExtElement(F) + ExtElement::symbol("P");
    r.G = "u2";
    r.H = "u2*F + P";
  }
  r.phi = to_string(phi);
  const OneForm eta0{eps * phi, one};
  const OneForm eta1{eps * phi.dF(), RatF()};
  r.first_integral_residual = ext.d(H) - G * lift(eta0);
  r.multiplier_residual = G.monomial_inverse() * ext.d(G) - lift(eta1);
  r.verified = r.first_integral_residual.is_zero() && r.multiplier_residual.is_zero();
  return r;
}

json to_json(const CasaleRecord& r) {
  return json{{"case", r.name},
              {"phi", r.phi},
              {"G", r.G},
              {"H", r.H},
              {"symbol_rules", r.symbol_rules},
              {"dH_minus_G_eta0", to_string(r.first_integral_residual)},
              {"dG_over_G_minus_eta1", to_string(r.multiplier_residual)},
              {"verified", r.verified}};
}

RiccatiSystem riccati_system(const RatF& phi) {
  if (phi.degree_F() != 2) {
    throw DomainError("the Riccati system needs deg_F phi = 2, got " + std::to_string(phi.degree_F()));
  }
  const GVSequence seq = gv_sequence(phi, 4);
  RiccatiSystem s;
  s.eta0 = to_string(seq.eta[0]);
  s.eta1 = to_string(seq.eta[1]);
  s.eta2 = to_string(seq.eta[2]);
  const std::string e0 = "(" + s.eta0 + ")";
  const std::string e1 = "(" + s.eta1 + ")";
  const std::string e2 = "(" + s.eta2 + ")";
  s.equations = {
      "dH = G1*" + e0,
      "dG1 = G1*(" + e1 + " + (2/G2)*" + e0 + ")",
      "dG2 = (G2^2/2)*" + e2 + " + G1*" + e1 + " + " + e0,
  };
  return s;
}

json to_json(const RiccatiSystem& s) {
  return json{{"eta0", s.eta0}, {"eta1", s.eta1}, {"eta2", s.eta2}, {"equations", s.equations}};
}

}  // namespace mol
