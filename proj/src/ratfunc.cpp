#include "mol/ratfunc.hpp"

#include <algorithm>

#include "mol/errors.hpp"
#include "mol/expr_parser.hpp"

namespace mol {

// ------------------------------------------------------------------ UPoly

UPoly::UPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::x() { return UPoly(std::vector<Rational>{0, 1}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  UPoly out = *this;
  const Rational lead = c_.back();
  for (auto& c : out.c_) c /= lead;
  return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(out));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const auto& d = b.coeffs();
  if (r.size() < d.size()) return {UPoly(), a};
  std::vector<Rational> q(r.size() - d.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational t = r[k + d.size() - 1] / d.back();
    q[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= t * d[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly u = a;
  UPoly v = b;
  while (!v.is_zero()) {
    UPoly r = divmod(u, v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

std::string to_string(const UPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    const Rational mag = abs(c[k]);
    std::string term;
    if (k == 0) {
      term = to_string(mag);
    } else {
      if (mag != 1) term = to_string(mag) + "*";
      term += var;
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (out.empty()) {
      out = (c[k] < 0 ? "-" : "") + term;
    } else {
      out += (c[k] < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

// ------------------------------------------------------------------- RatF

RatF::RatF(const Rational& c) {
  if (c != 0) num_.emplace(Key{0, 0}, UPoly(c));
}

RatF::RatF(const UPoly& p) {
  if (!p.is_zero()) num_.emplace(Key{0, 0}, p);
}

RatF RatF::x() { return RatF(UPoly::x()); }

RatF RatF::F() {
  RatF r;
  r.num_.emplace(Key{1, 0}, UPoly(Rational(1)));
  return r;
}

RatF RatF::eps() {
  RatF r;
  r.num_.emplace(Key{0, 1}, UPoly(Rational(1)));
  return r;
}

RatF RatF::fraction(std::map<Key, UPoly> numerator, const UPoly& denominator) {
  if (denominator.is_zero()) throw DomainError("zero denominator");
  RatF r;
  r.num_ = std::move(numerator);
  r.den_ = denominator;
  r.canonicalize();
  return r;
}

void RatF::canonicalize() {
  std::erase_if(num_, [](const auto& kv) { return kv.second.is_zero(); });
  if (num_.empty()) {
    den_ = UPoly(Rational(1));
    return;
  }
  UPoly g = den_;
  for (const auto& [k, p] : num_) g = gcd(g, p);
  if (g.degree() > 0) {
    den_ = divmod(den_, g).first;
    for (auto& [k, p] : num_) p = divmod(p, g).first;
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    const UPoly inv(Rational(1) / lead);
    den_ = den_ * inv;
    for (auto& [k, p] : num_) p = p * inv;
  }
}

bool RatF::is_x_only() const {
  return std::all_of(num_.begin(), num_.end(), [](const auto& kv) { return kv.first == Key{0, 0}; });
}

int RatF::degree_F() const {
  int d = -1;
  for (const auto& [k, p] : num_) d = std::max(d, k.first);
  return d;
}

RatF RatF::dF() const {
  std::map<Key, UPoly> n;
  for (const auto& [k, p] : num_) {
    if (k.first > 0) n.emplace(Key{k.first - 1, k.second}, p * UPoly(Rational(k.first)));
  }
  return fraction(std::move(n), den_);
}

RatF RatF::dx() const {
  const UPoly dd = den_.derivative();
  std::map<Key, UPoly> n;
  for (const auto& [k, p] : num_) n.emplace(k, p.derivative() * den_ - p * dd);
  return fraction(std::move(n), den_ * den_);
}

RatF& RatF::operator+=(const RatF& o) {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    for (const auto& [k, p] : o.num_) num_[k] += p;
  } else {
    for (auto& [k, p] : num_) p = p * o.den_;
    for (const auto& [k, p] : o.num_) num_[k] += p * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

RatF& RatF::operator-=(const RatF& o) { return *this += -o; }

RatF RatF::operator-() const {
  RatF r = *this;
  for (auto& [k, p] : r.num_) p = -p;
  return r;
}

RatF operator*(const RatF& a, const RatF& b) {
  std::map<RatF::Key, UPoly> n;
  for (const auto& [ka, pa] : a.num_) {
    for (const auto& [kb, pb] : b.num_) n[{ka.first + kb.first, ka.second + kb.second}] += pa * pb;
  }
  return RatF::fraction(std::move(n), a.den_ * b.den_);
}

RatF operator/(const RatF& a, const RatF& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (!b.is_x_only()) throw DomainError("denominators must depend on x only");
  std::map<RatF::Key, UPoly> n;
  for (const auto& [k, p] : a.numerator()) n.emplace(k, p * b.denominator());
  return RatF::fraction(std::move(n), a.denominator() * b.numerator().begin()->second);
}

std::string to_string(const RatF& r) {
  if (r.is_zero()) return "0";
  std::string num;
  int terms = 0;
  for (auto it = r.numerator().rbegin(); it != r.numerator().rend(); ++it) {
    const auto& [key, poly] = *it;
    std::string mono;
    auto append = [&mono](const char* name, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += name;
      if (e != 1) mono += "^" + std::to_string(e);
    };
    append("eps", key.second);
    append("F", key.first);
    std::string coeff = to_string(poly);
    bool negative = false;
    if (coeff.find(' ') != std::string::npos) {
      coeff = "(" + coeff + ")";
    } else if (coeff[0] == '-') {
      negative = true;
      coeff = coeff.substr(1);
    }
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = mono;
    } else {
      term = coeff + "*" + mono;
    }
    if (num.empty()) {
      num = (negative ? "-" : "") + term;
    } else {
      num += (negative ? " - " : " + ") + term;
    }
    ++terms;
  }
  if (r.denominator() == UPoly(Rational(1))) return num;
  std::string den = to_string(r.denominator());
  if (den.find(' ') != std::string::npos) den = "(" + den + ")";
  if (terms > 1) num = "(" + num + ")";
  return num + "/" + den;
}

RatF parse_ratf(std::string_view text) {
  ExprHooks<RatF> hooks;
  hooks.constant = [](const Rational& q) { return RatF(q); };
  hooks.symbol = [](std::string_view name, std::size_t pos) {
    if (name == "x") return RatF::x();
    if (name == "F") return RatF::F();
    if (name == "eps" || name == "ε") return RatF::eps();
    throw ParseError("unknown symbol '" + std::string(name) + "' (expected x, F or eps)", pos);
  };
  hooks.divide = [](const RatF& a, const RatF& b, std::size_t pos) {
    if (b.is_zero()) throw ParseError("division by zero", pos);
    if (!b.is_x_only()) throw ParseError("denominator must be a polynomial in x alone", pos);
    return a / b;
  };
  hooks.power = [](const RatF& base, long e, std::size_t pos) {
    if (e < 0) {
      if (base.is_zero() || !base.is_x_only()) throw ParseError("negative powers need a nonzero x-only base", pos);
      RatF inv = RatF(Rational(1)) / base;
      RatF out(Rational(1));
      for (long i = 0; i < -e; ++i) out = out * inv;
      return out;
    }
    RatF out(Rational(1));
    for (long i = 0; i < e; ++i) out = out * base;
    return out;
  };
  return parse_expression(text, hooks);
}

}  // namespace mol
