#pragma once

#include <climits>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mol/errors.hpp"
#include "mol/freegroup.hpp"
#include "mol/rational.hpp"

namespace mol {

inline constexpr int kDefaultGermOrder = 12;
inline constexpr int kDefaultEpsOrder = 4;

/// Monomial eps^k * prod(unit^e) in the coefficient ring of germs. Units are
/// formal symbols without relations.
struct EpsMonomial {
  int eps = 0;
  std::map<std::string, int> units;

  auto operator<=>(const EpsMonomial&) const = default;
};

/// Polynomial in eps and formal units over Q, with every term of eps-degree
/// above `eps_order` dropped. Constants carry no truncation and adopt the
/// order of whatever they are combined with.
class EpsPoly {
 public:
  static constexpr int kUntruncated = INT_MAX;

  EpsPoly() = default;
  EpsPoly(const Rational& c);  // NOLINT: constants embed implicitly
  EpsPoly(int c) : EpsPoly(Rational(c)) {}  // NOLINT

  static EpsPoly eps(int eps_order = kUntruncated);
  static EpsPoly unit(std::string name, int eps_order = kUntruncated);

  int eps_order() const noexcept { return eps_order_; }
  const std::map<EpsMonomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  EpsPoly truncated(int eps_order) const;
  void add_term(const EpsMonomial& m, const Rational& c);

  EpsPoly& operator+=(const EpsPoly& other);
  EpsPoly& operator-=(const EpsPoly& other);
  EpsPoly operator-() const;

  /// Equal as truncated polynomials (compared at the smaller order).
  bool operator==(const EpsPoly& other) const;

  friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b);

 private:
  int eps_order_ = kUntruncated;
  std::map<EpsMonomial, Rational> terms_;
};

inline EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
inline EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
EpsPoly operator*(const EpsPoly& a, const EpsPoly& b);

inline bool is_zero(const EpsPoly& p) { return p.is_zero(); }
/// E.g. "-eps^2*u1*u2", "3/2 + eps".
std::string to_string(const EpsPoly& p);

/// Truncated parabolic germ z + a_2 z^2 + ... + a_N z^N.
template <typename C>
class BasicGerm {
 public:
  explicit BasicGerm(int order) : a_(static_cast<std::size_t>(order) + 1, C(Rational(0))) {
    if (order < 2) throw DomainError("germ truncation order must be at least 2");
    a_[1] = C(Rational(1));
  }

  /// Germ with coefficients a_2..a_N given in order.
  static BasicGerm from_coefficients(int order, const std::vector<C>& higher) {
    BasicGerm g(order);
    if (higher.size() > static_cast<std::size_t>(order - 1)) throw DomainError("too many germ coefficients");
    for (std::size_t i = 0; i < higher.size(); ++i) g.a_[i + 2] = higher[i];
    return g;
  }

  int order() const noexcept { return static_cast<int>(a_.size()) - 1; }
  /// Coefficient of z^k for 0 <= k <= order (a_0 = 0, a_1 = 1).
  const C& coefficient(int k) const { return a_.at(static_cast<std::size_t>(k)); }
  void set_coefficient(int k, C c) {
    if (k < 2 || k > order()) throw DomainError("germ coefficient index out of range");
    a_[static_cast<std::size_t>(k)] = std::move(c);
  }

  bool is_identity() const {
    for (int k = 2; k <= order(); ++k) {
      if (!is_zero(a_[static_cast<std::size_t>(k)])) return false;
    }
    return true;
  }

  bool operator==(const BasicGerm& other) const {
    if (order() != other.order()) return false;
    for (int k = 2; k <= order(); ++k) {
      if (!(coefficient(k) == other.coefficient(k))) return false;
    }
    return true;
  }

 private:
  std::vector<C> a_;
};

namespace detail {

/// Product of two truncated series given as coefficient vectors 0..N.
template <typename C>
std::vector<C> series_product(const std::vector<C>& x, const std::vector<C>& y) {
  const std::size_t n = x.size();
  std::vector<C> out(n, C(Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (!is_zero(y[j])) out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

}  // namespace detail

/// f∘g truncated at the common order.
template <typename C>
BasicGerm<C> compose(const BasicGerm<C>& f, const BasicGerm<C>& g) {
  if (f.order() != g.order()) throw MismatchError("germs truncated at different orders");
  const int n = f.order();
  std::vector<C> gz(static_cast<std::size_t>(n) + 1, C(Rational(0)));
  for (int k = 1; k <= n; ++k) gz[k] = g.coefficient(k);
  std::vector<C> result = gz;
  std::vector<C> power = gz;
  for (int i = 2; i <= n; ++i) {
    power = detail::series_product(power, gz);
    const C& a = f.coefficient(i);
    if (is_zero(a)) continue;
    for (int k = i; k <= n; ++k) {
      if (!is_zero(power[k])) result[k] += a * power[k];
    }
  }
  BasicGerm<C> out(n);
  for (int k = 2; k <= n; ++k) out.set_coefficient(k, std::move(result[k]));
  return out;
}

/// Compositional inverse, solved one coefficient at a time: the z^m
/// coefficient of h^i (i >= 2) only involves b_1..b_{m-1}.
template <typename C>
BasicGerm<C> invert(const BasicGerm<C>& f) {
  const int n = f.order();
  const auto size = static_cast<std::size_t>(n) + 1;
  // powers[i][m] = [z^m] h^i
  std::vector<std::vector<C>> powers(size, std::vector<C>(size, C(Rational(0))));
  std::vector<C> b(size, C(Rational(0)));
  b[1] = C(Rational(1));
  powers[1][1] = b[1];
  for (int m = 2; m <= n; ++m) {
    C sum(Rational(0));
    for (int i = m; i >= 2; --i) {
      C coeff(Rational(0));
      for (int j = 1; j <= m - i + 1; ++j) {
        if (is_zero(b[j]) || is_zero(powers[i - 1][m - j])) continue;
        coeff += b[j] * powers[i - 1][m - j];
      }
      powers[i][m] = coeff;
      if (!is_zero(f.coefficient(i)) && !is_zero(coeff)) sum += f.coefficient(i) * coeff;
    }
    b[m] = C(Rational(0)) - sum;
    powers[1][m] = b[m];
  }
  BasicGerm<C> out(n);
  for (int k = 2; k <= n; ++k) out.set_coefficient(k, b[k]);
  return out;
}

/// Group commutator f∘g∘f⁻¹∘g⁻¹.
template <typename C>
BasicGerm<C> commutator(const BasicGerm<C>& f, const BasicGerm<C>& g) {
  return compose(compose(f, g), compose(invert(f), invert(g)));
}

/// Least p with a_{p+1} != 0; nullopt when f is the identity to its order.
template <typename C>
std::optional<int> level(const BasicGerm<C>& f) {
  for (int k = 2; k <= f.order(); ++k) {
    if (!is_zero(f.coefficient(k))) return k - 1;
  }
  return std::nullopt;
}

template <typename C>
C leading_coefficient(const BasicGerm<C>& f) {
  const auto p = level(f);
  return p ? f.coefficient(*p + 1) : C(Rational(0));
}

/// Commutator of two germs compared against the level lemma.
template <typename C>
struct LevelCheck {
  std::optional<int> p;
  std::optional<int> q;
  BasicGerm<C> commutator;
  std::optional<int> commutator_level;
  /// Degree examined: p+q+1 for distinct levels, 2p+1 (last degree that
  /// must vanish) for equal levels.
  int degree = 0;
  C predicted{Rational(0)};
  C computed{Rational(0)};
  bool holds = false;
};

/// For levels p != q, checks [f,g] = z + ab(p-q) z^{p+q+1} + ... exactly.
/// For p = q, checks that [f,g] is the identity through degree 2p+1.
/// Throws TruncationError when the order is below the degree examined.
template <typename C>
LevelCheck<C> commutator_level_check(const BasicGerm<C>& f, const BasicGerm<C>& g) {
  LevelCheck<C> r{level(f), level(g), commutator(f, g), std::nullopt, 0, C(Rational(0)), C(Rational(0)), false};
  r.commutator_level = level(r.commutator);
  if (!r.p || !r.q) {
    r.holds = r.commutator.is_identity();
    return r;
  }
  const int p = *r.p;
  const int q = *r.q;
  r.degree = p == q ? 2 * p + 1 : p + q + 1;
  if (r.degree > f.order()) {
    throw TruncationError("order " + std::to_string(f.order()) + " is below degree " + std::to_string(r.degree));
  }
  if (p != q) r.predicted = f.coefficient(p + 1) * g.coefficient(q + 1) * C(Rational(p - q));
  r.computed = r.commutator.coefficient(r.degree);
  bool lower_vanish = true;
  for (int k = 2; k < r.degree; ++k) lower_vanish = lower_vanish && is_zero(r.commutator.coefficient(k));
  r.holds = lower_vanish && r.computed == r.predicted;
  return r;
}

template <typename C>
struct ChainStep {
  std::string expression;
  BasicGerm<C> germ;
  int level = 0;
};

/// Either every pair of generators commutes to the truncation order, or a
/// noncommuting pair seeds a chain h_1 = [f_i, f_j], h_{s+1} = [h_s, f] of
/// nonidentity germs with strictly increasing levels.
template <typename C>
struct DichotomyResult {
  bool abelian = true;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  std::vector<ChainStep<C>> chain;
};

template <typename C>
DichotomyResult<C> group_dichotomy(const std::vector<std::pair<std::string, BasicGerm<C>>>& gens, int budget) {
  DichotomyResult<C> out;
  for (std::size_t i = 0; i < gens.size() && !out.pair; ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      BasicGerm<C> h = commutator(gens[i].second, gens[j].second);
      if (!h.is_identity()) {
        out.abelian = false;
        out.pair = std::make_pair(i, j);
        const int lv = *level(h);
        out.chain.push_back({"[" + gens[i].first + "," + gens[j].first + "]", std::move(h), lv});
        break;
      }
    }
  }
  if (out.abelian) return out;
  while (static_cast<int>(out.chain.size()) < budget) {
    const ChainStep<C>& last = out.chain.back();
    bool extended = false;
    for (const auto& [name, x] : gens) {
      const auto lx = level(x);
      if (!lx || *lx == last.level) continue;
      BasicGerm<C> next = commutator(last.germ, x);
      const auto ln = level(next);
      if (!ln || *ln <= last.level) continue;
      out.chain.push_back({"[" + last.expression + "," + name + "]", std::move(next), *ln});
      extended = true;
      break;
    }
    if (!extended) {
      throw TruncationError("truncation exhausted after " + std::to_string(out.chain.size()) +
                            " commutators (budget " + std::to_string(budget) + ")");
    }
  }
  return out;
}

/// "z + a_2 z^2 + ... + O(z^{N+1})"; multi-term coefficients in parentheses.
template <typename C>
std::string to_string(const BasicGerm<C>& f) {
  using mol::to_string;
  std::string out = "z";
  for (int k = 2; k <= f.order(); ++k) {
    const C& c = f.coefficient(k);
    if (is_zero(c)) continue;
    const std::string s = to_string(c);
    std::string body = s;
    std::string sign = " + ";
    if (s.find(' ') != std::string::npos) {
      body = "(" + s + ")";
    } else if (s[0] == '-') {
      sign = " - ";
      body = s.substr(1);
    }
    out += sign + (body == "1" ? std::string() : body + "*");
    out += "z^" + std::to_string(k);
  }
  return out + " + O(z^" + std::to_string(f.order() + 1) + ")";
}

using Germ = BasicGerm<EpsPoly>;

/// Parses a germ polynomial in z with coefficients in Q[eps, units], e.g.
/// "z + eps*u1*z^2". Names other than z and eps ("ε") are units. Division is
/// by nonzero rational constants only. Requires z-coefficient 1 and no
/// constant term.
Germ parse_germ(std::string_view text, int order = kDefaultGermOrder, int eps_order = kDefaultEpsOrder);

/// Generators assigned to parabolic germs, all at one truncation.
struct GermAssignment {
  AlphabetPtr alphabet;
  std::vector<std::pair<std::string, Germ>> germs;
  int order = kDefaultGermOrder;
  int eps_order = kDefaultEpsOrder;

  const Germ* find(std::string_view name) const;
};

/// JSON object {"order"?, "eps_order"?, "generators": {name: germ text}};
/// order arguments given here override those in the document.
GermAssignment assignment_from_json(const nlohmann::json& j, std::optional<int> order = std::nullopt,
                                    std::optional<int> eps_order = std::nullopt);
std::vector<std::string> builtin_assignment_names();
std::string builtin_assignment_text(std::string_view name);
/// Built-in name or path to a JSON file. Throws ConfigError.
GermAssignment load_assignment(std::string_view path_or_name, std::optional<int> order = std::nullopt,
                               std::optional<int> eps_order = std::nullopt);

/// Image of w under the homomorphism extending the assignment: the word
/// u v maps to P(u)∘P(v), so the rightmost letter acts first on z.
/// Throws DomainError for an unassigned generator.
Germ poincare_rep(const GermAssignment& asgn, const Word& w);

nlohmann::json to_json(const Germ& g);
nlohmann::json to_json(const LevelCheck<EpsPoly>& r);
nlohmann::json to_json(const DichotomyResult<EpsPoly>& r);

}  // namespace mol
