#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mol/rational.hpp"

namespace mol {

/// Univariate polynomial over Q in x, coefficients low to high, no
/// trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& c);  // NOLINT
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly x();

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }

  UPoly derivative() const;
  UPoly monic() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly operator-() const;
  bool operator==(const UPoly& o) const = default;

  friend UPoly operator*(const UPoly& a, const UPoly& b);

 private:
  void trim();
  std::vector<Rational> c_;
};

inline UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
inline UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
UPoly operator*(const UPoly& a, const UPoly& b);

/// Quotient and remainder; throws DomainError on a zero divisor.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero when both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

std::string to_string(const UPoly& p, const std::string& var = "x");

/// Element of Q(x)[F][eps]: a numerator polynomial in F and eps with Q[x]
/// coefficients over a monic x-only denominator, kept gcd-reduced.
class RatF {
 public:
  /// (F exponent, eps exponent).
  using Key = std::pair<int, int>;

  RatF() = default;
  RatF(const Rational& c);  // NOLINT
  RatF(const UPoly& p);     // NOLINT

  static RatF x();
  static RatF F();
  static RatF eps();
  /// n / d for a nonzero x-only d.
  static RatF fraction(std::map<Key, UPoly> numerator, const UPoly& denominator);

  const std::map<Key, UPoly>& numerator() const noexcept { return num_; }
  const UPoly& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.empty(); }
  /// True when free of F and eps.
  bool is_x_only() const;
  /// Highest power of F; -1 for zero.
  int degree_F() const;

  RatF dF() const;
  RatF dx() const;

  RatF& operator+=(const RatF& o);
  RatF& operator-=(const RatF& o);
  RatF operator-() const;
  bool operator==(const RatF& o) const = default;

  friend RatF operator*(const RatF& a, const RatF& b);

 private:
  void canonicalize();
  std::map<Key, UPoly> num_;
  UPoly den_{Rational(1)};
};

inline RatF operator+(RatF a, const RatF& b) { return a += b; }
inline RatF operator-(RatF a, const RatF& b) { return a -= b; }
RatF operator*(const RatF& a, const RatF& b);
/// Division by an x-only nonzero element; DomainError otherwise.
RatF operator/(const RatF& a, const RatF& b);

inline bool is_zero(const RatF& r) { return r.is_zero(); }
std::string to_string(const RatF& r);

/// Parses an expression in x, F and eps ("ε") such as "F/(x-1) + F^2/(x+1)".
/// Denominators must be nonzero polynomials in x alone. Throws ParseError.
RatF parse_ratf(std::string_view text);

}  // namespace mol
