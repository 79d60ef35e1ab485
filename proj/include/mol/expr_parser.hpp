#pragma once

#include <cctype>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "mol/errors.hpp"
#include "mol/rational.hpp"

namespace mol {

/// Callbacks that give meaning to a parsed arithmetic expression.
template <typename T>
struct ExprHooks {
  std::function<T(const Rational&)> constant;
  /// Value of an identifier; `pos` is its offset for error reporting.
  std::function<T(std::string_view name, std::size_t pos)> symbol;
  std::function<T(const T&, const T&, std::size_t pos)> divide;
  /// Optional; nonnegative powers fall back to repeated multiplication.
  std::function<T(const T&, long, std::size_t pos)> power;
};

/// Recursive-descent parser for
///
///   expr    = [ "+" | "-" ] term { ( "+" | "-" ) term } ;
///   term    = factor { [ "*" | "/" ] factor } ;     juxtaposition multiplies
///   factor  = primary [ "^" [ "-" ] integer ] ;
///   primary = integer | name | "(" expr ")" ;
///
/// Names are identifiers; non-ASCII bytes count as letters so that "ε"
/// is a name. Throws ParseError.
template <typename T>
class ExprParser {
 public:
  ExprParser(std::string_view text, const ExprHooks<T>& hooks) : text_(text), hooks_(hooks) {}

  T parse() {
    skip();
    if (pos_ == text_.size()) fail("empty expression");
    T value = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  static bool name_char(char ch, bool first) {
    const auto u = static_cast<unsigned char>(ch);
    if (u >= 0x80 || std::isalpha(u) || ch == '_') return true;
    return !first && std::isdigit(u);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_primary() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char ch = text_[pos_];
    return ch == '(' || std::isdigit(static_cast<unsigned char>(ch)) || name_char(ch, true);
  }

  T expr() {
    T value = hooks_.constant(Rational(0));
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    T first = term();
    value = negate ? value - first : first;
    for (;;) {
      if (accept('+')) {
        value = value + term();
      } else if (accept('-')) {
        value = value - term();
      } else {
        return value;
      }
    }
  }

  T term() {
    T value = factor();
    for (;;) {
      if (accept('*')) {
        value = value * factor();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        T divisor = factor();
        value = hooks_.divide(value, divisor, at);
      } else if (starts_primary()) {
        value = value * factor();
      } else {
        return value;
      }
    }
  }

  T factor() {
    T base = primary();
    if (!accept('^')) return base;
    skip();
    const std::size_t at = pos_;
    const bool negative = accept('-');
    skip();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected integer exponent");
    long e = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = e * 10 + (text_[pos_++] - '0');
      if (e > 10'000) fail("exponent too large");
    }
    if (negative) e = -e;
    if (hooks_.power) return hooks_.power(base, e, at);
    if (e < 0) throw ParseError("negative exponent not allowed here", at);
    T value = hooks_.constant(Rational(1));
    for (long i = 0; i < e; ++i) value = value * base;
    return value;
  }

  T primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      T value = expr();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return hooks_.constant(Rational(std::string(text_.substr(start, pos_ - start))));
    }
    if (name_char(ch, true)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && name_char(text_[pos_], false)) ++pos_;
      return hooks_.symbol(text_.substr(start, pos_ - start), start);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  const ExprHooks<T>& hooks_;
  std::size_t pos_ = 0;
};

template <typename T>
T parse_expression(std::string_view text, const ExprHooks<T>& hooks) {
  return ExprParser<T>(text, hooks).parse();
}

}  // namespace mol
