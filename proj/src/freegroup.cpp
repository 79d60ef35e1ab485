#include "mol/freegroup.hpp"

#include <cctype>
#include <set>
#include <utility>

#include "mol/errors.hpp"

namespace mol {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  }
  return true;
}

void require_same(const Word& u, const Word& v) {
  if (!same_alphabet(u, v)) throw MismatchError("words are over different alphabets");
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw DomainError("generator name '" + n + "' is not an identifier");
    if (n == "ad") throw DomainError("'ad' is reserved in word expressions");
    if (!seen.insert(n).second) throw DomainError("duplicate generator name '" + n + "'");
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

AlphabetPtr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(names));
}

std::vector<Letter> free_reduce(std::vector<Letter> letters) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (top > 0 && letters[top - 1] == letters[i].inverse()) {
      --top;
    } else {
      letters[top++] = letters[i];
    }
  }
  letters.resize(top);
  return letters;
}

Word::Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw DomainError("word needs an alphabet");
}

Word::Word(AlphabetPtr alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(free_reduce(std::move(letters))) {
  if (!alphabet_) throw DomainError("word needs an alphabet");
  for (const auto& l : letters_) {
    if (l.generator >= alphabet_->rank() || (l.sign != 1 && l.sign != -1)) {
      throw DomainError("letter outside the alphabet");
    }
  }
}

Word Word::generator(AlphabetPtr alphabet, std::size_t index) {
  return Word(std::move(alphabet), {Letter{static_cast<std::uint32_t>(index), 1}});
}

bool Word::operator==(const Word& other) const {
  return same_alphabet(*this, other) && letters_ == other.letters_;
}

bool same_alphabet(const Word& u, const Word& v) {
  return u.alphabet() == v.alphabet() || *u.alphabet() == *v.alphabet();
}

Word multiply(const Word& u, const Word& v) {
  require_same(u, v);
  std::vector<Letter> letters(u.letters().begin(), u.letters().end());
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet(), std::move(letters));
}

Word invert(const Word& u) {
  std::vector<Letter> letters;
  letters.reserve(u.length());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) letters.push_back(it->inverse());
  return Word(u.alphabet(), std::move(letters));
}

Word commutator(const Word& u, const Word& v) {
  require_same(u, v);
  return u * v * invert(u) * invert(v);
}

Word power(const Word& u, long exponent) {
  const Word base = exponent < 0 ? invert(u) : u;
  Word result(u.alphabet());
  for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) result = result * base;
  return result;
}

std::string to_string(const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += w.alphabet()->name(l.generator);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const AlphabetPtr& alphabet, const WordSymbols& symbols)
      : text_(text), alphabet_(alphabet), symbols_(symbols) {}

  Word parse() {
    Word w = parse_product();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char ch) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  void expect(char ch) {
    if (!peek(ch)) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  bool starts_primary() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char ch = text_[pos_];
    return ch == '(' || ch == '[' || ch == '1' || std::isalpha(static_cast<unsigned char>(ch)) || ch == '_';
  }

  Word parse_product() {
    Word w(alphabet_);
    while (starts_primary()) w = w * parse_power();
    return w;
  }

  Word parse_power() {
    Word base = parse_primary();
    if (peek('^')) {
      ++pos_;
      base = power(base, parse_exponent());
    }
    return base;
  }

  std::string parse_name() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  long parse_exponent() {
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
      skip_space();
    }
    if (pos_ >= text_.size()) fail("expected exponent");
    long value = 0;
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + (text_[pos_] - '0');
        if (value > 1'000'000) {
          pos_ = start;
          fail("exponent too large");
        }
        ++pos_;
      }
    } else {
      const std::size_t start = pos_;
      const std::string name = parse_name();
      auto it = symbols_.parameters.find(name);
      if (name.empty() || it == symbols_.parameters.end()) {
        pos_ = start;
        fail("expected integer exponent or bound parameter");
      }
      value = it->second;
    }
    return negative ? -value : value;
  }

  Word parse_primary() {
    skip_space();
    const std::size_t start = pos_;
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Word w = parse_product();
      expect(')');
      return w;
    }
    if (ch == '[') {
      ++pos_;
      Word a = parse_product();
      expect(',');
      Word b = parse_product();
      expect(']');
      return commutator(a, b);
    }
    if (ch == '1' && (pos_ + 1 == text_.size() ||
                      !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return Word(alphabet_);
    }
    const std::string name = parse_name();
    if (name.empty()) fail("expected a generator");
    if (name == "ad" && peek('(')) {
      ++pos_;
      Word a = parse_product();
      expect(')');
      expect('^');
      const std::size_t exp_pos = pos_;
      const long m = parse_exponent();
      if (m < 0) {
        pos_ = exp_pos;
        fail("ad exponent must be nonnegative");
      }
      expect('(');
      Word b = parse_product();
      expect(')');
      for (long i = 0; i < m; ++i) b = commutator(a, b);
      return b;
    }
    if (auto index = alphabet_->find(name)) return Word::generator(alphabet_, *index);
    if (auto it = symbols_.words.find(name); it != symbols_.words.end()) {
      if (!same_alphabet(it->second, Word(alphabet_))) fail("named word '" + name + "' uses another alphabet");
      return it->second;
    }
    pos_ = start;
    fail("unknown generator '" + name + "'");
  }

  std::string_view text_;
  const AlphabetPtr& alphabet_;
  const WordSymbols& symbols_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const AlphabetPtr& alphabet, const WordSymbols& symbols) {
  if (!alphabet) throw DomainError("parse_word needs an alphabet");
  return WordParser(text, alphabet, symbols).parse();
}

}  // namespace mol
