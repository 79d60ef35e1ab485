#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mol {

/// Ordered set of generator names. Names are unique, nonempty identifiers.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names);

  std::size_t rank() const noexcept { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> names);

/// One letter g^{+1} or g^{-1}.
struct Letter {
  std::uint32_t generator = 0;
  std::int8_t sign = 1;

  Letter inverse() const { return {generator, static_cast<std::int8_t>(-sign)}; }
  bool operator==(const Letter&) const = default;
};

/// Freely reduces a letter sequence (stack-based, single pass).
std::vector<Letter> free_reduce(std::vector<Letter> letters);

/// Element of the free group over an alphabet, kept freely reduced.
class Word {
 public:
  explicit Word(AlphabetPtr alphabet);
  Word(AlphabetPtr alphabet, std::vector<Letter> letters);

  static Word generator(AlphabetPtr alphabet, std::size_t index);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }

  bool operator==(const Word& other) const;

 private:
  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

bool same_alphabet(const Word& u, const Word& v);

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
/// u v u^-1 v^-1
Word commutator(const Word& u, const Word& v);
Word power(const Word& u, long exponent);

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

/// Space-separated letters, inverses as `g^-1`; the identity prints as `1`.
/// The output parses back to the same word.
std::string to_string(const Word& w);

/// Extra names visible to the word parser: named words (substituted
/// verbatim) and integer parameters usable as exponents.
struct WordSymbols {
  std::map<std::string, Word, std::less<>> words;
  std::map<std::string, long, std::less<>> parameters;
};

/// Parses a word expression:
///
///   word     = [ product ] ;
///   product  = power { power } ;
///   power    = primary [ "^" exponent ] ;
///   primary  = "1" | name | "(" word ")" | "[" word "," word "]"
///            | "ad" "(" word ")" "^" exponent "(" word ")" ;
///   exponent = [ "-" ] ( integer | parameter ) ;
///
/// `ad(a)^m(b)` is the m-fold iterated commutator [a,[a,...,[a,b]]] with
/// `ad(a)^0(b) = b`. Throws ParseError on syntax errors and unknown names.
Word parse_word(std::string_view text, const AlphabetPtr& alphabet,
                const WordSymbols& symbols = {});

}  // namespace mol
