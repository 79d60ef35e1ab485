#include <gtest/gtest.h>

#include <random>

#include "mol/errors.hpp"
#include "mol/freegroup.hpp"

namespace mol {
namespace {

AlphabetPtr abc() { return make_alphabet({"a", "b", "c"}); }

std::vector<Letter> random_letters(std::mt19937& rng, std::size_t rank, int length) {
  std::uniform_int_distribution<std::uint32_t> gen(0, static_cast<std::uint32_t>(rank - 1));
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> out;
  for (int i = 0; i < length; ++i) out.push_back({gen(rng), static_cast<std::int8_t>(sign(rng) ? 1 : -1)});
  return out;
}

// Cancels a randomly chosen adjacent inverse pair until none is left.
std::vector<Letter> reduce_randomly(std::vector<Letter> w, std::mt19937& rng) {
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i + 1] == w[i].inverse()) spots.push_back(i);
    }
    if (spots.empty()) return w;
    const std::size_t i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
}

Word w(const std::string& text, const AlphabetPtr& alpha) { return parse_word(text, alpha); }

TEST(FreeReduce, AnyCancellationOrderGivesTheSameWord) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto letters = random_letters(rng, 2, 14);
    const auto expected = free_reduce(letters);
    for (int schedule = 0; schedule < 4; ++schedule) EXPECT_EQ(reduce_randomly(letters, rng), expected);
  }
}

TEST(FreeReduce, ResultHasNoCancellingPair) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = free_reduce(random_letters(rng, 3, 20));
    for (std::size_t i = 0; i + 1 < r.size(); ++i) EXPECT_FALSE(r[i + 1] == r[i].inverse());
  }
}

TEST(Word, GroupAxiomsOnRandomWords) {
  const auto alpha = abc();
  std::mt19937 rng(9);
  const Word e(alpha);
  for (int trial = 0; trial < 200; ++trial) {
    const Word u(alpha, random_letters(rng, 3, 8));
    const Word v(alpha, random_letters(rng, 3, 8));
    const Word x(alpha, random_letters(rng, 3, 8));
    EXPECT_EQ((u * v) * x, u * (v * x));
    EXPECT_EQ(u * e, u);
    EXPECT_EQ(e * u, u);
    EXPECT_TRUE((u * invert(u)).is_identity());
    EXPECT_EQ(invert(invert(u)), u);
    EXPECT_EQ(invert(u * v), invert(v) * invert(u));
  }
}

TEST(Word, CommutatorExamples) {
  const auto alpha = abc();
  EXPECT_EQ(to_string(commutator(w("a", alpha), w("b", alpha))), "a b a^-1 b^-1");
  EXPECT_TRUE(commutator(w("a", alpha), w("a", alpha)).is_identity());
  EXPECT_TRUE(commutator(Word(alpha), w("b", alpha)).is_identity());
}

TEST(Word, ConjugatedCommutatorIdentity) {
  const auto d = make_alphabet({"d1", "d2", "d3", "d4"});
  const Word d2 = w("d2", d);
  const Word d3 = w("d3", d);
  // [d2, d2 d3] = d2 [d2, d3] d2^-1
  EXPECT_EQ(commutator(d2, d2 * d3), d2 * commutator(d2, d3) * invert(d2));
}

TEST(Word, PowerMatchesRepeatedProduct) {
  const auto alpha = abc();
  const Word u = w("a b^-1", alpha);
  EXPECT_EQ(power(u, 3), u * u * u);
  EXPECT_EQ(power(u, -2), invert(u) * invert(u));
  EXPECT_TRUE(power(u, 0).is_identity());
}

TEST(Parse, Examples) {
  const auto alpha = abc();
  EXPECT_EQ(to_string(w("a a^-1", alpha)), "1");
  EXPECT_EQ(to_string(w("1", alpha)), "1");
  EXPECT_EQ(to_string(w("(a b)^2", alpha)), "a b a b");
  EXPECT_EQ(to_string(w("a^-2", alpha)), "a^-1 a^-1");
  EXPECT_EQ(w("[a,b]", alpha), commutator(w("a", alpha), w("b", alpha)));
  EXPECT_EQ(w("ad(a)^0(b c)", alpha), w("b c", alpha));
  EXPECT_EQ(w("ad(a)^2(b)", alpha), w("[a,[a,b]]", alpha));
  EXPECT_EQ(w("[a b, ad(b)^1(b c)]", alpha), w("[a b,[b, b c]]", alpha));
}

TEST(Parse, ParametersAndNamedWords) {
  const auto alpha = abc();
  WordSymbols sym;
  sym.parameters["m"] = 3;
  sym.words.emplace("g", w("a b", alpha));
  EXPECT_EQ(w("[a,[a,[a,b]]]", alpha), parse_word("ad(a)^m(b)", alpha, sym));
  EXPECT_EQ(parse_word("g^-1", alpha, sym), w("b^-1 a^-1", alpha));
  EXPECT_EQ(parse_word("a^-m", alpha, sym), power(w("a", alpha), -3));
}

TEST(Parse, RoundTripOfPrintedWords) {
  const auto alpha = abc();
  std::mt19937 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const Word u(alpha, random_letters(rng, 3, 12));
    EXPECT_EQ(parse_word(to_string(u), alpha), u);
  }
}

TEST(Parse, ErrorsCarryPositions) {
  const auto alpha = abc();
  try {
    parse_word("a q", alpha);
    FAIL() << "unknown generator accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(parse_word("[a,b", alpha), ParseError);
  EXPECT_THROW(parse_word("a^", alpha), ParseError);
  EXPECT_THROW(parse_word("ad(a)^-1(b)", alpha), ParseError);
  EXPECT_THROW(parse_word("ad(a)^m(b)", alpha), ParseError);
  EXPECT_THROW(parse_word("a )", alpha), ParseError);
}

TEST(Alphabet, RejectsBadNames) {
  EXPECT_THROW(make_alphabet({"a", "a"}), DomainError);
  EXPECT_THROW(make_alphabet({""}), DomainError);
  EXPECT_THROW(make_alphabet({"1x"}), DomainError);
  EXPECT_THROW(make_alphabet({"ad"}), DomainError);
}

TEST(Word, MixingAlphabetsIsAnError) {
  const Word a = w("a", abc());
  const Word x = parse_word("x", make_alphabet({"x"}));
  EXPECT_THROW(a * x, MismatchError);
}

}  // namespace
}  // namespace mol
