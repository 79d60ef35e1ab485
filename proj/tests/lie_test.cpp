#include <gtest/gtest.h>

#include <random>

#include "mol/errors.hpp"
#include "mol/lie.hpp"

namespace mol {
namespace {

// Duval-free Lyndon test: strictly smaller than every proper rotation.
bool is_lyndon(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t s = 1; s < n; ++s) {
    std::vector<int> rot(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
    if (!(w < rot)) return false;
  }
  return true;
}

std::size_t count_lyndon(int rank, int degree) {
  std::size_t count = 0;
  std::vector<int> w(static_cast<std::size_t>(degree), 0);
  for (;;) {
    if (is_lyndon(w)) ++count;
    int i = degree - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == rank - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return count;
    ++w[static_cast<std::size_t>(i)];
  }
}

NCSeries letter(std::size_t rank, int cutoff, std::uint32_t i) { return NCSeries::letter(rank, cutoff, i); }

NCSeries comm(const NCSeries& a, const NCSeries& b) { return a * b - b * a; }

Word random_word(std::mt19937& rng, const AlphabetPtr& alpha, int length) {
  std::uniform_int_distribution<std::uint32_t> gen(0, static_cast<std::uint32_t>(alpha->rank() - 1));
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> letters;
  for (int i = 0; i < length; ++i) letters.push_back({gen(rng), static_cast<std::int8_t>(sign(rng) ? 1 : -1)});
  return Word(alpha, letters);
}

LieElement random_element(std::mt19937& rng, const HallBasisPtr& basis) {
  std::uniform_int_distribution<long> coef(-3, 3);
  LieElement x(basis);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const long c = coef(rng);
    if (c != 0) x.add(i, Rational(c));
  }
  return x;
}

TEST(HallBasis, DimensionsMatchLyndonCount) {
  for (int rank = 1; rank <= 4; ++rank) {
    const int cutoff = rank <= 2 ? 9 : 6;
    const auto basis = hall_basis(static_cast<std::size_t>(rank), cutoff);
    for (int n = 1; n <= cutoff; ++n) {
      const auto expected = count_lyndon(rank, n);
      EXPECT_EQ(witt_dimension(static_cast<std::size_t>(rank), n), expected) << rank << " " << n;
      EXPECT_EQ(basis->degree_size(n), expected) << rank << " " << n;
    }
  }
}

TEST(HallBasis, KnownSmallDimensions) {
  EXPECT_EQ(witt_dimension(2, 1), 2u);
  EXPECT_EQ(witt_dimension(2, 2), 1u);
  EXPECT_EQ(witt_dimension(2, 3), 2u);
  EXPECT_EQ(witt_dimension(2, 4), 3u);
  EXPECT_EQ(witt_dimension(2, 5), 6u);
  EXPECT_EQ(witt_dimension(3, 2), 3u);
  EXPECT_EQ(witt_dimension(3, 3), 8u);
}

TEST(HallBasis, LyndonWordLeadsEachExpansion) {
  const auto basis = hall_basis(3, 5);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto& e = basis->element(i);
    const auto& exp = basis->expansion(i);
    ASSERT_FALSE(exp.empty());
    EXPECT_EQ(exp.front().first, e.code);
    EXPECT_EQ(exp.front().second, 1);
  }
}

TEST(HallBasis, NamesUseTheAlphabet) {
  const auto alpha = make_alphabet({"d1", "d2"});
  const auto basis = hall_basis(2, 3);
  std::vector<std::string> names;
  for (std::size_t i = basis->degree_begin(3); i < basis->degree_begin(3) + basis->degree_size(3); ++i) {
    names.push_back(basis->to_string(i, alpha.get()));
  }
  EXPECT_EQ(names, (std::vector<std::string>{"[d1,[d1,d2]]", "[[d1,d2],d2]"}));
}

TEST(HallBasis, CapRaisesResourceLimit) { EXPECT_THROW(hall_basis(4, 8, 100), ResourceLimit); }

TEST(Magnus, GeneratorAndInverse) {
  const auto alpha = make_alphabet({"a", "b"});
  const NCSeries x = letter(2, 4, 0);
  const NCSeries one = NCSeries::one(2, 4);
  EXPECT_EQ(magnus(parse_word("a", alpha), 4), one + x);
  EXPECT_EQ(magnus(parse_word("a^-1", alpha), 4), one - x + x * x - x * x * x + x * x * x * x);
  EXPECT_EQ(magnus(Word(alpha), 4), one);
}

TEST(Magnus, IsAHomomorphism) {
  const auto alpha = make_alphabet({"a", "b", "c"});
  std::mt19937 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Word u = random_word(rng, alpha, 6);
    const Word v = random_word(rng, alpha, 6);
    EXPECT_EQ(magnus(u * v, 5), magnus(u, 5) * magnus(v, 5));
  }
}

TEST(Magnus, CommutatorStartsWithLieBracket) {
  const auto alpha = make_alphabet({"a", "b"});
  const NCSeries m = magnus(parse_word("[a,b]", alpha), 3);
  EXPECT_EQ(m.homogeneous(1), NCSeries(2, 3));
  EXPECT_EQ(m.homogeneous(2), comm(letter(2, 3, 0), letter(2, 3, 1)));
}

TEST(Lcs, Examples) {
  const auto alpha = make_alphabet({"a", "b", "c"});
  auto deg = [&](const char* text) { return lcs_degree(parse_word(text, alpha), 6); };
  EXPECT_EQ(deg("a b"), (LcsDegree{LcsDegree::Kind::Finite, 1}));
  EXPECT_EQ(deg("[a,b]"), (LcsDegree{LcsDegree::Kind::Finite, 2}));
  EXPECT_EQ(deg("[a,[a,b]]"), (LcsDegree{LcsDegree::Kind::Finite, 3}));
  EXPECT_EQ(deg("[[a,b],[a,c]]"), (LcsDegree{LcsDegree::Kind::Finite, 4}));
  EXPECT_EQ(deg("[a,b] [b,a]").kind, LcsDegree::Kind::Identity);
  EXPECT_EQ(deg("ad(a)^6(b)").kind, LcsDegree::Kind::ExceedsCutoff);
}

TEST(Lcs, CommutatorsAreSuperadditive) {
  const auto alpha = make_alphabet({"a", "b"});
  std::mt19937 rng(22);
  const auto gens = std::vector<Word>{parse_word("a", alpha), parse_word("b", alpha), parse_word("[a,b]", alpha),
                                      parse_word("[a,[a,b]]", alpha)};
  for (int trial = 0; trial < 100; ++trial) {
    Word u = gens[rng() % gens.size()] * random_word(rng, alpha, 2);
    Word v = gens[rng() % gens.size()];
    const auto du = lcs_degree(u, 6);
    const auto dv = lcs_degree(v, 6);
    const auto dc = lcs_degree(commutator(u, v), 6);
    if (du.kind != LcsDegree::Kind::Finite || dv.kind != LcsDegree::Kind::Finite) continue;
    if (dc.kind == LcsDegree::Kind::Finite) {
      EXPECT_GE(dc.degree, du.degree + dv.degree);
    }
  }
}

TEST(LogLeading, CommutatorIsTheHallBracket) {
  const auto alpha = make_alphabet({"a", "b"});
  const auto basis = hall_basis(2, 4);
  const auto idx = basis->find(Monomial{2, 1});  // word "ab"
  ASSERT_TRUE(idx.has_value());
  EXPECT_EQ(log_leading(parse_word("[a,b]", alpha), basis), LieElement::basis_element(basis, *idx));
  EXPECT_THROW(log_leading(Word(alpha), basis), DomainError);
  EXPECT_TRUE(log_leading(parse_word("ad(a)^4(b)", alpha), basis).is_zero());
}

TEST(MalcevLog, MultiplicativeAndLeadingTermAgree) {
  const auto alpha = make_alphabet({"a", "b", "c"});
  const auto basis = hall_basis(3, 5);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Word u = random_word(rng, alpha, 5);
    const Word v = random_word(rng, alpha, 5);
    const LieElement lu = malcev_log(u, basis);
    EXPECT_EQ(exp_series(to_series(malcev_log(u * v, basis))),
              exp_series(to_series(lu)) * exp_series(to_series(malcev_log(v, basis))));
    if (!u.is_identity() && lcs_degree(u, 5).kind == LcsDegree::Kind::Finite) {
      EXPECT_EQ(lu.homogeneous(lu.lowest_degree()), log_leading(u, basis));
    }
  }
}

TEST(ExpressInHall, RoundTripsLieElements) {
  const auto basis = hall_basis(3, 4);
  std::mt19937 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const LieElement x = random_element(rng, basis);
    const auto h = express_in_hall(to_series(x), basis);
    EXPECT_EQ(h.element, x);
    EXPECT_TRUE(h.residual.is_zero());
  }
}

TEST(ExpressInHall, NonLieSeriesLeavesResidual) {
  const auto basis = hall_basis(2, 3);
  const NCSeries x = letter(2, 3, 0);
  EXPECT_FALSE(express_in_hall(x * x, basis).residual.is_zero());
}

TEST(Bracket, AgreesWithAssociativeCommutator) {
  const auto basis = hall_basis(3, 5);
  std::mt19937 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const LieElement x = random_element(rng, basis).homogeneous(2) + random_element(rng, basis).homogeneous(1);
    const LieElement y = random_element(rng, basis).homogeneous(2);
    EXPECT_EQ(to_series(bracket(x, y)), comm(to_series(x), to_series(y)));
  }
}

TEST(Bch, MatchesLowOrderFormula) {
  const int c = 4;
  const auto basis = hall_basis(2, c);
  const NCSeries X = letter(2, c, 0);
  const NCSeries Y = letter(2, c, 1);
  const NCSeries expected = X + Y + Rational(1, 2) * comm(X, Y) +
                            Rational(1, 12) * (comm(X, comm(X, Y)) + comm(Y, comm(Y, X))) -
                            Rational(1, 24) * comm(Y, comm(X, comm(X, Y)));
  const LieElement z = bch(LieElement::generator(basis, 0), LieElement::generator(basis, 1));
  EXPECT_EQ(to_series(z), expected);
}

TEST(Bch, ExponentialLaw) {
  const auto basis = hall_basis(2, 6);
  std::mt19937 rng(26);
  for (int trial = 0; trial < 5; ++trial) {
    const LieElement x = random_element(rng, basis).homogeneous(1);
    const LieElement y = random_element(rng, basis).homogeneous(1) + random_element(rng, basis).homogeneous(2);
    EXPECT_EQ(exp_series(to_series(bch(x, y))), exp_series(to_series(x)) * exp_series(to_series(y)));
  }
}

// Oracle ideal: span of all right-normed brackets [...[g, x_i1], ..., x_ik].
GradedSubspace naive_ideal(const std::vector<LieElement>& gens, const HallBasisPtr& basis) {
  GradedSubspace out(basis);
  std::vector<LieElement> frontier;
  for (const auto& g : gens) {
    for (int d = 1; d <= basis->cutoff(); ++d) {
      const auto h = g.homogeneous(d);
      if (!h.is_zero()) frontier.push_back(h);
    }
  }
  while (!frontier.empty()) {
    std::vector<LieElement> next;
    for (const auto& f : frontier) {
      if (!out.insert(f)) continue;
      for (std::uint32_t i = 0; i < basis->rank(); ++i) {
        const auto b = bracket(f, LieElement::generator(basis, i));
        if (!b.is_zero()) next.push_back(b);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

TEST(IdealClosure, MatchesNaiveBracketClosure) {
  const auto basis = hall_basis(3, 5);
  const LetterBracketTable table(basis);
  std::mt19937 rng(27);
  const std::vector<std::vector<LieElement>> cases = {
      {bracket(LieElement::generator(basis, 0), LieElement::generator(basis, 1))},
      {LieElement::generator(basis, 2)},
      {random_element(rng, basis).homogeneous(2), random_element(rng, basis).homogeneous(3)},
      {LieElement::generator(basis, 0) + LieElement::generator(basis, 1)},
  };
  for (const auto& gens : cases) {
    const auto fast = ideal_closure(gens, table);
    const auto slow = naive_ideal(gens, basis);
    EXPECT_EQ(fast.dimensions(), slow.dimensions());
    EXPECT_TRUE(fast.is_subspace_of(slow));
    EXPECT_TRUE(slow.is_subspace_of(fast));
  }
}

TEST(IdealClosure, DerivedIdealOfWholeAlgebra) {
  const auto basis = hall_basis(2, 5);
  const LetterBracketTable table(basis);
  const std::vector<LieElement> gens = {LieElement::generator(basis, 0), LieElement::generator(basis, 1)};
  const auto all = ideal_closure(gens, table);
  EXPECT_EQ(all.dimensions(), basis->dimensions());
  const auto derived = bracket_with_algebra(all, table);
  auto dims = basis->dimensions();
  dims[0] = 0;
  EXPECT_EQ(derived.dimensions(), dims);
}

}  // namespace
}  // namespace mol
