#include <gtest/gtest.h>

#include <random>

#include "mol/errors.hpp"
#include "mol/gv.hpp"

namespace mol {
namespace {

struct Point {
  Rational x, F, eps;
};

Rational eval(const UPoly& p, const Rational& x) {
  Rational acc = 0;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

Rational pow(const Rational& b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Rational eval(const RatF& f, const Point& pt) {
  Rational num = 0;
  for (const auto& [key, coeff] : f.numerator()) num += eval(coeff, pt.x) * pow(pt.F, key.first) * pow(pt.eps, key.second);
  return num / eval(f.denominator(), pt.x);
}

RatF random_ratf(std::mt19937& rng) {
  const char* pool[] = {"x", "F", "eps", "x^2 - 3", "F^2", "2*x*F", "eps*F/(x - 1)", "1/(x + 2)", "F/(x^2 + 1)", "3/5"};
  RatF out;
  for (int i = 0; i < 3; ++i) out += parse_ratf(pool[rng() % 10]) * parse_ratf(pool[rng() % 10]);
  return out;
}

TEST(RatF, ArithmeticAgreesWithEvaluation) {
  std::mt19937 rng(51);
  const std::vector<Point> points = {{Rational(7, 3), 2, Rational(1, 5)}, {-4, Rational(-3, 2), 3}};
  for (int trial = 0; trial < 100; ++trial) {
    const RatF a = random_ratf(rng);
    const RatF b = random_ratf(rng);
    const RatF c = parse_ratf("(x - 5)/(x^2 + x + 1)");
    for (const auto& pt : points) {
      EXPECT_EQ(eval(a + b, pt), eval(a, pt) + eval(b, pt));
      EXPECT_EQ(eval(a - b, pt), eval(a, pt) - eval(b, pt));
      EXPECT_EQ(eval(a * b, pt), eval(a, pt) * eval(b, pt));
      EXPECT_EQ(eval(a / c, pt), eval(a, pt) / eval(c, pt));
    }
  }
}

TEST(RatF, DerivativesAgreeWithDifferenceQuotientsOnPolynomials) {
  const RatF f = parse_ratf("x^3*F^2 + eps*x*F - 4");
  EXPECT_EQ(f.dF(), parse_ratf("2*x^3*F + eps*x"));
  EXPECT_EQ(f.dx(), parse_ratf("3*x^2*F^2 + eps*F"));
  EXPECT_EQ(parse_ratf("1/(x - 1)").dx(), parse_ratf("-1/(x - 1)^2"));
}

TEST(RatF, CanonicalForm) {
  EXPECT_EQ(to_string(parse_ratf("(x^2 - 1)*F/(x - 1)")), "(x + 1)*F");
  EXPECT_EQ(to_string(parse_ratf("F/(2*x - 2)")), "1/2*F/(x - 1)");
  EXPECT_EQ(parse_ratf("x/x"), RatF(Rational(1)));
  EXPECT_EQ(parse_ratf("0").degree_F(), -1);
  EXPECT_EQ(parse_ratf("F^3 + F").degree_F(), 3);
  EXPECT_TRUE(parse_ratf("1/(x+1)").is_x_only());
  EXPECT_EQ(parse_ratf("ε*F"), parse_ratf("eps*F"));
}

TEST(RatF, ParseErrors) {
  EXPECT_THROW(parse_ratf("1/F"), ParseError);
  EXPECT_THROW(parse_ratf("F^-1"), ParseError);
  EXPECT_THROW(parse_ratf("x/0"), ParseError);
  EXPECT_THROW(parse_ratf("y"), ParseError);
  EXPECT_THROW(parse_ratf("(x"), ParseError);
}

TEST(Forms, ExteriorDerivativeSquaresToZero) {
  std::mt19937 rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    EXPECT_TRUE(exterior_d(differential(random_ratf(rng))).is_zero());
  }
}

TEST(Forms, WedgeIsAntisymmetric) {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const OneForm a{random_ratf(rng), random_ratf(rng)};
    const OneForm b{random_ratf(rng), random_ratf(rng)};
    EXPECT_EQ(wedge(a, b), TwoForm{RatF() - wedge(b, a).S});
    EXPECT_TRUE(wedge(a, a).is_zero());
  }
}

TEST(Forms, ConventionsOnBasisForms) {
  const OneForm dx{RatF(Rational(1)), RatF()};
  const OneForm dF{RatF(), RatF(Rational(1))};
  EXPECT_EQ(wedge(dF, dx), TwoForm{RatF(Rational(1))});
  // d(F dx) = dF∧dx
  EXPECT_EQ(exterior_d(OneForm{RatF::F(), RatF()}), TwoForm{RatF(Rational(1))});
  EXPECT_EQ(to_string(OneForm{parse_ratf("eps/(x-1)"), RatF(Rational(1))}), "dF + (eps/(x - 1)) dx");
  EXPECT_EQ(to_string(OneForm{}), "0");
}

TEST(GV, SpecialCases) {
  const auto riccati = gv_sequence(parse_ratf("F^2/(x-1)"), 4);
  EXPECT_EQ(riccati.length, 3);
  EXPECT_EQ(to_string(riccati.eta[0]), "dF + (eps*F^2/(x - 1)) dx");
  EXPECT_EQ(to_string(riccati.eta[1]), "(2*eps*F/(x - 1)) dx");
  EXPECT_EQ(to_string(riccati.eta[2]), "(2*eps/(x - 1)) dx");
  EXPECT_TRUE(riccati.eta[3].is_zero());
  EXPECT_EQ(gv_classification(3), "Riccati");

  const auto closed = gv_sequence(parse_ratf("0"), 2);
  EXPECT_EQ(closed.length, 1);
  EXPECT_EQ(gv_classification(1), "closed");
  EXPECT_EQ(gv_length(parse_ratf("1/(x+1)")), 1);
  EXPECT_EQ(gv_length(parse_ratf("F/(x+1)")), 2);
  EXPECT_EQ(gv_classification(2), "Liouvillian");
  EXPECT_EQ(gv_classification(6), "length-6");
}

TEST(GV, DerivativeLadder) {
  const RatF phi = parse_ratf("(F^3 - x*F)/(x^2 + 1)");
  const auto seq = gv_sequence(phi, 6);
  RatF d = phi;
  for (int k = 1; k <= 6; ++k) {
    d = d.dF();
    EXPECT_EQ(seq.eta[static_cast<std::size_t>(k)], (OneForm{RatF::eps() * d, RatF()})) << k;
  }
}

TEST(GV, LengthsAndResidualsForEveryDegree) {
  for (int n = 1; n <= 8; ++n) {
    const std::string text = "(F^" + std::to_string(n) + " + 2)/(x-1) + x*F^" + std::to_string(n - 1);
    const RatF phi = parse_ratf(text);
    const auto seq = gv_sequence(phi, n + 2);
    EXPECT_EQ(seq.length, n + 1) << text;
    EXPECT_EQ(gv_length(phi), n + 1);
    const auto check = verify_gv(seq);
    EXPECT_TRUE(check.all_zero) << text;
    EXPECT_TRUE(check.eta_dx_proportional);
    EXPECT_TRUE(check.eta_products_vanish);
  }
}

TEST(GV, TamperedSequenceBreaksTheFirstEquation) {
  auto seq = gv_sequence(parse_ratf("F^2 + x"), 4);
  auto eta = seq.eta;
  eta[1] = RatF(Rational(2)) * eta[1];
  const auto residuals = gv_residuals(eta);
  EXPECT_FALSE(residuals[0].is_zero());
  // dη_0 = η_0∧η_1 by hand
  EXPECT_EQ(exterior_d(seq.eta[0]), wedge(seq.eta[0], seq.eta[1]));
}

TEST(GV, MaxTooSmall) {
  EXPECT_THROW(gv_sequence(parse_ratf("F^3"), 4), DomainError);
  EXPECT_NO_THROW(gv_sequence(parse_ratf("F^3"), 5));
  EXPECT_THROW(gv_sequence(parse_ratf("0"), 0), DomainError);
}

TEST(Riccati, SystemOnlyForDegreeTwo) {
  EXPECT_THROW(riccati_system(parse_ratf("F")), DomainError);
  EXPECT_THROW(riccati_system(parse_ratf("F^3")), DomainError);
  const auto s = riccati_system(parse_ratf("F^2/(x-1)"));
  EXPECT_EQ(s.equations.size(), 3u);
  EXPECT_EQ(s.eta2, "(2*eps/(x - 1)) dx");
}

TEST(Casale, BothCasesVerify) {
  for (auto which : {CasaleCase::Liouville1, CasaleCase::Liouville2}) {
    const auto r = casale_verify(which);
    EXPECT_TRUE(r.verified) << r.name;
    EXPECT_TRUE(r.first_integral_residual.is_zero()) << r.name;
    EXPECT_TRUE(r.multiplier_residual.is_zero()) << r.name;
    EXPECT_FALSE(r.symbol_rules.empty());
  }
}

TEST(Extension, ExponentialSymbol) {
  const OneForm alpha{parse_ratf("eps/(x - 1)"), RatF()};
  EXPECT_TRUE(unit_identity_residual(alpha).is_zero());
  DifferentialExtension ext;
  ext.add_exponential("u", alpha);
  const ExtElement u = ExtElement::symbol("u");
  // d(u^2) = 2 u^2 α
  const ExtOneForm lhs = ext.d(u * u);
  const ExtOneForm rhs = (ExtElement(RatF(Rational(2))) * u * u) * lift(alpha);
  EXPECT_TRUE((lhs - rhs).is_zero());
  // d(u^-1) = -u^-1 α
  const ExtElement inv = u.monomial_inverse();
  EXPECT_TRUE((ext.d(inv) - ExtElement(RatF(Rational(-1))) * inv * lift(alpha)).is_zero());
}

TEST(Extension, PrimitiveSymbol) {
  DifferentialExtension ext;
  ext.add_primitive("P", lift(OneForm{parse_ratf("1/(x^2 + 1)"), RatF()}));
  const ExtElement P = ExtElement::symbol("P");
  // d(x P) = P dx + x/(x^2+1) dx
  const ExtOneForm lhs = ext.d(ExtElement(RatF::x()) * P);
  const ExtOneForm rhs = ExtOneForm{P + ExtElement(parse_ratf("x/(x^2 + 1)")), ExtElement()};
  EXPECT_TRUE((lhs - rhs).is_zero());
}

}  // namespace
}  // namespace mol
