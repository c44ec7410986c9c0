#include <random>

#include <gtest/gtest.h>

#include "detsing/parse.hpp"
#include "detsing/polynomial.hpp"
#include "detsing/univariate.hpp"

using namespace detsing;

namespace {

RingPtr xyz() { return make_ring({"x", "y", "z"}); }

Polynomial random_poly(const RingPtr& R, std::mt19937_64& rng, int terms, unsigned maxdeg) {
  Polynomial p(R);
  std::uniform_int_distribution<int> c(-9, 9);
  std::uniform_int_distribution<unsigned> e(0, maxdeg);
  for (int t = 0; t < terms; ++t) {
    Monomial m(R->size());
    for (std::size_t v = 0; v < R->size(); ++v) m.set(v, e(rng));
    p += Polynomial::monomial(R, m, Rational(c(rng), 1 + (t % 3)));
  }
  return p;
}

}  // namespace

TEST(Ring, RejectsDuplicateAndInvalidNames) {
  EXPECT_THROW(make_ring({"x", "x"}), std::invalid_argument);
  EXPECT_THROW(make_ring({"1x"}), std::invalid_argument);
}

TEST(Polynomial, ZeroCoefficientsCancel) {
  auto R = xyz();
  Polynomial x = Polynomial::variable(R, 0);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_TRUE((x + Rational(1) - x - Rational(1)).is_zero());
}

TEST(Polynomial, ProductAndDegree) {
  auto R = xyz();
  auto p = parse_polynomial("x + y", R);
  auto q = parse_polynomial("x - y", R);
  EXPECT_EQ(p * q, parse_polynomial("x^2 - y^2", R));
  EXPECT_EQ((p * q).total_degree(), 2);
  EXPECT_EQ(p.pow(3), parse_polynomial("x^3 + 3*x^2*y + 3*x*y^2 + y^3", R));
}

TEST(Polynomial, MixingRingsThrows) {
  auto a = make_ring({"x", "y"});
  auto b = make_ring({"y", "x"});
  EXPECT_THROW(Polynomial::variable(a, 0) + Polynomial::variable(b, 0), std::invalid_argument);
}

TEST(Polynomial, DerivativeAndEvaluation) {
  auto R = xyz();
  auto p = parse_polynomial("x^3*y - 2*z + 1/2", R);
  EXPECT_EQ(p.differentiate(0), parse_polynomial("3*x^2*y", R));
  EXPECT_EQ(p.evaluate({Rational(2), Rational(3), Rational(1)}), Rational(45, 2));
}

TEST(Polynomial, Substitution) {
  auto R = xyz();
  auto p = parse_polynomial("x*y + z", R);
  std::map<std::size_t, Polynomial> a{{2, parse_polynomial("x - y", R)}};
  EXPECT_EQ(substitute(p, a), parse_polynomial("x*y + x - y", R));
}

TEST(Parse, TemplatesAndRationals) {
  auto R = xyz();
  ParamMap k{{"k", 3}};
  EXPECT_EQ(parse_polynomial("y^k + 1/3*x", R, k), parse_polynomial("y^3 + 1/3*x", R));
  EXPECT_EQ(parse_polynomial("(x+y)^2", R), parse_polynomial("x^2 + 2*x*y + y^2", R));
  EXPECT_EQ(parse_polynomial("-x", R), -Polynomial::variable(R, 0));
}

TEST(Parse, ErrorsCarryColumn) {
  auto R = xyz();
  try {
    parse_polynomial("x + * y", R);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(parse_polynomial("x + q", R), ParseError);
  EXPECT_THROW(parse_polynomial("y^k", R), ParseError);
  EXPECT_THROW(parse_polynomial("", R), ParseError);
  EXPECT_THROW(parse_polynomial("1/0", R), ParseError);
}

TEST(Univariate, SquarefreeAndGcd) {
  auto R = make_ring({"t"});
  EXPECT_TRUE(squarefree(parse_polynomial("t^3 - t", R)));
  EXPECT_FALSE(squarefree(parse_polynomial("t^3 - t^2", R)));
  EXPECT_EQ(univariate_gcd(parse_polynomial("t^2 - 1", R), parse_polynomial("t^2 + 2*t + 1", R)),
            parse_polynomial("t + 1", R));
}

// Ring axioms on random inputs.
TEST(PolynomialProperty, RingAxioms) {
  auto R = xyz();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    auto a = random_poly(R, rng, 4, 3), b = random_poly(R, rng, 4, 3), c = random_poly(R, rng, 3, 2);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolynomialProperty, PrintParseRoundTrip) {
  auto R = xyz();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    auto a = random_poly(R, rng, 5, 4);
    EXPECT_EQ(parse_polynomial(a.to_string(), R), a) << a.to_string();
  }
}

TEST(PolynomialProperty, LeibnizRule) {
  auto R = xyz();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    auto a = random_poly(R, rng, 4, 3), b = random_poly(R, rng, 4, 3);
    for (std::size_t v = 0; v < 3; ++v)
      EXPECT_EQ((a * b).differentiate(v), a.differentiate(v) * b + a * b.differentiate(v));
  }
}

TEST(PolynomialProperty, SubstitutionIsHomomorphism) {
  auto R = xyz();
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    auto a = random_poly(R, rng, 4, 3), b = random_poly(R, rng, 4, 3);
    std::map<std::size_t, Polynomial> s{{static_cast<std::size_t>(i % 3), random_poly(R, rng, 2, 2)}};
    EXPECT_EQ(substitute(a + b, s), substitute(a, s) + substitute(b, s));
    EXPECT_EQ(substitute(a * b, s), substitute(a, s) * substitute(b, s));
  }
}

TEST(MonomialProperty, OrderingsAreTotal) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<unsigned> e(0, 3);
  auto draw = [&] {
    Monomial m(3);
    for (std::size_t v = 0; v < 3; ++v) m.set(v, e(rng));
    return m;
  };
  for (const auto& ord : {Ordering::degrevlex(), Ordering::negdegrevlex()}) {
    for (int i = 0; i < 300; ++i) {
      Monomial a = draw(), b = draw(), c = draw();
      Cmp ab = mono_compare(a, b, ord), ba = mono_compare(b, a, ord);
      EXPECT_EQ(ab == Cmp::EQ, a == b);
      if (ab == Cmp::LT) EXPECT_EQ(ba, Cmp::GT);
      if (ab == Cmp::LT && mono_compare(b, c, ord) == Cmp::LT) EXPECT_EQ(mono_compare(a, c, ord), Cmp::LT);
      if (ord.is_global() && a.divides(b) && !(a == b)) EXPECT_EQ(ab, Cmp::LT);
      if (!ord.is_global() && a.divides(b) && !(a == b)) EXPECT_EQ(ab, Cmp::GT);
    }
  }
}
