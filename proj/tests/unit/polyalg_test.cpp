#include <gtest/gtest.h>

#include <random>

#include "runlaw/error.hpp"
#include "runlaw/pattern.hpp"
#include "runlaw/poly.hpp"
#include "runlaw/ratfun.hpp"
#include "runlaw/rational.hpp"

namespace runlaw {
namespace {

Rational q(long num, long den = 1) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

QPoly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(-1, max_degree);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 6);
  std::vector<Rational> c(static_cast<std::size_t>(deg(rng) + 1));
  for (auto& x : c) x = q(num(rng), den(rng));
  return QPoly(c);
}

const QPoly z = QPoly::variable();
const QPoly one(1L);

TEST(RationalTest, DecimalsConvertExactly) {
  EXPECT_EQ(parse_rational("0.1"), q(1, 10));
  EXPECT_EQ(parse_rational("3/10"), parse_rational("0.3"));
  EXPECT_EQ(parse_rational(".25"), q(1, 4));
  EXPECT_EQ(parse_rational("1e-3"), q(1, 1000));
  EXPECT_EQ(parse_rational("2.5E+2"), q(250));
  EXPECT_EQ(parse_rational("-7"), q(-7));
  EXPECT_EQ(parse_rational(" 6/8 "), q(3, 4));
}

TEST(RationalTest, MalformedInputThrows) {
  EXPECT_THROW(parse_rational(""), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("1.2.3"), Error);
  EXPECT_THROW(parse_rational("1e"), Error);
}

TEST(RationalTest, ListParsing) {
  const auto v = parse_rational_list("1/10,0.3,1/5,0.4");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[1], q(3, 10));
  EXPECT_EQ(v[3], q(2, 5));
}

TEST(RationalTest, ScientificFormattingRoundsHalfEven) {
  EXPECT_EQ(format_scientific(q(7179605, 1000000) / pow(q(10), 9), 6), "7.17960e-09");
  EXPECT_EQ(format_scientific(q(7179615, 1000000) / pow(q(10), 9), 6), "7.17962e-09");
  EXPECT_EQ(format_scientific(q(5, 2), 1), "2e+00");
  EXPECT_EQ(format_scientific(q(9999996, 1000000), 6), "1.00000e+01");
  EXPECT_EQ(format_scientific(q(-1, 8), 3), "-1.25e-01");
  EXPECT_EQ(format_scientific(q(0), 3), "0");
  EXPECT_EQ(format_fixed(q(1, 8), 2), "0.12");
  EXPECT_EQ(format_fixed(q(3, 8), 2), "0.38");
}

TEST(PolyTest, SquareOfOneMinusZ) {
  const QPoly a = one - z;
  EXPECT_EQ(a * a, (QPoly{q(1), q(-2), q(1)}));
}

TEST(PolyTest, AlphaExpansionForFourSymbols) {
  const QPoly p = (one - z * q(3, 10)) * (one - z * q(1, 5));
  EXPECT_EQ(p, (QPoly{q(1), q(-1, 2), q(3, 50)}));
}

TEST(PolyTest, ZeroTimesAnything) {
  const QPoly p{q(1), q(2), q(3)};
  EXPECT_TRUE((QPoly() * p).is_zero());
  EXPECT_EQ((QPoly() * p).degree(), -1);
  EXPECT_TRUE((p * q(0)).is_zero());
}

TEST(PolyTest, DegreeOfProduct) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const QPoly a = random_poly(rng, 6);
    const QPoly b = random_poly(rng, 6);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
  }
}

TEST(PolyTest, RingAxioms) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const QPoly a = random_poly(rng, 5);
    const QPoly b = random_poly(rng, 5);
    const QPoly c = random_poly(rng, 5);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolyTest, NestedRingAxioms) {
  std::mt19937_64 rng(7);
  using BiPoly = Poly<QPoly>;
  auto random_bi = [&] {
    std::vector<QPoly> c(3);
    for (auto& x : c) x = random_poly(rng, 2);
    return BiPoly(c);
  };
  for (int t = 0; t < 50; ++t) {
    const BiPoly a = random_bi();
    const BiPoly b = random_bi();
    const BiPoly c = random_bi();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(PolyTest, ExactDivisionAndGcd) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const QPoly a = random_poly(rng, 4);
    const QPoly b = random_poly(rng, 4);
    if (b.is_zero()) continue;
    EXPECT_EQ(divide_exact(a * b, b), a);
    const auto [quot, rem] = divmod(a, b);
    EXPECT_EQ(quot * b + rem, a);
    EXPECT_LT(rem.degree(), b.degree());
  }
  const QPoly f = (one - z) * (one + z * q(2));
  const QPoly g = (one - z) * (one - z * q(3));
  EXPECT_EQ(gcd(f, g), z - one);
  EXPECT_THROW(divide_exact(one + z, z), Error);
}

TEST(PolyTest, EvaluationAndDerivative) {
  const QPoly p{q(1), q(2), q(3)};
  EXPECT_EQ(p.eval(q(2)), q(17));
  EXPECT_EQ(p.derivative(), (QPoly{q(2), q(6)}));
  EXPECT_TRUE(QPoly(q(5)).derivative().is_zero());
}

TEST(RatFunTest, NormalizeCancelsCommonFactor) {
  const RatFun f = rat_normalize(z - z * z, one - z);
  EXPECT_EQ(f, RatFun(z));
  EXPECT_EQ(f.den(), one);
}

TEST(RatFunTest, BelowBlockWithLowerBoundTwoCollapses) {
  const QPoly num = z * q(1, 2) - z * z * q(1, 4);
  const RatFun f = rat_normalize(num, one - z * q(1, 2));
  EXPECT_EQ(f, RatFun(z * q(1, 2)));
}

TEST(RatFunTest, IrreducibleFractionKeepsDegrees) {
  const RatFun f = rat_normalize(z * z * q(1, 4), one - z * q(1, 2));
  EXPECT_EQ(f.num().degree(), 2);
  EXPECT_EQ(f.den().degree(), 1);
  EXPECT_TRUE(rat_equal(f, RatFun::normalize(z * z * q(1, 4), one - z * q(1, 2))));
  EXPECT_EQ(f.den().leading(), q(1));
}

TEST(RatFunTest, ZeroDenominatorThrows) { EXPECT_THROW(rat_normalize(one, QPoly()), Error); }

TEST(RatFunTest, CanonicalFormsOfEqualFractionsAreIdentical) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    const QPoly a = random_poly(rng, 3);
    QPoly b = random_poly(rng, 3);
    QPoly c = random_poly(rng, 3);
    if (b.is_zero()) b = one;
    if (c.is_zero()) c = one + z;
    const RatFun f = rat_normalize(a, b);
    const RatFun g = rat_normalize(a * c, b * c);
    const RatFun h = rat_normalize(a * c * q(-3), b * c * q(-3));
    EXPECT_EQ(f, g);
    EXPECT_TRUE(rat_equal(f, g));
    EXPECT_TRUE(rat_equal(g, h));
    EXPECT_TRUE(rat_equal(f, h));
    EXPECT_EQ(f.num(), h.num());
    EXPECT_EQ(f.den(), h.den());
  }
}

TEST(RatFunTest, FieldOperations) {
  const RatFun a = rat_normalize(one, one - z);
  const RatFun b = rat_normalize(z, one + z);
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_EQ(a - a, RatFun());
}

TEST(SeriesTest, GeometricSeries) {
  const auto c = rat_normalize(one, one - z).series(6);
  for (const auto& x : c) EXPECT_EQ(x, q(1));
}

TEST(SeriesTest, FirstPassageOfTwoSymbolPattern) {
  const RatFun f = rat_normalize(z * z, QPoly{q(4), q(-4), q(1)});
  const auto c = f.series(4);
  const std::vector<Rational> expected{q(0), q(0), q(1, 4), q(1, 4), q(3, 16)};
  EXPECT_EQ(c, expected);
}

TEST(SeriesTest, BivariateCoefficientForExactlyOneOne) {
  const std::vector<std::size_t> lengths{1, 1};
  const DoubleGF phi = phi_exactly(lengths, {q(1, 2), q(1, 2)});
  const auto c = series_coeffs(phi.numerator(), phi.denominator(), 3);
  // Of the 8 sequences of length 3, "121" and "212" hold one occurrence.
  EXPECT_EQ(c[3], (QPoly{q(3, 4), q(1, 4)}));
  EXPECT_EQ(c[0], QPoly(1L));
}

TEST(SeriesTest, ReconstructionMatchesNumerator) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const QPoly a = random_poly(rng, 4);
    QPoly b = random_poly(rng, 4);
    if (b.is_zero() || is_zero(b.coeff(0))) b = b + one;
    const RatFun f = rat_normalize(a, b);
    const std::size_t n = 12;
    const QPoly s(f.series(n));
    const QPoly back = (s * f.den()).truncated(n + 1);
    EXPECT_EQ(back, f.num().truncated(n + 1));
  }
}

TEST(SeriesTest, PoleAtZeroThrows) { EXPECT_THROW(rat_normalize(one, z).series(3), Error); }

TEST(DerivativeTest, Examples) {
  EXPECT_EQ(rat_derivative(RatFun(z * z)), RatFun(z * q(2)));
  EXPECT_EQ(rat_derivative(RatFun(q(7))), RatFun());
  const RatFun psi = rat_normalize(z * z, QPoly{q(4), q(-4), q(1)});
  EXPECT_EQ(rat_eval(rat_derivative(psi), q(1)), q(4));
}

TEST(DerivativeTest, ExactOnPolynomials) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const QPoly p = random_poly(rng, 6);
    EXPECT_EQ(rat_derivative(RatFun(p)), RatFun(p.derivative()));
  }
}

TEST(DerivativeTest, AgreesWithSymmetricDifferences) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int t = 0; t < 60 && checked < 20; ++t) {
    const QPoly a = random_poly(rng, 3);
    const QPoly b = random_poly(rng, 2) + one;
    const RatFun f = rat_normalize(a, b);
    const Rational x = q(static_cast<long>(rng() % 7) - 3, 5);
    auto error_at = [&](const Rational& h) -> std::optional<Rational> {
      try {
        const Rational diff = (f.eval(x + h) - f.eval(x - h)) / (2 * h);
        return abs(diff - rat_derivative(f).eval(x));
      } catch (const Error&) {
        return std::nullopt;
      }
    };
    const auto e1 = error_at(q(1, 1000));
    const auto e2 = error_at(q(1, 10000));
    if (!e1 || !e2) continue;
    ++checked;
    // Central differences are second order: shrinking h tenfold cuts the
    // error roughly a hundredfold.
    if (is_zero(*e1)) {
      EXPECT_TRUE(is_zero(*e2));
    } else {
      EXPECT_LT(*e2, *e1 / 50);
    }
  }
  EXPECT_GE(checked, 10);
}

TEST(EvalTest, Examples) {
  const RatFun f = rat_normalize(z * z * q(1, 4), QPoly{q(1), q(-1), q(1, 4)});
  EXPECT_EQ(rat_eval(f, q(1)), q(1));
  const RatFun g = rat_normalize(one, one - z);
  EXPECT_EQ(rat_eval(g, q(0)), q(1));
  EXPECT_THROW(rat_eval(g, q(1)), Error);
}

}  // namespace
}  // namespace runlaw
