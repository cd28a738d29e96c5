#include <gtest/gtest.h>

#include <random>

#include "mcf/bigint.hpp"
#include "mcf/certified_log.hpp"
#include "mcf/errors.hpp"
#include "mcf/interval.hpp"
#include "mcf/number_field.hpp"
#include "mcf/poly.hpp"
#include "mcf/real_value.hpp"

using namespace mcf;

namespace {

const char* kCbrt2 =
    "1.2599210498948731647672106072782283505702514647015079800819751121552996765139594837293965624362550941543102"
    "560356156652593990240406137372284591103042693552469606426166250009774745265654803068671854055186";

FieldHandle cbrt2_field() {
  return NumberField::create(IntPoly({BigInt(-2), BigInt(0), BigInt(0), BigInt(1)}),
                             RationalInterval(BigRational(1), BigRational(2)));
}

BigRational q(long num, long den = 1) { return make_rational(BigInt(num), BigInt(den)); }

BigRational pow10_neg(unsigned k) {
  BigRational r(1);
  for (unsigned i = 0; i < k; ++i) r /= 10;
  return r;
}

}  // namespace

TEST(BigInt, ParsesIntegersAndRationals) {
  EXPECT_EQ(parse_int("-12"), BigInt(-12));
  EXPECT_EQ(parse_int("+7"), BigInt(7));
  EXPECT_EQ(parse_rational("6/4"), BigRational(3, 2));
  EXPECT_EQ(parse_rational("1.25"), BigRational(5, 4));
  EXPECT_EQ(parse_rational("-0.5"), BigRational(-1, 2));
  EXPECT_THROW(parse_int("1x"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
}

TEST(BigInt, CeilRationalPowerIsTheSmallestUpperRoot) {
  for (unsigned long v = 0; v < 60; ++v) {
    for (unsigned long q = 1; q <= 4; ++q) {
      for (unsigned long p = 1; p <= 5; ++p) {
        BigInt r = ceil_rational_power(BigInt(v), p, q);
        BigInt target = ipow(BigInt(v), p);
        EXPECT_GE(ipow(r, q), target);
        if (r > 0) EXPECT_LT(ipow(BigInt(r - 1), q), target);
      }
    }
  }
}

TEST(BigInt, DecimalRenderingTruncatesDownward) {
  EXPECT_EQ(to_decimal(BigRational(1, 3), 4), "0.3333");
  EXPECT_EQ(to_decimal(BigRational(-1, 3), 4), "-0.3334");
  EXPECT_EQ(to_decimal(BigRational(5), 2), "5.00");
}

TEST(Interval, ArithmeticEnclosesPointwiseResults) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int t = 0; t < 300; ++t) {
    BigRational a = q(d(rng), 7), b = q(d(rng), 5), c = q(d(rng), 3), e = q(d(rng), 11);
    RationalInterval x(std::min(a, b), std::max(a, b));
    RationalInterval y(std::min(c, e), std::max(c, e));
    BigRational px = x.midpoint(), py = y.midpoint();
    EXPECT_TRUE((x + y).contains(BigRational(px + py)));
    EXPECT_TRUE((x - y).contains(BigRational(px - py)));
    EXPECT_TRUE((x * y).contains(BigRational(px * py)));
    if (!y.contains_zero()) {
      EXPECT_TRUE((x / y).contains(BigRational(px / py)));
    } else {
      EXPECT_THROW(x / y, DivisionByZero);
    }
  }
}

TEST(Poly, SturmCountsAndIsolation) {
  // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
  QPoly p({BigRational(6), BigRational(-7), BigRational(0), BigRational(1)});
  EXPECT_EQ(count_roots(p, BigRational(-10), BigRational(10)), 3);
  EXPECT_EQ(count_roots(p, BigRational(0), BigRational(3, 2)), 1);
  auto roots = isolate_real_roots(p);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_TRUE(roots[0].contains(BigRational(-3)));
  EXPECT_TRUE(roots[1].contains(BigRational(1)));
  EXPECT_TRUE(roots[2].contains(BigRational(2)));
  auto rr = rational_roots(IntPoly({BigInt(6), BigInt(-7), BigInt(0), BigInt(1)}));
  EXPECT_EQ(rr.size(), 3u);
  EXPECT_TRUE(rational_roots(IntPoly({BigInt(-2), BigInt(0), BigInt(0), BigInt(1)})).empty());
}

TEST(Poly, RationalRootsWithNonMonicLeadingCoefficient) {
  // (2x - 1)(3x + 2)(x^2 + 1)
  IntPoly p({BigInt(-2), BigInt(1), BigInt(4), BigInt(1), BigInt(6)});
  auto rr = rational_roots(p);
  ASSERT_EQ(rr.size(), 2u);
  EXPECT_EQ(rr[0], BigRational(-2, 3));
  EXPECT_EQ(rr[1], BigRational(1, 2));
}

TEST(NumberField, FieldArithmeticIdentities) {
  FieldHandle f = cbrt2_field();
  FieldElement th = FieldElement::generator(f);
  FieldElement th2 = th * th;
  EXPECT_EQ(field_arith(FieldOp::mul, th, &th2), FieldElement::from_rational(f, BigRational(2)));
  FieldElement inv = field_arith(FieldOp::inv, th);
  EXPECT_EQ(inv, FieldElement(f, {BigRational(0), BigRational(0), BigRational(1, 2)}));
  EXPECT_TRUE(field_arith(FieldOp::sub, th2, &th2).is_zero());
}

TEST(NumberField, InverseRoundTripsOnRandomElements) {
  FieldHandle f = cbrt2_field();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int t = 0; t < 200; ++t) {
    FieldElement x(f, {q(d(rng), 1 + (t % 4)), q(d(rng)), q(d(rng), 3)});
    if (x.is_zero()) continue;
    EXPECT_EQ(x * x.inverse(), FieldElement::from_rational(f, BigRational(1)));
    EXPECT_EQ((x + x) - x, x);
  }
}

TEST(NumberField, ReducibleMinimalPolynomialRejected) {
  // x^3 - x = x (x - 1)(x + 1)
  EXPECT_THROW(NumberField::create(IntPoly({BigInt(0), BigInt(-1), BigInt(0), BigInt(1)}),
                                   RationalInterval(BigRational(1, 2), BigRational(3, 2))),
               InputError);
}

TEST(NumberField, ElementIntervalMatchesDecimalOracle) {
  FieldHandle f = cbrt2_field();
  FieldElement th = FieldElement::generator(f);
  BigRational w = pow10_neg(60);
  RationalInterval iv = element_interval(th, w);
  EXPECT_LE(iv.width(), w);
  // Independent 200-digit constant: its 61-digit truncations bracket cbrt 2.
  BigRational ref = parse_rational(std::string(kCbrt2).substr(0, 63));
  EXPECT_TRUE(RationalInterval(ref, BigRational(ref + pow10_neg(61))).intersects(iv));
  RationalInterval shifted = element_interval(th + BigRational(1), w);
  EXPECT_TRUE(shifted.intersects(iv + BigRational(1)));
  EXPECT_EQ(element_interval(FieldElement::from_rational(f, BigRational(5, 2)), w),
            RationalInterval(BigRational(5, 2)));
}

TEST(RealValue, FloorsAndIntegrality) {
  EXPECT_EQ(floor_exact(RealValue(BigRational(7, 3))), BigInt(2));
  EXPECT_EQ(floor_exact(RealValue(BigRational(-7, 3))), BigInt(-3));
  FieldHandle f = cbrt2_field();
  FieldElement th = FieldElement::generator(f);
  EXPECT_EQ(floor_exact(RealValue(th)), BigInt(1));
  EXPECT_EQ(floor_exact(RealValue(FieldElement(th * th))), BigInt(1));
  EXPECT_TRUE(is_integer(RealValue(BigRational(6, 3))));
  EXPECT_FALSE(is_integer(RealValue(th)));
  EXPECT_TRUE(is_integer(RealValue(FieldElement(f, {BigRational(4), BigRational(0), BigRational(0)}))));
}

TEST(RealValue, DecimalOracleFloorsAndIntegerLimitNeverCertifies) {
  RealValue x(decimal_oracle(kCbrt2));
  EXPECT_EQ(floor_exact(x), BigInt(1));
  EXPECT_THROW(is_integer(x), UndecidableForOracle);
  // Truncations of "2.000" stay inside [2, 3), so that floor is certified.
  EXPECT_EQ(floor_exact(RealValue(decimal_oracle("2.000000000000"))), BigInt(2));
  // Enclosures straddling 2 at every width never certify.
  RealValue straddle(function_oracle(
      [](std::size_t k) {
        BigRational e(1);
        mpq_div_2exp(e.get_mpq_t(), e.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
        return RationalInterval(BigRational(2 - e), BigRational(2 + e));
      },
      "two"));
  EXPECT_THROW(floor_exact(straddle), NonTerminating);
}

TEST(RealValue, CompareAbsDifferenceExactAndOracle) {
  FieldHandle f = cbrt2_field();
  RealValue th{FieldElement::generator(f)};
  RealValue p{BigRational(5, 4)};
  // cbrt 2 - 5/4 = 0.00992...
  EXPECT_LT(compare_abs_difference(th, p, BigRational(1, 100)), 0);
  EXPECT_GT(compare_abs_difference(th, p, BigRational(1, 101)), 0);
  RealValue o{decimal_oracle(kCbrt2)};
  EXPECT_LT(compare_abs_difference(o, p, BigRational(1, 100)), 0);
  EXPECT_GT(compare_abs_difference(o, p, BigRational(1, 101)), 0);
}

TEST(CertifiedLog, EnclosesKnownValues) {
  // log 2 = 0.693147180559945309417232121458...
  RationalInterval l2 = log_interval(BigInt(2), 192);
  BigRational t = parse_rational("0.693147180559945309417232121458");
  EXPECT_TRUE(RationalInterval(t, BigRational(t + pow10_neg(30))).contains(l2));
  EXPECT_LT(l2.width(), pow10_neg(50));
  EXPECT_EQ(log_interval(BigInt(1)), RationalInterval(BigRational(0)));
}
