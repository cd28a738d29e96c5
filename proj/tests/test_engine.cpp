#include <gtest/gtest.h>

#include <random>

#include "mcf/errors.hpp"
#include "mcf/expansion.hpp"
#include "mcf/number_field.hpp"
#include "test_support.hpp"

using namespace mcf;
using mcf::testing::naive_expand_rational;

namespace {

BigRational q(long num, long den = 1) { return make_rational(BigInt(num), BigInt(den)); }

std::vector<BigInt> ints(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

const char* kCbrt2 =
    "1.2599210498948731647672106072782283505702514647015079800819751121552996765139594837293965624362550941543102"
    "560356156652593990240406137372284591103042693552469606426166250009774745265654803068671854055186";
const char* kCbrt4 =
    "1.5874010519681994747517056392723082603914933278998530098082857618252165056242191732735442132622209570229347"
    "616813220179034976598981527522781400110445414466193755182785624368732905124850722923374497742753";

FieldHandle cbrt2_field() {
  return NumberField::create(IntPoly(ints({-2, 0, 0, 1})), RationalInterval(q(1), q(2)));
}

PartialQuotients m2(std::vector<long> a, std::vector<long> b) {
  PartialQuotients pq(2);
  for (long x : a) pq.seqs[0].emplace_back(x);
  for (long x : b) pq.seqs[1].emplace_back(x);
  return pq;
}

}  // namespace

TEST(JacobiStep, RationalHandTrace) {
  JacobiStep s = jacobi_step(RealValue(q(7, 5)), RealValue(q(3, 5)));
  EXPECT_EQ(s.a, BigInt(1));
  EXPECT_EQ(s.b, BigInt(0));
  EXPECT_EQ(s.alpha_next.rational(), q(5, 3));
  EXPECT_EQ(s.beta_next.rational(), q(2, 3));
  JacobiStep t = jacobi_step(s.alpha_next, s.beta_next, 1);
  EXPECT_EQ(t.a, BigInt(1));
  EXPECT_EQ(t.b, BigInt(0));
  EXPECT_EQ(t.alpha_next.rational(), q(3, 2));
  EXPECT_EQ(t.beta_next.rational(), q(1));
  EXPECT_THROW(jacobi_step(t.alpha_next, t.beta_next, 2), Interruption);
}

TEST(JacobiStep, CubeRootsStayInTheField) {
  FieldHandle f = cbrt2_field();
  FieldElement th = FieldElement::generator(f);
  JacobiStep s = jacobi_step(RealValue(th), RealValue(FieldElement(th * th)));
  EXPECT_EQ(s.a, BigInt(1));
  EXPECT_EQ(s.b, BigInt(1));
  // alpha_1 = 1/(th^2 - 1), beta_1 = (th - 1)/(th^2 - 1), checked by multiplying back.
  FieldElement one = FieldElement::from_rational(f, q(1));
  FieldElement d = th * th - q(1);
  EXPECT_EQ(s.alpha_next.algebraic() * d, one);
  EXPECT_EQ(s.beta_next.algebraic() * d, th - q(1));
}

TEST(Expand, InterruptionTraceMatchesHandOracle) {
  ExpansionRecord r = expand({RealValue(q(7, 5)), RealValue(q(3, 5))}, 4, true);
  EXPECT_EQ(r.pq.seqs[0], ints({1, 1, 1, 2}));
  EXPECT_EQ(r.pq.seqs[1], ints({0, 0, 1}));
  ASSERT_EQ(r.interruptions.size(), 1u);
  EXPECT_EQ(r.interruptions[0].index, 2u);
  EXPECT_EQ(r.interruptions[0].dim_after, 1u);
  ASSERT_TRUE(r.terminated_at.has_value());
  EXPECT_EQ(*r.terminated_at, 3u);
}

TEST(Expand, ClassicalContinuedFractionInDimensionOne) {
  ExpansionRecord r = expand({RealValue(q(10, 7))}, 4, false);
  EXPECT_EQ(r.pq.seqs[0], ints({1, 2, 3}));
}

TEST(Expand, CubeRootsMatchTwoHundredDigitOracleRun) {
  FieldHandle f = cbrt2_field();
  FieldElement th = FieldElement::generator(f);
  ExpansionRecord exact = expand({RealValue(th), RealValue(FieldElement(th * th))}, 30, false);
  ExpansionRecord oracle = expand({RealValue(decimal_oracle(kCbrt2)), RealValue(decimal_oracle(kCbrt4))}, 30, false);
  EXPECT_FALSE(exact.oracle_path);
  EXPECT_TRUE(oracle.oracle_path);
  EXPECT_EQ(exact.pq, oracle.pq);
  // Recomputed with 210-digit floating point outside this code base:
  // (1,1), then (1,0), (2,1) repeating.
  for (std::size_t n = 1; n < 30; ++n) {
    EXPECT_EQ(exact.pq.at(0, n), BigInt(n % 2 == 1 ? 1 : 2)) << n;
    EXPECT_EQ(exact.pq.at(1, n), BigInt(n % 2 == 1 ? 0 : 1)) << n;
  }
  EXPECT_EQ(exact.pq.at(0, 0), BigInt(1));
  EXPECT_EQ(exact.pq.at(1, 0), BigInt(1));
  // Every oracle floor carries the width that certified it.
  ASSERT_EQ(oracle.widths.size(), 30u);
  for (const auto& w : oracle.widths) EXPECT_EQ(w.size(), 2u);
}

TEST(Expand, TracedCompleteQuotientsExceedOne) {
  FieldHandle f = cbrt2_field();
  FieldElement th = FieldElement::generator(f);
  ExpansionRecord r = expand({RealValue(th), RealValue(FieldElement(th * th))}, 12, true);
  ASSERT_GE(r.trace.size(), 12u);
  for (std::size_t n = 1; n < r.trace.size(); ++n) {
    EXPECT_GT(compare(r.trace[n][0], q(1)), 0) << n;
  }
}

TEST(Expand, RandomRationalsMatchNaiveOracleAndTerminate) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(1, 400), den(1, 97);
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = 1 + t % 3;
    std::vector<mpq_class> x;
    std::vector<RealValue> in;
    for (std::size_t i = 0; i < m; ++i) {
      x.push_back(q(num(rng), den(rng)));
      in.emplace_back(x.back());
    }
    ExpansionRecord r = expand(in, 200, false);
    auto naive = naive_expand_rational(x, 200);
    ASSERT_EQ(r.pq.seqs, naive) << t;
    EXPECT_TRUE(r.terminated_at.has_value()) << t;
    EXPECT_LE(r.interruptions.size(), m - 1);
    for (std::size_t k = 1; k < r.interruptions.size(); ++k) {
      EXPECT_LT(r.interruptions[k].dim_after, r.interruptions[k - 1].dim_after);
    }
  }
}

TEST(Expand, MixedFieldsFallBackToEnclosures) {
  FieldHandle f = cbrt2_field();
  FieldHandle g = NumberField::create(IntPoly(ints({-2, 0, 1})), RationalInterval(q(1), q(2)));
  ExpansionRecord r =
      expand({RealValue(FieldElement::generator(f)), RealValue(FieldElement::generator(g))}, 6, false);
  EXPECT_TRUE(r.oracle_path);
  EXPECT_EQ(r.pq.full_length(), 6u);
}

TEST(Admissible, TwoDimensionalExamples) {
  EXPECT_TRUE(check_admissible(m2({3, 2, 2, 2, 2, 2}, {1, 1, 1, 1, 1, 1})).ok());

  AdmissibilityReport tie = check_admissible(m2({0, 3, 3, 3, 3, 2, 3}, {0, 1, 1, 1, 1, 2, 0}));
  ASSERT_FALSE(tie.ok());
  EXPECT_EQ(tie.violations.front().index, 6u);

  AdmissibilityReport big_b = check_admissible(m2({0, 3, 3, 2, 3}, {0, 1, 1, 3, 1}));
  ASSERT_FALSE(big_b.ok());
  EXPECT_EQ(big_b.violations.front().index, 3u);

  // Index 0 is unconstrained.
  EXPECT_TRUE(check_admissible(m2({-4, 1}, {7, 0})).ok());
  // A tie at the last index cannot be decided and is skipped.
  EXPECT_TRUE(check_admissible(m2({0, 2}, {0, 2})).ok());
}

TEST(Admissible, ExpansionsOfRandomRationalsAreAdmissible) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(1, 10000), den(1, 9973);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 2 + t % 3;
    std::vector<RealValue> in;
    for (std::size_t i = 0; i < m; ++i) in.emplace_back(q(num(rng), den(rng)));
    ExpansionRecord r = expand(in, 40, false);
    // Only the prefix before the first interruption is a full m-dimensional run.
    std::size_t cut = r.interruptions.empty() ? r.pq.full_length() : r.interruptions.front().index;
    EXPECT_TRUE(check_admissible(r.pq.prefix(cut)).ok()) << t;
  }
}

TEST(Admissible, IndependentTwoDimensionalRuleAgrees) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(0, 3);
  for (int t = 0; t < 2000; ++t) {
    PartialQuotients pq(2);
    for (int n = 0; n < 6; ++n) {
      pq.seqs[0].emplace_back(d(rng));
      pq.seqs[1].emplace_back(d(rng));
    }
    bool ok = true;
    for (std::size_t n = 1; n < 6; ++n) {
      const auto &a = pq.at(0, n), &b = pq.at(1, n);
      if (a < 1 || b < 0 || b > a) ok = false;
      if (a == b && n + 1 < 6 && pq.at(1, n + 1) < 1) ok = false;
    }
    EXPECT_EQ(check_admissible(pq).ok(), ok) << t;
  }
}

TEST(Expand, JsonLinesCarryInterruptionEvent) {
  ExpansionRecord r = expand({RealValue(q(7, 5)), RealValue(q(3, 5))}, 4, false);
  std::string out = to_jsonl(r);
  EXPECT_NE(out.find("\"event\":\"interruption\""), std::string::npos);
  EXPECT_NE(out.find("{\"n\":3,\"a\":[\"2\"],\"event\":\"step\"}"), std::string::npos);
}
