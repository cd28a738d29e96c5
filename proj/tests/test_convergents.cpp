#include <gtest/gtest.h>

#include <random>

#include "mcf/bounds.hpp"
#include "mcf/convergents.hpp"
#include "mcf/errors.hpp"
#include "mcf/number_field.hpp"
#include "mcf/periodic_cubic.hpp"
#include "test_support.hpp"

using namespace mcf;
using namespace mcf::testing;

namespace {

BigRational q(long num, long den = 1) { return make_rational(BigInt(num), BigInt(den)); }

std::vector<BigInt> ints(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

FieldHandle cbrt2_field() {
  return NumberField::create(IntPoly(ints({-2, 0, 0, 1})), RationalInterval(q(1), q(2)));
}

std::vector<RealValue> cube_roots() {
  FieldElement th = FieldElement::generator(cbrt2_field());
  return {RealValue(th), RealValue(FieldElement(th * th))};
}

PartialQuotients m2(std::vector<long> a, std::vector<long> b) {
  PartialQuotients pq(2);
  for (long x : a) pq.seqs[0].emplace_back(x);
  for (long x : b) pq.seqs[1].emplace_back(x);
  return pq;
}

// Tilde values straight from their definitions on a column list.
struct Tildes {
  BigInt At, Bt, Ut, Att, Btt, Utt;
};

Tildes tildes_from(const Column& c, const Column& p1, const Column& p2) {
  return {c[0] * p1[2] - c[2] * p1[0], c[1] * p1[2] - p1[1] * c[2], c[0] * p1[1] - p1[0] * c[1],
          c[0] * p2[2] - c[2] * p2[0], c[1] * p2[2] - p2[1] * c[2], c[0] * p2[1] - p2[0] * c[1]};
}

}  // namespace

TEST(ConvStream, RecurrenceEqualsMatrixProduct) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 1 + t % 4;
    PartialQuotients pq = dominant_pq(rng, m, 40);
    std::vector<Column> cols = conv_stream(pq, 40);
    ASSERT_EQ(cols.size(), 40u);
    for (std::size_t n = 0; n < 40; n += 7) {
      Mat p = convergent_product(pq, n);
      for (std::size_t i = 0; i <= m; ++i) EXPECT_EQ(cols[n][i], p[i][0]) << t << " " << n;
      IntMatrix lib = matrix_form(pq, n);
      for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= m; ++j) EXPECT_EQ(lib[i][j], p[i][j]);
      BigInt det = determinant(lib);
      EXPECT_EQ(abs(det), BigInt(1));
    }
  }
}

TEST(ConvStream, InitialColumnsAndFirstValues) {
  EXPECT_EQ(initial_column(2, 1), ints({1, 0, 0}));
  EXPECT_EQ(initial_column(2, 2), ints({0, 1, 0}));
  EXPECT_EQ(initial_column(2, 3), ints({0, 0, 1}));
  std::vector<Column> cols = conv_stream(m2({1, 1, 1}, {1, 1, 1}), 3);
  EXPECT_EQ(cols[0], ints({1, 1, 1}));
  EXPECT_EQ(cols[1], ints({2, 2, 1}));  // col_1 = a_1 col_0 + b_1 col_{-1} + col_{-2}
}

TEST(AuxStream, InitialConditionsAndHandValue) {
  PartialQuotients pq = m2({1, 1, 1}, {0, 0, 1});
  std::vector<AuxValues> aux = aux_stream(pq, 3);
  // aux[i] holds index i - 2.
  EXPECT_EQ(aux[2].n, 0);
  EXPECT_EQ(aux[2].At, BigInt(-1));
  EXPECT_EQ(aux[2].Bt, BigInt(0));
  EXPECT_EQ(aux[3].At, BigInt(0));  // A_1 C_0 - C_1 A_0 = 1*1 - 1*1
}

TEST(AuxStream, DefinitionsRecursionAndBounds) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 25; ++t) {
    PartialQuotients pq = random_admissible_m2(rng, 22, 6);
    std::vector<AuxValues> aux = aux_stream(pq, 22);
    ConvergentTable tab(pq, 22);
    for (std::ptrdiff_t n = 0; n < 22; ++n) {
      const AuxValues& v = aux[static_cast<std::size_t>(n + 2)];
      Tildes d = tildes_from(tab.at(n), tab.at(n - 1), tab.at(n - 2));
      EXPECT_EQ(v.At, d.At);
      EXPECT_EQ(v.Bt, d.Bt);
      EXPECT_EQ(v.Ut, d.Ut);
      EXPECT_EQ(v.Att, d.Att);
      EXPECT_EQ(v.Btt, d.Btt);
      EXPECT_EQ(v.Utt, d.Utt);
      const BigInt& c = tab.at(n)[2];
      EXPECT_LE(abs(v.At), c);
      EXPECT_LE(abs(v.Bt), c);
      EXPECT_LE(abs(v.Att), c);
      EXPECT_LE(abs(v.Btt), c);
      if (n >= 1) {
        // At_n = -b_n At_{n-1} - a_{n-1} At_{n-2} + At_{n-3}.
        auto at = [&](std::ptrdiff_t k) { return BigInt(tab.at(k)[0] * tab.at(k - 1)[2] - tab.at(k)[2] * tab.at(k - 1)[0]); };
        const auto un = static_cast<std::size_t>(n);
        BigInt expect = -pq.at(1, un) * at(n - 1) - pq.at(0, un - 1) * at(n - 2) + at(n - 3);
        EXPECT_EQ(v.At, expect) << t << " " << n;
      }
    }
  }
}

TEST(Tilde, IndependentOfTheFirstQuotient) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    PartialQuotients pq = dominant_pq(rng, 3, 12);
    PartialQuotients other = pq;
    other.seqs[0][11] += 17;
    ConvergentTable a(pq, 12), b(other, 12);
    EXPECT_EQ(tilde(a.at(11), a.at(10)), tilde(b.at(11), b.at(10)));
  }
}

TEST(Witnesses, CubeRootDensityOverTwoHundredIndices) {
  auto x = cube_roots();
  PeriodicSpec spec{{BigInt(1)}, {BigInt(1)}, ints({1, 2}), ints({0, 1})};
  PartialQuotients pq = spec.unroll(203);
  WitnessReport w = approx_witnesses(x, pq, 200);
  EXPECT_EQ(w.checked, 201u);
  // The (m+1)-window argument gives at least one index in every three.
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_GE(3 * w.per_coordinate[i].size(), 201u) << i;
    for (std::size_t k = 1; k < w.per_coordinate[i].size(); ++k) {
      EXPECT_LE(w.per_coordinate[i][k] - w.per_coordinate[i][k - 1], 3u);
    }
  }
  EXPECT_FALSE(window_containment(x, pq, 200).has_value());
}

TEST(Witnesses, ReportedIndicesSurviveRecheck) {
  auto x = cube_roots();
  PeriodicSpec spec{{BigInt(1)}, {BigInt(1)}, ints({1, 2}), ints({0, 1})};
  PartialQuotients pq = spec.unroll(40);
  WitnessReport w = approx_witnesses(x, pq, 30);
  ConvergentTable tab(pq, 40);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t n : w.per_coordinate[i]) {
      const Column& c = tab.at(static_cast<std::ptrdiff_t>(n));
      const Column& c1 = tab.at(static_cast<std::ptrdiff_t>(n + 1));
      BigRational r = make_rational(abs(BigInt(c1[i] * c[2] - c[i] * c1[2])), BigInt(c1[2] * c[2]));
      BigRational p = make_rational(c[i], c[2]);
      // Exact recheck in the field.
      FieldElement diff = x[i].algebraic() - p;
      FieldElement gap = exact_sign(diff) < 0 ? FieldElement(-diff) : diff;
      EXPECT_LT(exact_sign(FieldElement(gap - r)), 0) << n;
    }
  }
}

TEST(Witnesses, ClassicalSquareRootTwoEveryIndex) {
  FieldHandle f = NumberField::create(IntPoly(ints({-2, 0, 1})), RationalInterval(q(1), q(2)));
  std::vector<RealValue> x{RealValue(FieldElement::generator(f))};
  PartialQuotients pq(1);
  pq.seqs[0].emplace_back(1);
  for (int n = 0; n < 40; ++n) pq.seqs[0].emplace_back(2);
  WitnessReport w = approx_witnesses(x, pq, 38);
  EXPECT_EQ(w.per_coordinate[0].size(), 39u);
  EXPECT_EQ(w.simultaneous.size(), 39u);
}

TEST(Bounds, RandomAdmissibleTailsWithZeroStart) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    PartialQuotients pq = random_admissible_m2(rng, 302, 5, true);
    BoundReport r = bound_checks(pq, 300);
    EXPECT_TRUE(r.ok()) << (r.violation ? r.violation->detail : "");
    EXPECT_TRUE(r.numerators_checked);
    EXPECT_LE(r.empirical_k, q(1));
  }
}

TEST(Bounds, ShiftedInputsSatisfyTheBox) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    PartialQuotients pq = random_admissible_m2(rng, 60, 5, true);
    pq.seqs[0][0] = 3;
    pq.seqs[1][0] = 2;
    BoundReport r = bound_checks(pq, 58, BoxHypothesis{BigInt(3), BigInt(2)});
    EXPECT_TRUE(r.ok()) << (r.violation ? r.violation->detail : "");
    EXPECT_TRUE(r.box_checked);
  }
  // The right end is attained: B_1 = M a_1 + 1 = (M + 1) C_1 when a_1 = 1.
  PartialQuotients edge = m2({3, 1, 2}, {2, 0, 1});
  std::vector<Column> cols = conv_stream(edge, 2);
  EXPECT_EQ(cols[1][1], 3 * cols[1][2]);
  EXPECT_TRUE(bound_checks(edge, 1, BoxHypothesis{BigInt(3), BigInt(2)}).ok());
  PartialQuotients pq = m2({3, 2, 2}, {2, 1, 1});
  EXPECT_THROW(bound_checks(pq, 2, BoxHypothesis{BigInt(1), BigInt(2)}), PreconditionViolated);
}

TEST(Bounds, TildeBoundWhenQuotientsStaySmall) {
  std::mt19937_64 rng(10);
  std::size_t checked = 0;
  for (int t = 0; t < 30; ++t) {
    PartialQuotients pq = random_admissible_m2(rng, 40, 3, true);
    BoundReport r = bound_checks(pq, 38);
    EXPECT_TRUE(r.ok());
    checked += r.tilde_checked;
  }
  EXPECT_GT(checked, 100u);
}

TEST(Bounds, InadmissibleInputReportedAsViolation) {
  BoundReport r = bound_checks(m2({0, 1, 1}, {0, 2, 0}), 2);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violation->check, "admissibility");
}

TEST(Proximity, SharedPrefixGapBounds) {
  auto x = cube_roots();
  // Same first quotients, different tail: a periodic pair with equal prefix.
  PeriodicSpec s1{ints({1, 1, 2, 1, 2}), ints({1, 0, 1, 0, 1}), ints({3}), ints({1})};
  CubicCertificate c = solve_periodic(s1);
  std::vector<RealValue> xp{RealValue(c.alpha), RealValue(c.beta)};
  for (std::size_t n = 0; n <= 4; ++n) {
    ProximityReport r = proximity_check(x, xp, n);
    EXPECT_TRUE(r.near_bound_alpha) << n;
    EXPECT_TRUE(r.near_bound_beta) << n;
    EXPECT_TRUE(r.far_bound_alpha) << n;
    EXPECT_TRUE(r.far_bound_beta) << n;
  }
  EXPECT_THROW(proximity_check(x, xp, 5), PrefixMismatch);
}

TEST(Growth, PsiAndEtaBoundsOnBoundedSequences) {
  std::mt19937_64 rng(12);
  for (long M : {1L, 2L, 5L}) {
    for (int t = 0; t < 4; ++t) {
      PartialQuotients pq = random_admissible_m2(rng, 120, static_cast<int>(M));
      GrowthOptions opt;
      opt.max_quotient = BigInt(M);
      GrowthReport r = growth_check(pq, 119, opt);
      EXPECT_TRUE(r.eta_checked);
      EXPECT_FALSE(r.eta_violation.has_value()) << M;
      EXPECT_TRUE(r.psi_checked);
    }
  }
}

TEST(Growth, EtaHypothesisEnforced) {
  GrowthOptions opt;
  opt.max_quotient = BigInt(1);
  EXPECT_THROW(growth_check(m2({0, 2, 1}, {0, 0, 0}), 2, opt), HypothesisViolated);
}

TEST(Growth, GrowthConstantMatchesIndependentValue) {
  // log 3 + log 3/2 + log log 3 for d = 2, m = 2, from 30-digit arithmetic.
  RationalInterval k = growth_constant_k(2, 2);
  BigRational expect = parse_rational("1.59812522439297308954759268447");
  EXPECT_TRUE(RationalInterval(BigRational(expect - q(1, 1000000000)), BigRational(expect + q(1, 1000000000)))
                  .contains(k));
  EXPECT_LT(k.width(), q(1, 1000000));
}

TEST(Growth, DoublyExponentialBoundUnderHypothesis) {
  // C_1 < 3 needs a_1 <= 2; then a_{n+1} < C_n^2.
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5; ++t) {
    PartialQuotients pq = m2({0, 2}, {0, 1});
    ConvergentStream s(pq);
    s.advance();
    s.advance();
    for (std::size_t n = 2; n <= 14; ++n) {
      BigInt c = s.column(0)[2];
      BigInt cap = c * c - 1;
      BigInt a = cap < 1 ? BigInt(1) : BigInt(cap - (t == 0 ? BigInt(0) : BigInt(rng() % 3)));
      if (a < 1) a = 1;
      pq.seqs[0].push_back(a);
      pq.seqs[1].emplace_back(0);
      s.advance();
    }
    GrowthOptions opt;
    opt.d = 2;
    GrowthReport r = growth_check(pq, 14, opt);
    EXPECT_TRUE(r.loglog_checked);
    EXPECT_FALSE(r.loglog_violation.has_value()) << (r.loglog_violation ? r.loglog_violation->detail : "");
  }
}
