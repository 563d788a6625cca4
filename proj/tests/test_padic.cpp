#include <gtest/gtest.h>

#include <random>

#include "zigzag/padic.hpp"
#include "zigzag/phi_module.hpp"

using namespace zigzag;

namespace {

// Valuation by repeated trial division, independent of the library helpers.
std::int64_t trial_division_valuation(BigInt n, std::int64_t p) {
  if (n < 0) n = -n;
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

BigInt factorial_ratio_binomial(std::int64_t n, std::int64_t j) {
  BigInt num = 1;
  BigInt den = 1;
  for (std::int64_t i = 1; i <= j; ++i) {
    num *= n - j + i;
    den *= i;
  }
  return num / den;
}

ContextPtr ctx5() { return PadicContext::make(5, 2, 12); }

}  // namespace

TEST(Valuation, NormalizedSoThatPHasValuationOne) {
  const auto ctx = ctx5();
  EXPECT_EQ(PadicElement::from_integer(ctx, 5).valuation(), Valuation::integer(1));
  EXPECT_EQ(ExactQuadratic::from_integer(ctx, 5).valuation(), Valuation::integer(1));
}

TEST(Valuation, HalfIntegralPowers) {
  const auto ctx = ctx5();
  const auto x = ExactQuadratic(ctx, 0, 2 * 5);  // 2·5^{3/2}
  EXPECT_EQ(x.valuation(), Valuation::halves(3));
  EXPECT_EQ(x.to_padic().valuation(), Valuation::halves(3));
}

TEST(Valuation, FactorizedInteger) {
  const auto ctx = ctx5();
  EXPECT_EQ(PadicElement::from_integer(ctx, -230).valuation(), Valuation::integer(1));
  EXPECT_EQ(vp(BigInt(-230), 5), Valuation::integer(1));
}

TEST(PadicMul, ValuationsAdd) {
  const auto ctx = ctx5();
  const auto p = PadicElement::from_integer(ctx, 5);
  EXPECT_EQ((p * p).valuation(), Valuation::integer(2));
}

TEST(PadicMul, SquareOfOnePlusRootFive) {
  const auto ctx = ctx5();
  const ExactQuadratic w(ctx, 1, 1);
  const ExactQuadratic sq = w * w;
  EXPECT_EQ(sq, ExactQuadratic(ctx, 6, 2));
  const PadicElement padic = w.to_padic() * w.to_padic();
  EXPECT_EQ(padic.valuation(), Valuation::integer(0));
  const auto digits = padic.digits();
  ASSERT_GE(digits.size(), 2U);
  EXPECT_FALSE(digits[1].is_zero());
  EXPECT_TRUE(padic.equals_to_precision(sq.to_padic()));
}

TEST(PadicMul, ZeroToPrecisionAbsorbs) {
  const auto ctx = ctx5();
  const auto z = PadicElement::zero(ctx, 8);
  const auto x = PadicElement::from_integer(ctx, 7);
  EXPECT_TRUE((x * z).is_zero());
}

TEST(PadicAdd, FullCancellation) {
  const auto ctx = ctx5();
  const auto p = PadicElement::from_integer(ctx, 5);
  const auto s = p + (-p);
  EXPECT_TRUE(s.is_zero());
  EXPECT_TRUE(s.valuation().is_infinite());
  EXPECT_THROW(static_cast<void>(s.require_finite_valuation()), PrecisionExhausted);
}

TEST(PadicAdd, SquarePlusP) {
  const auto ctx = ctx5();
  const ExactQuadratic ap(ctx, 0, 2);
  const auto s = ap * ap + ExactQuadratic::from_integer(ctx, 5);
  EXPECT_EQ(s, ExactQuadratic::from_integer(ctx, 25));
  EXPECT_EQ(s.valuation(), Valuation::integer(2));
  const auto padic = ap.to_padic() * ap.to_padic() + PadicElement::from_integer(ctx, 5);
  EXPECT_EQ(padic.valuation(), Valuation::integer(2));
}

TEST(PadicAdd, RootTermDominates) {
  const auto ctx = ctx5();
  const ExactQuadratic x(ctx, -2595, 2);
  EXPECT_EQ(x.valuation(), Valuation::halves(1));
  const auto padic = PadicElement::from_integer(ctx, -2595) + ExactQuadratic(ctx, 0, 2).to_padic();
  EXPECT_EQ(padic.valuation(), Valuation::halves(1));
}

TEST(PadicArithmetic, RandomAgreementWithExactModel) {
  const auto ctx = PadicContext::make(7, 2, 16);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coeff(-400, 400);
  for (int trial = 0; trial < 200; ++trial) {
    ExactQuadratic a(ctx, coeff(rng), coeff(rng));
    ExactQuadratic b(ctx, coeff(rng), coeff(rng));
    if (a.is_zero() || b.is_zero()) continue;
    const auto sum = a + b;
    const auto prod = a * b;
    const auto quot = a / b;
    EXPECT_EQ(prod.valuation(), a.valuation() + b.valuation());
    if (!sum.is_zero()) {
      EXPECT_GE(sum.valuation(), min(a.valuation(), b.valuation()));
      if (a.valuation() != b.valuation()) EXPECT_EQ(sum.valuation(), min(a.valuation(), b.valuation()));
      EXPECT_EQ((a.to_padic() + b.to_padic()).valuation(), sum.valuation());
    }
    EXPECT_TRUE((a.to_padic() * b.to_padic()).equals_to_precision(prod.to_padic()));
    EXPECT_TRUE((a.to_padic() / b.to_padic()).equals_to_precision(quot.to_padic()));
  }
}

TEST(BinomialValuation, Examples) {
  EXPECT_EQ(binomial_valuation(22, 2, 5), 0);
  EXPECT_EQ(binomial_valuation(5, 1, 5), 1);
  EXPECT_EQ(binomial_valuation(17, 0, 5), 0);
}

TEST(BinomialValuation, AgreesWithFactorizationOracle) {
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (std::int64_t n = 0; n <= 200; ++n) {
      for (std::int64_t j = 0; j <= n; ++j) {
        const BigInt c = factorial_ratio_binomial(n, j);
        ASSERT_EQ(binomial(n, j), c);
        ASSERT_EQ(binomial_valuation(n, j, p), trial_division_valuation(c, p)) << n << " " << j << " " << p;
      }
    }
  }
}

TEST(Alpha, Examples) {
  EXPECT_EQ(alpha(3, 5), 0);
  EXPECT_EQ(alpha(4, 5), 1);
  EXPECT_EQ(alpha(0, 7), 0);
}

TEST(Alpha, MonotoneAndBounded) {
  for (std::int64_t p : {3, 5, 7, 11}) {
    std::int64_t prev = 0;
    for (std::int64_t n = 0; n <= 500; ++n) {
      const std::int64_t a = alpha(n, p);
      EXPECT_GE(a, prev);
      prev = a;
      const double log_term = n > 0 ? std::log(static_cast<double>(n)) / std::log(static_cast<double>(p)) : 0.0;
      EXPECT_LE(static_cast<double>(a), static_cast<double>(n) / static_cast<double>(p - 2) + log_term + 1.0);
    }
  }
}

TEST(Teichmuller, TrivialLifts) {
  const auto ctx = PadicContext::make(5, 1, 4);
  const auto& field = ctx->field();
  const UnramifiedRing ring(ctx, 2);
  EXPECT_EQ(ring.teichmuller(field->one()), ring.from_int(1));
  EXPECT_EQ(ring.teichmuller(field->zero()), ring.zero());
  EXPECT_TRUE(PadicElement::teichmuller(ctx, field->zero()).is_zero());
}

TEST(Teichmuller, TwoModTwentyFive) {
  const auto ctx = PadicContext::make(5, 1, 4);
  const UnramifiedRing ring(ctx, 2);
  EXPECT_EQ(ring.teichmuller(ctx->field()->from_int(2)), ring.from_int(7));
}

TEST(Teichmuller, FixedByFrobeniusPower) {
  for (std::int64_t p : {3, 5, 7}) {
    for (int f : {1, 2}) {
      const auto ctx = PadicContext::make(p, f, 12);
      const auto& field = ctx->field();
      for (int m = 1; m <= 6; ++m) {
        const UnramifiedRing ring(ctx, m);
        const auto q = static_cast<std::uint64_t>(field->order());
        for (std::int64_t idx = 0; idx < field->order(); ++idx) {
          const GFElem lambda = field->element(idx);
          const WVec t = ring.teichmuller(lambda);
          EXPECT_EQ(ring.pow(t, q), t);
          EXPECT_EQ(ring.residue(t), lambda);
        }
      }
    }
  }
}

TEST(PositiveSlope, Examples) {
  const auto ctx = ctx5();
  EXPECT_TRUE(is_positive_slope_irreducible(FilteredPhiModule<ExactQuadratic>(24, ExactQuadratic(ctx, 0, 10))));
  EXPECT_FALSE(is_positive_slope_irreducible(FilteredPhiModule<ExactQuadratic>(24, ExactQuadratic(ctx, 3))));
  EXPECT_TRUE(is_positive_slope_irreducible(FilteredPhiModule<ExactQuadratic>(4, ExactQuadratic(ctx, 5))));
  EXPECT_THROW(FilteredPhiModule<ExactQuadratic>(1, ExactQuadratic(ctx, 5)), InvalidWeight);
  EXPECT_THROW(is_positive_slope_irreducible(FilteredPhiModule<ExactQuadratic>(4, ExactQuadratic(ctx, 0))), ZeroAp);
}

TEST(PositiveSlope, DeterminantValuation) {
  const auto ctx = ctx5();
  for (std::int64_t k = 2; k < 12; ++k) {
    const FilteredPhiModule<PadicElement> m(k, ExactQuadratic(ctx, 3, 1).to_padic());
    EXPECT_EQ(m.determinant().valuation(), Valuation::integer(k - 1));
    EXPECT_EQ(m.filtration_dimension(k - 1), 1);
    EXPECT_EQ(m.filtration_dimension(k), 0);
  }
}
