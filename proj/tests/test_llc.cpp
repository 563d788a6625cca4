#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/llc.hpp"

using namespace zigzag;

namespace {

FieldPtr field(std::int64_t p) { return GaloisField::make(p, 1); }
ExtElem fe(const FieldPtr& f, std::int64_t n) { return ExtElem(f->from_int(n)); }
ExtElem zero(const FieldPtr& f) { return ExtElem(f->zero()); }

SmoothRepLabel label(const FieldPtr& f, std::int64_t r, UnramValue lambda, std::int64_t s) {
  return smooth_label(f, r, std::move(lambda), s);
}

std::vector<SmoothRepLabel> sorted(std::vector<SmoothRepLabel> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Bracket, Examples) {
  EXPECT_EQ(bracket_normalize(7, 0), 0);
  EXPECT_EQ(bracket_normalize(7, -1), 5);
  EXPECT_EQ(bracket_normalize(5, 5 - 3 - (5 - 2)), 3);
  EXPECT_EQ(bracket_normalize(7, 13), 1);
}

TEST(LlMap, Examples) {
  const auto f = field(7);
  EXPECT_EQ(ll_map(GaloisRep::irreducible(f, 4)), std::vector<SmoothRepLabel>{label(f, 3, zero(f), 0)});

  const ExtElem lam = fe(f, 3);
  const auto image = ll_map(GaloisRep::reducible_pair(f, 3, lam, 1));
  EXPECT_EQ(image, sorted({label(f, 1, lam, 1), label(f, 3, lam.inverse(), 3)}));

  const auto image2 = ll_map(GaloisRep::reducible_pair(f, 2, lam, 2));
  EXPECT_EQ(image2, sorted({label(f, 5, lam, 2), label(f, 5, lam.inverse(), 2)}));
}

TEST(LlMap, SymbolicLambdaIsCarried) {
  const auto f = field(7);
  const UnramValue star = UnknownValue{"*_3"};
  const auto image = ll_map(GaloisRep::reducible_pair(f, 4, star, 3));
  ASSERT_EQ(image.size(), 2u);
  EXPECT_TRUE(is_unknown(image[0].lambda));
  EXPECT_THROW(ll_map(GaloisRep::reducible(f, 4, star, 3, UnknownValue{"other"})), UnknownLambda);
}

TEST(LlInverse, Examples) {
  const auto f = field(7);
  EXPECT_EQ(ll_inverse(f, {label(f, 3, zero(f), 0)}), GaloisRep::irreducible(f, 4));
  const ExtElem lam = fe(f, 3);
  EXPECT_EQ(ll_inverse(f, {label(f, 1, lam, 1), label(f, 3, lam.inverse(), 3)}),
            canonical_form(GaloisRep::reducible_pair(f, 3, lam, 1)));
  EXPECT_THROW(ll_inverse(f, {label(f, 0, fe(f, 1), 0)}), NotInImage);
  EXPECT_THROW(ll_inverse(f, {label(f, 1, lam, 1), label(f, 2, lam.inverse(), 3)}), NotInImage);
  EXPECT_THROW(ll_inverse(f, {}), NotInImage);
}

TEST(LlMap, RoundTripRandom) {
  std::mt19937_64 rng(2024);
  int cases = 0;
  for (std::int64_t p : {5, 7, 11}) {
    const auto f = field(p);
    std::uniform_int_distribution<std::int64_t> exp(0, p * p - 2);
    std::uniform_int_distribution<std::int64_t> unit(1, p - 1);
    for (int k = 0; k < 170; ++k) {
      GaloisRep rep;
      if (k % 2 == 0) {
        std::int64_t c = exp(rng);
        while (c % (p + 1) == 0) c = exp(rng);
        rep = GaloisRep::irreducible(f, c);
      } else {
        rep = GaloisRep::reducible(f, exp(rng), fe(f, unit(rng)), exp(rng), fe(f, unit(rng)));
      }
      EXPECT_EQ(ll_inverse(f, ll_map(rep)), canonical_form(rep)) << rep.to_string();
      ++cases;
    }
  }
  EXPECT_GE(cases, 500);
}

TEST(LlMap, InjectiveOnExhaustiveGrid) {
  const std::int64_t p = 5;
  const auto f = field(p);
  std::map<std::vector<SmoothRepLabel>, std::string> seen;
  std::set<std::string> reps;
  auto record = [&](const GaloisRep& rep) {
    const GaloisRep canon = canonical_form(rep);
    if (!reps.insert(canon.to_string()).second) return;
    const auto image = ll_map(canon);
    const auto [it, inserted] = seen.emplace(image, canon.to_string());
    EXPECT_TRUE(inserted) << canon.to_string() << " collides with " << it->second;
    EXPECT_EQ(ll_inverse(f, image), canon);
  };
  for (std::int64_t c = 0; c < p * p - 1; ++c) {
    if (c % (p + 1) != 0) record(GaloisRep::irreducible(f, c));
  }
  for (std::int64_t a1 = 0; a1 < p - 1; ++a1) {
    for (std::int64_t a2 = 0; a2 < p - 1; ++a2) {
      for (std::int64_t l1 = 1; l1 < p; ++l1) {
        for (std::int64_t l2 = 1; l2 < p; ++l2) record(GaloisRep::reducible(f, a1, fe(f, l1), a2, fe(f, l2)));
      }
    }
  }
  EXPECT_EQ(seen.size(), reps.size());
}

TEST(LlMap, PrincipalSeriesDimensionsPair) {
  for (std::int64_t p : {5, 7, 11}) {
    const auto f = field(p);
    for (std::int64_t a = 0; a < p - 1; ++a) {
      const auto image = ll_map(GaloisRep::reducible_pair(f, a, fe(f, 2), 0));
      ASSERT_EQ(image.size(), 2u);
      EXPECT_EQ(((image[0].r + 1) + (image[1].r + 1)) % (p - 1), 0);
    }
  }
}

TEST(SmoothLabel, NonIrreducibleLabels) {
  const auto f = field(7);
  EXPECT_FALSE(label(f, 0, fe(f, 1), 0).is_irreducible(7));
  EXPECT_FALSE(label(f, 6, fe(f, 6), 2).is_irreducible(7));
  EXPECT_TRUE(label(f, 0, fe(f, 2), 0).is_irreducible(7));
  EXPECT_TRUE(label(f, 3, fe(f, 1), 0).is_irreducible(7));
  EXPECT_EQ(label(f, 0, fe(f, 1), 0).constituents(7).size(), 2u);
  EXPECT_EQ(label(f, 3, zero(f), 2).to_string(), "pi(3, 0, w^2)");
}

TEST(SmoothLabel, JsonRoundTrip) {
  const auto f = field(7);
  const SmoothRepLabel l = label(f, 4, fe(f, 5), 3);
  EXPECT_EQ(smooth_label_from_json(f, to_json(l)), l);
  EXPECT_THROW(smooth_label_from_json(f, nlohmann::json{{"lambda", "1"}}), ParseError);
}

TEST(Supersingular, Equivalence) {
  EXPECT_TRUE(supersingular_equivalence(7, 1, 1, 5, 2));
  EXPECT_TRUE(supersingular_equivalence(7, 3, 0, 3, 0));
  EXPECT_FALSE(supersingular_equivalence(7, 1, 1, 3, 0));
  for (std::int64_t p : {5, 7, 11}) {
    for (std::int64_t r = 0; r < p; ++r) {
      for (std::int64_t s = 0; s < p - 1; ++s) {
        EXPECT_TRUE(supersingular_equivalence(p, r, s, p - 1 - r, s + r));
      }
    }
  }
}

TEST(SelectionTable, Timeline) {
  const auto f = field(7);
  const auto below = jh_selection_table(f, 3, Valuation::halves(-1));
  EXPECT_EQ(below.slot(1)->kind, FSlot::Kind::QUOTIENT_OF);
  EXPECT_EQ(below.slot(2)->kind, FSlot::Kind::ZERO);

  const auto at_t = jh_selection_table(f, 3, Valuation::integer(0));
  EXPECT_EQ(at_t.slot(1)->kind, FSlot::Kind::QUOTIENT_OF);
  EXPECT_EQ(at_t.slot(2)->kind, FSlot::Kind::QUOTIENT_OF);
  EXPECT_EQ(at_t.slot(1)->quotient_of[0].value, inverse(at_t.slot(2)->quotient_of[0].value));

  const auto between = jh_selection_table(f, 3, Valuation::halves(1));
  EXPECT_EQ(between.slot(1)->kind, FSlot::Kind::ZERO);
  EXPECT_EQ(between.slot(2)->kind, FSlot::Kind::QUOTIENT_OF);
  EXPECT_EQ(between.slot(3)->kind, FSlot::Kind::QUOTIENT_OF);

  const auto terminal = jh_selection_table(f, 3, Valuation::integer(3));
  EXPECT_EQ(terminal.slot(3)->quotient_of[0].kind, HeckePolynomial::Kind::QUADRATIC);

  const auto even = jh_selection_table(f, 4, Valuation::integer(1));
  EXPECT_EQ(even.slot(3)->kind, FSlot::Kind::QUOTIENT_OF);
  EXPECT_EQ(even.slot(4)->kind, FSlot::Kind::QUOTIENT_OF);
  EXPECT_EQ(even.slot(5)->kind, FSlot::Kind::QUOTIENT_OF);
  EXPECT_EQ(even.slot(2)->kind, FSlot::Kind::ZERO);

  const auto even_top = jh_selection_table(f, 4, Valuation::halves(5));
  EXPECT_EQ(even_top.slot(4)->quotient_of[0], hecke_t(f));
  EXPECT_EQ(even_top.slot(5)->quotient_of[0], hecke_t(f));
}

TEST(SelectionTable, FormalChotomyFitsEveryRegion) {
  for (std::int64_t p : {5, 7, 11}) {
    const auto f = GaloisField::make(p, 2);
    for (std::int64_t b = 1; b <= p - 1; ++b) {
      for (const Valuation& delta : chotomy_region_offsets(b)) {
        const GaloisRep rep = formal_chotomy(f, b, delta, Valuation::integer(0));
        const FPattern pattern = jh_selection_table(f, b, delta);
        EXPECT_TRUE(llc_cross_check(rep, pattern)) << p << " b=" << b << " delta=" << delta.to_string();
        // A representation from a different region never fits.
        const GaloisRep shifted = twist_by_omega(rep, 1);
        EXPECT_FALSE(llc_cross_check(shifted, pattern)) << p << " b=" << b << " delta=" << delta.to_string();
      }
    }
  }
}

TEST(Gr19, StatementsAtEachPosition) {
  const auto f = field(7);
  const GFElem l1 = f->from_int(3);
  const GFElem d = f->from_int(2);
  const auto at_t = gr19_constraints_at(f, Valuation::integer(0), l1, std::nullopt);
  EXPECT_EQ(at_t.statements.size(), 9u);
  EXPECT_EQ(at_t.pattern.slot(1)->quotient_of, (std::vector<HeckePolynomial>{hecke_linear(ExtElem(l1).inverse())}));
  EXPECT_EQ(at_t.pattern.slot(2)->quotient_of, (std::vector<HeckePolynomial>{hecke_linear(ExtElem(l1))}));
  EXPECT_EQ(at_t.pattern.slot(3)->kind, FSlot::Kind::ZERO);

  const auto half = gr19_constraints_at(f, Valuation::halves(1), std::nullopt, std::nullopt);
  EXPECT_EQ(half.pattern.slot(1)->kind, FSlot::Kind::ZERO);
  EXPECT_EQ(half.pattern.slot(2)->quotient_of, (std::vector<HeckePolynomial>{hecke_t(f)}));
  EXPECT_EQ(half.pattern.slot(3)->quotient_of, (std::vector<HeckePolynomial>{hecke_t(f)}));

  const auto above = gr19_constraints_at(f, Valuation::halves(3), std::nullopt, std::nullopt);
  EXPECT_EQ(above.pattern.slot(3)->quotient_of, (std::vector<HeckePolynomial>{hecke_quadratic(zero(f))}));
  EXPECT_EQ(above.pattern.slot(3)->quotient_of[0].to_string(), "T^2+1");

  const auto at_t1 = gr19_constraints_at(f, Valuation::integer(1), std::nullopt, d);
  EXPECT_EQ(at_t1.pattern.slot(3)->quotient_of, (std::vector<HeckePolynomial>{hecke_quadratic(ExtElem(d))}));
  EXPECT_EQ(at_t1.pattern.slot(2)->kind, FSlot::Kind::ZERO);

  int applying = 0;
  for (const auto& st : at_t1.statements) applying += st.applies ? 1 : 0;
  EXPECT_EQ(applying, 3);
  EXPECT_THROW(gr19_constraints_at(f, Valuation::integer(0), std::nullopt, std::nullopt), InvalidArgument);
}

TEST(Gr19, TheoremBranchesAgreeWithStatements) {
  std::set<std::int64_t> deltas_seen;
  for (std::int64_t p : {5, 7}) {
    const auto ctx = PadicContext::make(p, 2, 16);
    for (std::int64_t m = 1; m <= 3 * p; ++m) {
      const std::int64_t r = 3 + m * (p - 1);
      for (std::int64_t A = 1; A < p; ++A) {
        for (std::int64_t B = 0; B < p; ++B) {
          const auto a_p = ExactQuadratic(ctx, A, B) * ExactQuadratic::uniformizer_power(ctx, 3);
          const auto expected = oracle::slope_three_halves(p, r, A, B);
          const auto zp = zigzag_params(p, r + 2, a_p);
          const auto [branch, rep] = chotomy_prediction(zp);
          const Gr19Constraints constraints = gr19_constraints(p, r, a_p);
          EXPECT_EQ(constraints.tau.twice() - 2 * constraints.t.floor(), expected.tau_halves - 2 * expected.t);
          if (expected.lambda1) {
            ASSERT_TRUE(constraints.lambda1.has_value());
            EXPECT_EQ(*constraints.lambda1, ctx->field()->from_int(*expected.lambda1));
          }
          if (expected.trace2) {
            ASSERT_TRUE(constraints.d.has_value());
            EXPECT_EQ(*constraints.d, ctx->field()->from_int(*expected.trace2));
          }
          EXPECT_TRUE(llc_cross_check(rep, constraints.pattern))
              << "p=" << p << " r=" << r << " A=" << A << " B=" << B << " " << constraints.pattern.to_string()
              << " rep=" << rep.to_string();
          deltas_seen.insert(std::min<std::int64_t>(expected.tau_halves - 2 * expected.t, 3));
        }
      }
    }
  }
  // Below t, at t, at t+1/2, at t+1 and beyond t+1 all occur.
  for (std::int64_t d : {0, 1, 2, 3}) EXPECT_TRUE(deltas_seen.count(d)) << d;
  EXPECT_TRUE(std::any_of(deltas_seen.begin(), deltas_seen.end(), [](std::int64_t d) { return d < 0; }));
}

TEST(Gr19, HalfStepSupersingularCoincidence) {
  for (std::int64_t p : {5, 7, 11}) {
    const auto f = field(p);
    const auto j2 = jh_factor(p, 3, 2);
    const auto j3 = jh_factor(p, 3, 3);
    EXPECT_TRUE(supersingular_equivalence(p, j2.m, j2.s, j3.m, j3.s));
    const GaloisRep target = GaloisRep::irreducible(f, 3 + p);
    const auto image = ll_map(target);
    ASSERT_EQ(image.size(), 1u);
    EXPECT_TRUE(supersingular_equivalence(p, image[0].r, image[0].s, j2.m, j2.s));
    const auto half = gr19_constraints_at(f, Valuation::halves(1), std::nullopt, std::nullopt);
    EXPECT_TRUE(llc_cross_check(target, half.pattern));
    FPattern only_j3 = half.pattern;
    only_j3.slots[2].kind = FSlot::Kind::ZERO;
    EXPECT_TRUE(llc_cross_check(target, only_j3));
    FPattern only_j2 = half.pattern;
    only_j2.slots[3].kind = FSlot::Kind::ZERO;
    EXPECT_TRUE(llc_cross_check(target, only_j2));
  }
}

TEST(Gr19, WrongRepresentationIsRejected) {
  const auto f = field(7);
  const GFElem l1 = f->from_int(3);
  const auto at_t = gr19_constraints_at(f, Valuation::integer(0), l1, std::nullopt);
  EXPECT_TRUE(llc_cross_check(GaloisRep::reducible_pair(f, 3, ExtElem(l1), 1), at_t.pattern));
  EXPECT_FALSE(llc_cross_check(GaloisRep::reducible_pair(f, 3, ExtElem(f->from_int(2)), 1), at_t.pattern));
  EXPECT_FALSE(llc_cross_check(GaloisRep::irreducible(f, 10), at_t.pattern));
}

TEST(Gr19, Preconditions) {
  const auto ctx = PadicContext::make(7, 2, 16);
  EXPECT_THROW(gr19_constraints(7, 3, ExactQuadratic::uniformizer_power(ctx, 3)), InvalidArgument);
  EXPECT_THROW(gr19_constraints(7, 10, ExactQuadratic::uniformizer_power(ctx, 3)), InvalidArgument);
  EXPECT_THROW(gr19_constraints(3, 5, ExactQuadratic::uniformizer_power(PadicContext::make(3, 2, 8), 3)),
               InvalidArgument);
}
