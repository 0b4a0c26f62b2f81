#include "lipvec/errors.hpp"
#include "lipvec/gauge.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace lipvec {
namespace {

using testing::l1_ball;
using testing::l1_norm;
using testing::linf_ball;
using testing::linf_norm;
using testing::q;
using testing::skew_hexagon;
using testing::v2;

GaugeFunctional gauge_of(BalancedPolytope p) { return GaugeFunctional::of_set(CircledSet(std::move(p))); }

TEST(GaugeEvalTest, Examples) {
  const auto l1 = gauge_of(l1_ball());
  EXPECT_EQ(gauge_eval(l1, v2(q(0), q(0))), ExtRat(0));
  EXPECT_EQ(gauge_eval(l1, v2(q(1), q(1))), ExtRat(q(2)));
  const auto seg = gauge_of(BalancedPolytope({v2(q(1), q(0))}));
  EXPECT_TRUE(gauge_eval(seg, v2(q(0), q(1))).is_infinite());
  EXPECT_EQ(gauge_eval(seg, v2(q(-5, 2), q(0))), ExtRat(q(5, 2)));
  EXPECT_THROW(gauge_eval(l1, Vec{q(1)}), DimensionMismatch);
}

TEST(GaugeEvalTest, SubspaceGaugeRejectsPointsOffTheSpan) {
  const auto pa = GaugeFunctional::on_span(BalancedPolytope({v2(q(1), q(0))}));
  EXPECT_EQ(gauge_eval(pa, v2(q(3), q(0))), ExtRat(q(3)));
  EXPECT_EQ(gauge_eval(pa, v2(q(0), q(0))), ExtRat(0));
  EXPECT_THROW(gauge_eval(pa, v2(q(0), q(1))), OutsideSubspace);
  EXPECT_TRUE(pa.in_domain(v2(q(7), q(0))));
  EXPECT_FALSE(pa.in_domain(v2(q(7), q(1))));
}

TEST(GaugeEvalTest, UnionGaugeIsMinimumOverPieces) {
  const auto cross = GaugeFunctional::of_set(
      CircledSet({BalancedPolytope({v2(q(1), q(0))}), BalancedPolytope({v2(q(0), q(2))})}));
  EXPECT_EQ(gauge_eval(cross, v2(q(3), q(0))), ExtRat(q(3)));
  EXPECT_EQ(gauge_eval(cross, v2(q(0), q(3))), ExtRat(q(3, 2)));
  EXPECT_TRUE(gauge_eval(cross, v2(q(1), q(1))).is_infinite());
}

TEST(SupOverTest, Examples) {
  EXPECT_EQ(sup_over(l1_ball(), gauge_of(linf_ball())).value, ExtRat(q(1)));
  EXPECT_EQ(sup_over(BalancedPolytope({v2(q(2), q(0))}), gauge_of(BalancedPolytope({v2(q(1), q(0))}))).value,
            ExtRat(q(2)));
  EXPECT_EQ(sup_over(BalancedPolytope({v2(q(0), q(0))}), gauge_of(l1_ball())).value, ExtRat(0));

  const auto bad = sup_over(l1_ball(), gauge_of(BalancedPolytope({v2(q(1), q(0))})));
  EXPECT_TRUE(bad.value.is_infinite());
  ASSERT_TRUE(bad.offending_generator.has_value());
  EXPECT_EQ(*bad.offending_generator, v2(q(0), q(1)));
}

TEST(DominationBoundTest, Examples) {
  const auto self = domination_bound(GaugeFunctional::on_span(l1_ball()), l1_ball(), 100, 1);
  EXPECT_EQ(self.bound, q(1));
  EXPECT_TRUE(self.passed());
  EXPECT_EQ(*self.min_slack, q(0));

  const auto linf = gauge_of(linf_ball());
  const auto r = domination_bound(linf, l1_ball(), 200, 2);
  EXPECT_EQ(r.bound, q(1));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(gauge_eval(linf, v2(q(1), q(1))), ExtRat(q(1)));
  EXPECT_EQ(gauge_eval(GaugeFunctional::on_span(l1_ball()), v2(q(1), q(1))), ExtRat(q(2)));

  const BalancedPolytope a({v2(q(2), q(0))});
  const auto seg = domination_bound(gauge_of(BalancedPolytope({v2(q(1), q(0))})), a, 200, 3);
  EXPECT_EQ(seg.bound, q(2));
  EXPECT_TRUE(seg.passed());
  EXPECT_EQ(gauge_eval(gauge_of(BalancedPolytope({v2(q(1), q(0))})), v2(q(4), q(0))), ExtRat(q(4)));

  EXPECT_THROW(domination_bound(gauge_of(BalancedPolytope({v2(q(1), q(0))})), l1_ball(), 10, 1),
               InfiniteValue);
}

Vec random_grid_point(Rng& rng) {
  return v2(Rat(rng.integer(-12, 12), rng.integer(1, 6)), Rat(rng.integer(-12, 12), rng.integer(1, 6)));
}

TEST(GaugePropertyTest, HomogeneityAndSymmetry) {
  Rng rng(21);
  for (const auto& base : {l1_ball(), linf_ball(), skew_hexagon()}) {
    const auto g = gauge_of(base);
    for (int i = 0; i < 40; ++i) {
      const Vec x = random_grid_point(rng);
      const Rat s = rng.rational(q(1, 8), q(4));
      const ExtRat gx = gauge_eval(g, x);
      EXPECT_EQ(gauge_eval(g, s * x), s * gx);
      EXPECT_EQ(gauge_eval(g, -x), gx);
    }
  }
}

TEST(GaugePropertyTest, UnitBallSandwich) {
  Rng rng(22);
  const auto cross = CircledSet({skew_hexagon(), BalancedPolytope({v2(q(3), q(3))})});
  const auto g = GaugeFunctional::of_set(cross);
  for (int i = 0; i < 80; ++i) {
    const Vec x = rng.coin() ? random_point(cross, rng) : random_grid_point(rng);
    const ExtRat gx = gauge_eval(g, x);
    const bool inside = member(cross, x);
    if (gx < ExtRat(q(1))) EXPECT_TRUE(inside);
    if (inside) EXPECT_LE(gx, ExtRat(q(1)));
  }
}

TEST(GaugePropertyTest, SubadditiveOnConvexBases) {
  Rng rng(23);
  for (const auto& base : {l1_ball(), linf_ball(), skew_hexagon()}) {
    const auto g = gauge_of(base);
    for (int i = 0; i < 40; ++i) {
      const Vec x = random_grid_point(rng);
      const Vec y = random_grid_point(rng);
      EXPECT_LE(gauge_eval(g, x + y), gauge_eval(g, x) + gauge_eval(g, y));
    }
  }
}

TEST(GaugePropertyTest, MatchesNormClosedForms) {
  const auto l1 = gauge_of(l1_ball());
  const auto linf = gauge_of(linf_ball());
  for (long i = -10; i <= 10; i += 3) {
    for (long j = -10; j <= 10; j += 3) {
      const Vec x = v2(q(i, 5), q(j, 5));
      EXPECT_EQ(gauge_eval(l1, x), ExtRat(l1_norm(x)));
      EXPECT_EQ(gauge_eval(linf, x), ExtRat(linf_norm(x)));
    }
  }
}

}  // namespace
}  // namespace lipvec
