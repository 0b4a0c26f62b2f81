#include "chains.hpp"
#include "lipvec/errors.hpp"
#include "lipvec/lipstruct.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace lipvec {
namespace {

using testing::l1_ball;
using testing::linf_ball;
using testing::q;
using testing::skew_hexagon;
using testing::v2;

PseudoMetric gauge_metric(const std::string& name, BalancedPolytope p) {
  return PseudoMetric::from_gauge(name, GaugeFunctional::of_set(CircledSet(std::move(p))));
}

const PseudoMetric& l1() {
  static const PseudoMetric m = gauge_metric("L1", l1_ball());
  return m;
}
const PseudoMetric& linf() {
  static const PseudoMetric m = gauge_metric("Linf", linf_ball());
  return m;
}

TEST(EvalMetricTest, Examples) {
  const Vec a = v2(q(1), q(0));
  const Vec b = v2(q(0), q(1));
  EXPECT_EQ(eval_metric(l1(), a, a), ExtRat(0));
  EXPECT_EQ(eval_metric(l1(), a, b), ExtRat(q(2)));
  EXPECT_EQ(eval_metric(PseudoMetric::scaled(q(3), l1()), a, b), ExtRat(q(6)));
  EXPECT_THROW(eval_metric(l1(), a, Vec{q(1)}), DimensionMismatch);
  EXPECT_THROW(PseudoMetric::scaled(q(0), l1()), InvalidArgument);
}

TEST(EvalMetricTest, ChainMetricVanishesOnTheDiagonal) {
  const auto d = PseudoMetric::from_chain("C", DyadicPseudoSeminorm(chain_from_convex(l1_ball(), 4)));
  const Vec x = v2(q(1, 3), q(2));
  EXPECT_EQ(d(x, x), ExtRat(0));
  EXPECT_EQ(d(v2(q(3, 10), q(1, 10)), v2(q(0), q(0))), ExtRat(q(7, 16)));
  EXPECT_FALSE(d.is_sublinear());
}

TEST(GenerateStructureTest, BaseIsSupsOfSubsetsInBitmaskOrder) {
  const auto single = generate_structure({l1()});
  ASSERT_EQ(single.base().size(), 1U);
  EXPECT_TRUE(single.base()[0].same_as(l1()));

  const auto two = generate_structure({l1(), linf()});
  ASSERT_EQ(two.base().size(), 3U);
  EXPECT_EQ(two.base()[0].name(), "L1");
  EXPECT_EQ(two.base()[1].name(), "Linf");
  EXPECT_EQ(two.base()[2].name(), "sup(L1, Linf)");
  const Vec x = v2(q(1, 2), q(-3, 4));
  const Vec y = v2(q(2), q(1, 3));
  EXPECT_EQ(two.base()[2](x, y), max(l1()(x, y), linf()(x, y)));

  EXPECT_EQ(generate_structure(std::vector<PseudoMetric>(8, l1())).base().size(), 255U);
  EXPECT_THROW(generate_structure(std::vector<PseudoMetric>(9, l1())), InvalidArgument);
  EXPECT_THROW(generate_structure({}), InvalidArgument);
}

TEST(ProductStructureTest, SumOfLiftedComponents) {
  const auto lx = generate_structure({l1()});
  const auto ly = generate_structure({linf()});
  const auto p = product_structure(lx, ly);
  ASSERT_EQ(p.base().size(), 1U);
  EXPECT_EQ(p.dimension(), 4U);
  EXPECT_EQ(p.base()[0].name(), "L1 o pi1 + Linf o pi2");

  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const Vec x1 = v2(rng.rational(q(-2), q(2)), rng.rational(q(-2), q(2)));
    const Vec x2 = v2(rng.rational(q(-2), q(2)), rng.rational(q(-2), q(2)));
    const Vec y1 = v2(rng.rational(q(-2), q(2)), rng.rational(q(-2), q(2)));
    const Vec y2 = v2(rng.rational(q(-2), q(2)), rng.rational(q(-2), q(2)));
    const Vec u{x1[0], x1[1], y1[0], y1[1]};
    const Vec v{x2[0], x2[1], y2[0], y2[1]};
    EXPECT_EQ(p.base()[0](u, v), l1()(x1, x2) + linf()(y1, y2));
    EXPECT_LE(PseudoMetric::component(PseudoMetric::Side::left, l1(), 2)(u, v), p.base()[0](u, v));
  }
  // Projections are Lipschitz into the product structure with constant 1.
  const auto proj = structure_contains(p, PseudoMetric::component(PseudoMetric::Side::right, linf(), 2));
  EXPECT_TRUE(proj.contained);
  EXPECT_EQ(proj.kind, CertificateKind::exact);
  EXPECT_EQ(*proj.alpha, q(1));
}

TEST(DominatesTest, Examples) {
  EXPECT_TRUE(dominates(l1(), l1(), q(1)).holds);
  EXPECT_TRUE(dominates(l1(), linf(), q(2)).holds);
  const auto r = dominates(l1(), linf(), q(1));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.ratio, ExtRat(q(2)));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, v2(q(1), q(1)));
  EXPECT_EQ(*r.witness_value, ExtRat(q(2)));

  const auto seg = gauge_metric("seg", BalancedPolytope({v2(q(1), q(0))}));
  const auto bad = dominates(seg, l1(), q(100));
  EXPECT_FALSE(bad.holds);
  EXPECT_TRUE(bad.ratio.is_infinite());
  EXPECT_EQ(*bad.witness, v2(q(0), q(1)));
  EXPECT_TRUE(dominates(l1(), seg, q(1)).holds);  // seg is +inf off the axis

  const auto chain = PseudoMetric::from_chain("C", DyadicPseudoSeminorm(chain_from_convex(l1_ball(), 3)));
  EXPECT_THROW(dominates(chain, l1(), q(1)), InvalidArgument);
  EXPECT_THROW(dominates(l1(), chain, q(1)), InvalidArgument);
}

TEST(StructureContainsTest, Examples) {
  const auto l = generate_structure({linf()});
  const auto self = structure_contains(l, linf());
  EXPECT_TRUE(self.contained);
  EXPECT_EQ(*self.alpha, q(1));

  const auto five = structure_contains(l, PseudoMetric::scaled(q(5), linf()));
  EXPECT_TRUE(five.contained);
  EXPECT_EQ(*five.alpha, q(5));

  const auto r = structure_contains(l, l1());
  EXPECT_TRUE(r.contained);
  EXPECT_EQ(r.kind, CertificateKind::exact);
  EXPECT_EQ(*r.alpha, q(2));
}

TEST(StructureContainsTest, ExactRefutationWithWitness) {
  const auto axis = generate_structure({gauge_metric("seg", BalancedPolytope({v2(q(1), q(0))}))});
  const auto r = structure_contains(axis, l1());
  EXPECT_TRUE(r.contained);  // the segment gauge is +inf off the axis
  const auto bad = structure_contains(generate_structure({l1()}), gauge_metric("seg", BalancedPolytope({v2(q(1), q(0))})));
  EXPECT_FALSE(bad.contained);
  EXPECT_EQ(bad.kind, CertificateKind::exact);
  EXPECT_EQ(*bad.witness, v2(q(0), q(1)));
}

TEST(StructureContainsTest, ChainMetricsAgainstNormsAreRefuted) {
  // d >= 1/16 off the diagonal, L1 -> 0 at the origin: no alpha works.
  const auto chain = PseudoMetric::from_chain("C", DyadicPseudoSeminorm(chain_from_convex(l1_ball(), 4)));
  const auto r = structure_contains(generate_structure({l1()}), chain);
  EXPECT_FALSE(r.contained);
  EXPECT_EQ(r.kind, CertificateKind::exact);
  ASSERT_TRUE(r.witness.has_value());
  const Vec x = Rat(1, 1 << 20) * *r.witness;
  EXPECT_GT(chain(x, zeros(2)), ExtRat(Rat(1000) * l1()(x, zeros(2)).value()));

  const auto scaled = structure_contains(generate_structure({l1(), linf()}), PseudoMetric::scaled(q(1, 3), chain));
  EXPECT_FALSE(scaled.contained);
  EXPECT_EQ(scaled.kind, CertificateKind::exact);
}

TEST(StructureContainsTest, ChainMetricsFallBackToSampling) {
  const auto chain = PseudoMetric::from_chain("C", DyadicPseudoSeminorm(chain_from_convex(l1_ball(), 4)));
  const auto twin = PseudoMetric::from_chain("C'", DyadicPseudoSeminorm(chain_from_convex(l1_ball(), 4)));
  const auto l = LipschitzStructure({PseudoMetric::sup({l1(), twin})});
  const auto r = structure_contains(l, chain, ContainmentMode::exact, {200, 3});
  EXPECT_EQ(r.kind, CertificateKind::sampled);
  EXPECT_TRUE(r.contained);
  EXPECT_LE(*r.alpha, q(1));
  EXPECT_EQ(r.samples, 200U);

  const auto same = structure_contains(generate_structure({chain}), chain);
  EXPECT_EQ(same.kind, CertificateKind::exact);
  EXPECT_EQ(*same.alpha, q(1));
}

TEST(StructureContainsTest, SampledModeReportsObservedRatios) {
  const auto seg = gauge_metric("seg", BalancedPolytope({v2(q(1), q(0))}));
  const auto l = LipschitzStructure({PseudoMetric::sum({seg, seg})});
  const auto r = structure_contains(l, l1(), ContainmentMode::sampled, {100, 1});
  EXPECT_TRUE(r.contained);  // seg + seg is +inf off the axis, so it never refutes

  const auto zero_ish = LipschitzStructure({PseudoMetric::from_chain(
      "tiny", DyadicPseudoSeminorm(chain_from_convex(l1_ball().scaled(q(64)), 4)))});
  const auto v = structure_contains(zero_ish, PseudoMetric::scaled(q(1000), l1()), ContainmentMode::sampled,
                                    {100, 2});
  EXPECT_EQ(v.kind, CertificateKind::sampled);
  EXPECT_TRUE(v.contained);
  EXPECT_GT(*v.alpha, q(1000));
}

TEST(StructureContainsTest, AxiomClosureOnDescriptors) {
  const auto hex = gauge_metric("hex", skew_hexagon());
  const auto l = generate_structure({l1(), linf(), hex});
  for (std::size_t i = 0; i < l.base().size(); ++i) {
    const auto& b = l.base()[i];
    const auto r = structure_contains(l, b);
    EXPECT_TRUE(r.contained);
    EXPECT_LE(*r.alpha, q(1)) << b.name();
    const auto s = structure_contains(l, PseudoMetric::scaled(q(7, 3), b));
    EXPECT_TRUE(s.contained);
    EXPECT_LE(*s.alpha, q(7, 3)) << b.name();
  }
  // (L3): the sup of two generators is in the generated structure with alpha 1.
  const auto sup = structure_contains(l, PseudoMetric::sup({l1(), hex}));
  EXPECT_LE(*sup.alpha, q(1));
  EXPECT_EQ(*certified_bound(PseudoMetric::sup({l1(), hex}), l.base()[4]), q(1));
  // (L1): anything dominated by a base element with constant 1.
  const auto half = PseudoMetric::scaled(q(1, 2), linf());
  ASSERT_TRUE(dominates(half, linf(), q(1)).holds);
  EXPECT_TRUE(structure_contains(l, half).contained);
  // (L4) through d1 + d2 <= 2 (d1 v d2).
  const auto sum = structure_contains(l, PseudoMetric::sum({l1(), linf()}));
  EXPECT_TRUE(sum.contained);
  EXPECT_LE(*sum.alpha, q(2));
}

TEST(MetricPropertyTest, PseudoMetricAxiomsOnRandomTriples) {
  const auto chain = PseudoMetric::from_chain(
      "spiked", DyadicPseudoSeminorm(validated(testing::spiked_chain(
                    l1_ball(), {BalancedPolytope({v2(q(3), q(3))})}, q(1, 12), 4))));
  const std::vector<PseudoMetric> metrics{
      l1(), linf(), gauge_metric("hex", skew_hexagon()), chain,
      PseudoMetric::sup({l1(), chain}), PseudoMetric::sum({PseudoMetric::scaled(q(2, 3), linf()), chain})};
  Rng rng(31);
  for (const auto& d : metrics) {
    std::vector<const PseudoMetric*> ms{&d};
    for (int i = 0; i < 25; ++i) {
      const auto [x, y] = random_pair(ms, rng);
      const Vec z = random_pair(ms, rng).first;
      const ExtRat dxy = d(x, y);
      EXPECT_GE(dxy, ExtRat(0));
      EXPECT_EQ(dxy, d(y, x)) << d.name();
      EXPECT_EQ(d(x, x), ExtRat(0));
      EXPECT_LE(d(x, z), dxy + d(y, z)) << d.name() << " " << to_string(x) << to_string(y) << to_string(z);
    }
  }
}

}  // namespace
}  // namespace lipvec
