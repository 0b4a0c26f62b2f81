#include "lipvec/gauge.hpp"

#include "balanced_lp.hpp"
#include "lipvec/errors.hpp"
#include "lipvec/lp.hpp"

#include <utility>

namespace lipvec {

GaugeFunctional::GaugeFunctional(CircledSet base, bool restricted)
    : base_(std::move(base)), restricted_(restricted) {
  if (restricted_) {
    const auto& gens = base_.pieces().front().generators();
    for (std::size_t i : independent_subset(gens)) span_basis_.push_back(gens[i]);
  }
}

GaugeFunctional GaugeFunctional::of_set(CircledSet base) {
  return GaugeFunctional(std::move(base), false);
}

GaugeFunctional GaugeFunctional::on_span(BalancedPolytope disk) {
  return GaugeFunctional(CircledSet(std::move(disk)), true);
}

bool GaugeFunctional::in_domain(const Vec& x) const {
  require_same_dimension(dimension(), x.size(), "gauge domain");
  for (const auto& p : base_.pieces()) {
    if (span_membership(p.generators(), x).member) return true;
  }
  return false;
}

ExtRat GaugeFunctional::operator()(const Vec& x) const { return gauge_eval(*this, x); }

ExtRat gauge_of_piece(const BalancedPolytope& piece, const Vec& x) {
  require_same_dimension(piece.dimension(), x.size(), "gauge");
  if (is_zero(x)) return ExtRat(0);
  const BalancedPolytope* p = &piece;
  const auto lp = detail::balanced_combination_lp(std::span<const BalancedPolytope* const>(&p, 1), x,
                                                  true);
  const auto outcome = lp_minimize(lp);
  if (outcome.status != LpOutcome::Status::optimal) return ExtRat::infinity();
  return ExtRat(outcome.value);
}

ExtRat gauge_eval(const GaugeFunctional& gauge, const Vec& x) {
  require_same_dimension(gauge.dimension(), x.size(), "gauge_eval");
  if (gauge.restricted_to_span() &&
      !span_membership(gauge.span_basis(), x).member) {
    throw OutsideSubspace("point " + to_string(x) + " is outside the span of the disk");
  }
  ExtRat best = ExtRat::infinity();
  for (const auto& piece : gauge.base().pieces()) best = min(best, gauge_of_piece(piece, x));
  return best;
}

SupResult sup_over(const BalancedPolytope& disk, const GaugeFunctional& p) {
  require_same_dimension(p.dimension(), disk.dimension(), "sup_over");
  SupResult out{ExtRat(0), std::nullopt};
  // p is symmetric, so the positive generators suffice.
  for (const auto& g : disk.generators()) {
    const ExtRat v = gauge_eval(p, g);
    if (v.is_infinite()) {
      out.value = v;
      out.offending_generator = g;
      return out;
    }
    out.value = max(out.value, v);
  }
  return out;
}

Vec random_span_point(const BalancedPolytope& disk, Rng& rng) {
  const Rat t = rng.rational(Rat(0), Rat(2));
  return t * random_point(disk, rng);
}

DominationReport domination_bound(const GaugeFunctional& p, const BalancedPolytope& disk,
                                  std::size_t samples, std::uint64_t seed) {
  const SupResult sup = sup_over(disk, p);
  if (sup.value.is_infinite()) {
    throw InfiniteValue("functional is infinite at generator " + to_string(*sup.offending_generator));
  }
  const GaugeFunctional disk_gauge = GaugeFunctional::on_span(disk);
  DominationReport report;
  report.bound = sup.value.value();
  report.samples = samples;
  report.seed = seed;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec x = random_span_point(disk, rng);
    const ExtRat lhs = gauge_eval(p, x);
    const ExtRat rhs = report.bound * gauge_eval(disk_gauge, x);
    if (rhs < lhs) {
      if (report.violations++ == 0) report.first_violation = x;
      continue;
    }
    if (lhs.is_finite() && rhs.is_finite()) {
      const Rat slack = rhs.value() - lhs.value();
      if (!report.min_slack || slack < *report.min_slack) report.min_slack = slack;
    }
  }
  return report;
}

}  // namespace lipvec
