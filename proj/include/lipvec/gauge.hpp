#pragma once

#include "lipvec/rat.hpp"
#include "lipvec/sets.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lipvec {

/// Minkowski functional x -> inf{ t > 0 : x in t * base }.
///
/// Two flavours: the gauge of a circled set on the whole space (+inf outside
/// the span of every piece), and the gauge of a single disk restricted to the
/// subspace its generators span, where evaluating off the subspace is an
/// error.
class GaugeFunctional {
 public:
  static GaugeFunctional of_set(CircledSet base);
  static GaugeFunctional on_span(BalancedPolytope disk);

  const CircledSet& base() const { return base_; }
  std::size_t dimension() const { return base_.dimension(); }
  bool restricted_to_span() const { return restricted_; }
  bool is_convex() const { return base_.is_convex_piece(); }
  /// Linearly independent generators spanning the subspace of the disk.
  const std::vector<Vec>& span_basis() const { return span_basis_; }

  /// Whether x lies in the span of the base. Always true for full-space
  /// gauges whose pieces span the ambient space.
  bool in_domain(const Vec& x) const;

  ExtRat operator()(const Vec& x) const;

 private:
  GaugeFunctional(CircledSet base, bool restricted);

  CircledSet base_;
  bool restricted_;
  std::vector<Vec> span_basis_;
};

/// Exact gauge: per convex piece, min t s.t. x = sum t_j g_j, sum |t_j| <= t;
/// the minimum over pieces for unions.
ExtRat gauge_eval(const GaugeFunctional& gauge, const Vec& x);

/// Gauge of a single balanced polytope (the per-piece LP).
ExtRat gauge_of_piece(const BalancedPolytope& piece, const Vec& x);

struct SupResult {
  ExtRat value;
  std::optional<Vec> offending_generator;  ///< set when value is +inf
};

/// max over the signed generators of A of p(g); equals sup p(A) for any
/// convex p.
SupResult sup_over(const BalancedPolytope& disk, const GaugeFunctional& p);

struct DominationReport {
  Rat bound;                 ///< l = sup p(A)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  std::optional<Vec> first_violation;
  /// Smallest observed l * p_A(x) - p(x).
  std::optional<Rat> min_slack;
  bool passed() const { return violations == 0; }
};

/// Certifies p <= l * p_A on the span of A with l = sup p(A), replaying the
/// inequality on seeded points t * a (t >= 0, a in A). Throws InfiniteValue
/// when p is infinite at a generator of A.
DominationReport domination_bound(const GaugeFunctional& p, const BalancedPolytope& disk,
                                  std::size_t samples, std::uint64_t seed);

/// Random point of the span of A written as t * a with t in [0, 2].
Vec random_span_point(const BalancedPolytope& disk, Rng& rng);

}  // namespace lipvec
