#pragma once

#include "lipvec/random.hpp"
#include "lipvec/rat.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lipvec {

/// Balanced hull of finitely many generators:
///   { sum_j t_j g_j : sum_j |t_j| <= 1 }.
/// Convex, circled, bounded and contains the origin.
class BalancedPolytope {
 public:
  explicit BalancedPolytope(std::vector<Vec> generators);

  std::size_t dimension() const { return dim_; }
  const std::vector<Vec>& generators() const { return gens_; }

  BalancedPolytope scaled(const Rat& s) const;

  /// Generators followed by their negations: the candidate extreme points.
  std::vector<Vec> signed_generators() const;

 private:
  std::size_t dim_;
  std::vector<Vec> gens_;
};

/// Finite union of balanced polytopes of equal dimension. Circled, possibly
/// non-convex.
class CircledSet {
 public:
  explicit CircledSet(std::vector<BalancedPolytope> pieces);
  CircledSet(BalancedPolytope piece);  // NOLINT(implicit)

  std::size_t dimension() const { return dim_; }
  const std::vector<BalancedPolytope>& pieces() const { return pieces_; }
  bool is_convex_piece() const { return pieces_.size() == 1; }

 private:
  std::size_t dim_;
  std::vector<BalancedPolytope> pieces_;
};

/// Unevaluated Minkowski sum of circled sets.
class SumExpression {
 public:
  explicit SumExpression(std::vector<CircledSet> terms);
  SumExpression(CircledSet term);  // NOLINT(implicit)

  std::size_t dimension() const { return dim_; }
  const std::vector<CircledSet>& terms() const { return terms_; }

  /// Number of one-piece-per-term combinations.
  std::size_t combinations() const;

 private:
  std::size_t dim_;
  std::vector<CircledSet> terms_;
};

struct SetOptions {
  std::size_t combination_cap = 4096;
};

CircledSet scale(const CircledSet& set, const Rat& s);

bool member(const BalancedPolytope& piece, const Vec& x);
bool member(const CircledSet& set, const Vec& x);

/// Membership in the Minkowski sum. One joint LP per piece combination; throws
/// CombinationCapExceeded when the combination count exceeds the cap.
bool sum_member(const SumExpression& sum, const Vec& x, const SetOptions& opts = {});
/// Same query over borrowed terms.
bool sum_member(std::span<const CircledSet* const> terms, const Vec& x,
                const SetOptions& opts = {});

struct InclusionResult {
  bool included = true;
  std::optional<Vec> witness;  ///< a point of the left set outside the right
};

/// Exact inclusion of a (sum of) circled set(s) in a convex balanced
/// polytope: every signed-generator sum must lie in the right-hand side.
InclusionResult included_in_convex(const SumExpression& lhs, const BalancedPolytope& rhs,
                                   const SetOptions& opts = {});

struct SampledInclusion {
  bool counterexample_found = false;
  std::optional<Vec> witness;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Randomized inclusion test for arbitrary right-hand sides. A clean result
/// is evidence, not proof.
SampledInclusion included_in_sampled(const SumExpression& lhs, const CircledSet& rhs,
                                     std::size_t samples, std::uint64_t seed);

/// Random point of the balanced polytope; with some probability an exact
/// signed generator, otherwise a random balanced combination.
Vec random_point(const BalancedPolytope& piece, Rng& rng);
Vec random_point(const CircledSet& set, Rng& rng);
Vec random_point(const SumExpression& sum, Rng& rng);

}  // namespace lipvec
