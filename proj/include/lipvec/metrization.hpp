#pragma once

#include "lipvec/gauge.hpp"
#include "lipvec/rat.hpp"
#include "lipvec/sets.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lipvec {

enum class ValidationKind { unvalidated, valid_exact, valid_sampled, invalid };

std::string to_string(ValidationKind kind);

struct ChainValidation {
  ValidationKind kind = ValidationKind::unvalidated;
  /// For invalid chains: the level n (1-based) whose condition
  /// V_{n+1} + V_{n+1} in V_n failed, and a point of the left side outside V_n.
  std::optional<std::size_t> failing_level;
  std::optional<Vec> witness;

  bool valid() const {
    return kind == ValidationKind::valid_exact || kind == ValidationKind::valid_sampled;
  }
};

/// Levels V_1..V_N of circled sets, intended to satisfy
/// V_{n+1} + V_{n+1} in V_n.
class CircledChain {
 public:
  explicit CircledChain(std::vector<CircledSet> levels);

  std::size_t depth() const { return levels_.size(); }
  std::size_t dimension() const { return levels_.front().dimension(); }
  /// 1-based, as in V_1..V_N.
  const CircledSet& level(std::size_t n) const { return levels_.at(n - 1); }
  const std::vector<CircledSet>& levels() const { return levels_; }

  const ChainValidation& status() const { return status_; }
  CircledChain with_status(ChainValidation status) const;

 private:
  std::vector<CircledSet> levels_;
  ChainValidation status_;
};

struct ValidationOptions {
  /// When false every level is checked by sampling.
  bool exact_where_possible = true;
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  SetOptions sets;
};

/// Checks V_{n+1} + V_{n+1} in V_n for every n. Levels whose right side is a
/// single convex piece, or whose every piece combination fits inside one
/// piece of V_n, are decided exactly; the rest are sampled. The result
/// records the weakest certificate used.
ChainValidation validate_chain(const CircledChain& chain, const ValidationOptions& opts = {});

/// validate_chain + with_status.
CircledChain validated(const CircledChain& chain, const ValidationOptions& opts = {});

/// V_n = 2^-n U. Valid-exact by construction.
CircledChain chain_from_convex(const BalancedPolytope& unit, std::size_t depth);

/// Every level multiplied by s > 0; validity carries over.
CircledChain scale_chain(const CircledChain& chain, const Rat& s);

/// Value of the dyadic functional at a point: k / 2^N with the realizing
/// index set, or the sentinel 1 when no V_I contains the point.
struct DyadicValue {
  Rat value;
  std::optional<std::vector<std::size_t>> indices;  ///< ascending, 1-based

  bool is_sentinel() const { return !indices.has_value(); }
  friend bool operator==(const DyadicValue&, const DyadicValue&) = default;
};

std::string to_string(const DyadicValue& v);

enum class EvalStrategy { brute_force, fast_path };

inline constexpr std::size_t kDefaultDepth = 8;
inline constexpr std::size_t kMaxDepth = 16;

/// x -> min{ p_I : x in V_I, I nonempty subset of {1..N} } where
/// V_I = sum_{i in I} V_i and p_I = sum_{i in I} 2^-i; 1 when no V_I
/// contains x.
///
/// Truncating to depth N over-approximates the untruncated infimum by at most
/// 2^-(N-1) and puts the origin at 2^-N, but keeps balancedness and
/// subadditivity exact.
class DyadicPseudoSeminorm {
 public:
  /// Requires a chain whose status is valid.
  explicit DyadicPseudoSeminorm(CircledChain chain, EvalStrategy strategy = EvalStrategy::fast_path,
                                SetOptions opts = {});

  /// Skips the validity requirement. Only for experiments on broken chains.
  static DyadicPseudoSeminorm unchecked(CircledChain chain,
                                        EvalStrategy strategy = EvalStrategy::brute_force,
                                        SetOptions opts = {});

  const CircledChain& chain() const { return chain_; }
  std::size_t depth() const { return chain_.depth(); }
  std::size_t dimension() const { return chain_.dimension(); }
  EvalStrategy strategy() const { return strategy_; }
  const SetOptions& set_options() const { return opts_; }
  DyadicPseudoSeminorm with_strategy(EvalStrategy strategy) const;

  DyadicValue operator()(const Vec& x) const;

  /// Whether x lies in V_I for the index set encoded by k (bit N-i set iff
  /// i in I).
  bool in_sum_set(std::size_t k, const Vec& x) const;

 private:
  DyadicPseudoSeminorm(CircledChain chain, EvalStrategy strategy, SetOptions opts, bool);

  CircledChain chain_;
  EvalStrategy strategy_;
  SetOptions opts_;
};

DyadicValue dyadic_eval(const DyadicPseudoSeminorm& psn, const Vec& x);
DyadicValue dyadic_eval(const DyadicPseudoSeminorm& psn, const Vec& x, EvalStrategy strategy);

/// Dyadic value with numerator k at depth N (k in [1, 2^N - 1]), or the
/// sentinel for k >= 2^N.
DyadicValue dyadic_value_from_numerator(const Int& k, std::size_t depth);

/// Reference value for V_n = 2^-n U: the smallest N-bit dyadic p_I at least
/// gauge_U(x), else the sentinel. Computed from the gauge alone.
DyadicValue convex_chain_closed_form(const BalancedPolytope& unit, std::size_t depth, const Vec& x);

struct Violation {
  std::string kind;
  std::vector<Vec> points;
  std::optional<Rat> scalar;
  std::string detail;
};

struct AxiomReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t balanced_checks = 0;
  std::size_t subadditive_checks = 0;
  Rat zero_value;
  std::optional<Rat> min_balanced_slack;     ///< min |x| - |t x|
  std::optional<Rat> min_subadditive_slack;  ///< min |x1| + |x2| - |x1 + x2|
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

/// Seeded check of |t x| <= |x| (|t| <= 1), |x1 + x2| <= |x1| + |x2| and
/// |0| <= 2^-N. Includes the t = 1 and x2 = 0 edge cases.
AxiomReport check_axioms(const DyadicPseudoSeminorm& psn, std::size_t samples, std::uint64_t seed);

struct SandwichReport {
  std::size_t level = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t inner_checks = 0;  ///< points with |x| < 2^-n
  std::size_t outer_checks = 0;  ///< points in V_n
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

/// Seeded check of { |x| < 2^-n } in V_n in { |x| <= 2^-n }.
SandwichReport check_sandwich(const DyadicPseudoSeminorm& psn, std::size_t level,
                              std::size_t samples, std::uint64_t seed);

/// Random point scattered over the scales of the chain: a random point of a
/// random level, stretched by a factor in [0, 2].
Vec random_chain_point(const CircledChain& chain, Rng& rng);

}  // namespace lipvec
