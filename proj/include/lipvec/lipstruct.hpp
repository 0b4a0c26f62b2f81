#pragma once

#include "lipvec/gauge.hpp"
#include "lipvec/metrization.hpp"
#include "lipvec/rat.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lipvec {

/// Translation-invariant pseudo-metric d(x1, x2) = p(x1 - x2), built from
/// gauges, dyadic functionals and formal operations on other metrics.
///
/// Values are extended rationals: a gauge of a lower-dimensional set is +inf
/// off its span. Metrics from dyadic functionals are 0 on the diagonal and
/// |x1 - x2| elsewhere.
class PseudoMetric {
 public:
  enum class Kind { gauge, chain, sup, scaled, sum, component };
  enum class Side { left, right };

  static PseudoMetric from_gauge(std::string name, GaugeFunctional gauge);
  static PseudoMetric from_chain(std::string name, DyadicPseudoSeminorm psn);
  /// Pointwise maximum.
  static PseudoMetric sup(std::vector<PseudoMetric> parts);
  /// factor * d with factor > 0.
  static PseudoMetric scaled(const Rat& factor, PseudoMetric d);
  static PseudoMetric sum(std::vector<PseudoMetric> parts);
  /// d composed with the projection of X (+) Y onto one side. `other_dim` is
  /// the dimension of the other summand.
  static PseudoMetric component(Side side, PseudoMetric d, std::size_t other_dim);

  Kind kind() const;
  const std::string& name() const;
  std::size_t dimension() const;

  /// Children of formal nodes (empty for gauges and chains).
  const std::vector<PseudoMetric>& parts() const;
  /// Factor of a scaled node.
  const Rat& factor() const;
  Side side() const;
  const GaugeFunctional* gauge() const;
  const DyadicPseudoSeminorm* psn() const;

  /// Convex and positively homogeneous: built from convex gauges by sup,
  /// positive scaling, sums and projections.
  bool is_sublinear() const;

  /// Basis of the subspace the metric is defined on, when it is restricted
  /// (gauges on the span of a disk).
  std::optional<std::vector<Vec>> domain_basis() const;

  ExtRat operator()(const Vec& x1, const Vec& x2) const;
  /// p(v): the value on a difference vector.
  ExtRat at_difference(const Vec& v) const;

  /// Same tree shape, same factors and the same leaf objects.
  bool same_as(const PseudoMetric& other) const;

 private:
  struct Node;
  explicit PseudoMetric(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

ExtRat eval_metric(const PseudoMetric& d, const Vec& x1, const Vec& x2);

/// {d : d <= alpha * b for some base element b and alpha > 0}.
class LipschitzStructure {
 public:
  explicit LipschitzStructure(std::vector<PseudoMetric> base, std::string name = "");

  const std::vector<PseudoMetric>& base() const { return base_; }
  std::size_t dimension() const { return base_.front().dimension(); }
  const std::string& name() const { return name_; }

 private:
  std::vector<PseudoMetric> base_;
  std::string name_;
};

inline constexpr std::size_t kMaxGenerators = 8;

/// Base = sups of all nonempty subsets of P, in bitmask order: for {d1, d2}
/// that is d1, d2, d1 v d2.
LipschitzStructure generate_structure(const std::vector<PseudoMetric>& family, std::string name = "");

/// Structure on X (+) Y with base { dX o pi1 + dY o pi2 }.
LipschitzStructure product_structure(const LipschitzStructure& lx, const LipschitzStructure& ly);

struct DominationResult {
  bool holds = false;
  /// Smallest alpha with p <= alpha q (+inf when none exists).
  ExtRat ratio;
  /// A signed generator g of q's unit ball with p(g) > alpha.
  std::optional<Vec> witness;
  std::optional<ExtRat> witness_value;
};

/// Decides p <= alpha q exactly by evaluating p at the signed generators of
/// q's unit ball. p must be sublinear; q must be a positive multiple of a
/// convex gauge.
DominationResult dominates(const PseudoMetric& p, const PseudoMetric& q, const Rat& alpha);

enum class ContainmentMode { exact, sampled };
enum class CertificateKind { exact, sampled };

std::string to_string(CertificateKind kind);

struct ContainmentVerdict {
  bool contained = false;
  CertificateKind kind = CertificateKind::exact;
  /// d <= alpha * base()[base_index] (certified when exact, observed when
  /// sampled).
  std::optional<Rat> alpha;
  std::optional<std::size_t> base_index;
  /// Exact refutation: a point of a base unit ball where d is +inf, or, for
  /// metrics bounded below off the diagonal, a direction along which
  /// d / b blows up at the origin.
  std::optional<Vec> witness;
  /// Sampled refutation: a pair with b = 0 < d for the first base element.
  std::optional<std::pair<Vec, Vec>> witness_pair;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct ContainmentOptions {
  std::size_t samples = 256;
  std::uint64_t seed = 0;
};

/// Whether d belongs to the structure. Exact mode reasons on the descriptors
/// (formal identities plus generator checks for convex gauges) and falls back
/// to sampling, tagged as such, when that is inconclusive.
ContainmentVerdict structure_contains(const LipschitzStructure& l, const PseudoMetric& d,
                                      ContainmentMode mode = ContainmentMode::exact,
                                      const ContainmentOptions& opts = {});

/// Exact upper bound alpha with d <= alpha * b, when the descriptors admit one.
std::optional<Rat> certified_bound(const PseudoMetric& d, const PseudoMetric& b);

/// q = factor * gauge with a single convex piece, when q has that shape.
struct ScaledGauge {
  Rat factor;
  const GaugeFunctional* gauge;
};
std::optional<ScaledGauge> as_scaled_gauge(const PseudoMetric& q);

/// Generators G with d = gauge of the balanced hull of G: multiples of convex
/// gauges and product metrics d_X o pi1 + d_Y o pi2 of such.
std::optional<std::vector<Vec>> unit_ball_generators(const PseudoMetric& d);

/// Random pair of points inside the common domain of the metrics. Close
/// pairs are drawn at the scales of any dyadic functional involved.
std::pair<Vec, Vec> random_pair(const std::vector<const PseudoMetric*>& metrics, Rng& rng);

}  // namespace lipvec
