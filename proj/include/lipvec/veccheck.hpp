#pragma once

#include "lipvec/gauge.hpp"
#include "lipvec/lipstruct.hpp"
#include "lipvec/metrization.hpp"
#include "lipvec/rat.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lipvec {

/// A map between rational vector spaces.
class MapSpec {
 public:
  enum class Kind { linear, affine, addition, scalar_mult, blackbox };

  static MapSpec linear(Matrix m, std::string name = "");
  static MapSpec affine(Matrix m, Vec shift, std::string name = "");
  /// (x, y) -> x + y on E x E, E of dimension `dim`.
  static MapSpec addition(std::size_t dim, std::string name = "");
  /// (t, x) -> t x on R x E.
  static MapSpec scalar_mult(std::size_t dim, std::string name = "");
  /// Finite table of evaluated pairs (x, f(x)).
  static MapSpec blackbox(std::vector<std::pair<Vec, Vec>> table, std::string name = "");

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::size_t input_dim() const { return in_; }
  std::size_t output_dim() const { return out_; }
  const std::vector<std::pair<Vec, Vec>>& table() const { return table_; }

  /// Matrix M with f(x1) - f(x2) = M (x1 - x2), for linear, affine and
  /// addition maps.
  const std::optional<Matrix>& difference_matrix() const { return matrix_; }
  const Vec& shift() const { return shift_; }

  /// Blackbox maps are defined only on their table.
  Vec operator()(const Vec& x) const;

 private:
  MapSpec(Kind kind, std::string name, std::size_t in, std::size_t out);

  Kind kind_;
  std::string name_;
  std::size_t in_;
  std::size_t out_;
  std::optional<Matrix> matrix_;
  Vec shift_;
  std::vector<std::pair<Vec, Vec>> table_;
};

/// Largest constant tried on the dyadic grid k / 2^6.
inline const Rat kGridMax{1024};
inline constexpr unsigned kGridBits = 6;

/// Smallest k / 2^6 (k >= 1) at least r, or nothing above 2^10.
std::optional<Rat> grid_constant(const Rat& r);

/// d_target(f(x1), f(x2)) <= c * d_source(x1, x2).
struct LipschitzCertificate {
  std::string target;
  std::string source;
  bool passed = false;
  CertificateKind kind = CertificateKind::exact;
  /// Exact mode: the smallest c, found by maximizing target ratios over the
  /// source generators. Sampled mode: the largest observed ratio.
  std::optional<Rat> constant;
  /// Minimal certified dyadic constant on the grid.
  std::optional<Rat> grid;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  /// On failure: the pair realizing the worst ratio, and that ratio.
  std::optional<std::pair<Vec, Vec>> witness;
  std::optional<ExtRat> worst_ratio;
};

struct CheckOptions {
  std::size_t samples = 256;
  std::uint64_t seed = 0;
};

/// d(x1 + x2, y1 + y2) <= d(x1, y1) + d(x2, y2) on seeded quadruples: addition
/// is 1-Lipschitz from the product structure.
LipschitzCertificate check_addition(const PseudoMetric& d, const CheckOptions& opts = {});
LipschitzCertificate check_addition(const GaugeFunctional& p, const CheckOptions& opts = {});
LipschitzCertificate check_addition(const DyadicPseudoSeminorm& psn, const CheckOptions& opts = {});

struct LocalConstants {
  Rat c1;
  Rat c2;
};

/// c1 = 1 + |lambda|, c2 = 1 + p(xbar). Throws InfiniteValue when p(xbar) is +inf.
LocalConstants local_constants(const Rat& lambda_bar, const Vec& x_bar, const GaugeFunctional& p);

struct ScalarMultReport {
  Rat lambda_bar;
  Vec x_bar;
  LocalConstants constants;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Draws outside |t - lambda| <= 1, p(x - xbar) <= 1 thrown away.
  std::size_t rejected = 0;
  std::size_t violations = 0;
  /// (t1, t2, x1, x2) of the first violation; t1, t2 as 1-vectors.
  std::optional<std::vector<Vec>> first_violation;
  std::optional<Rat> min_slack;
  bool passed() const { return violations == 0; }
};

/// d(t1 x1, t2 x2) <= c1 d(x1, x2) + c2 |t1 - t2| on the neighbourhood
/// |ti - lambda| <= 1, d(xi, xbar) <= 1 with the local constants.
ScalarMultReport check_scalar_mult(const GaugeFunctional& p, const Rat& lambda_bar, const Vec& x_bar,
                                   const CheckOptions& opts = {});

struct ScaledChainReport {
  Rat scale;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  std::size_t equalities = 0;
  std::optional<std::pair<Rat, Vec>> first_violation;  ///< (t, x)
  std::optional<Rat> min_slack;
  bool passed() const { return violations == 0; }
};

/// With U = s V chain-wise: |t x|_U <= |x|_V for |t| <= s.
ScaledChainReport check_scalar_mult_chain(const DyadicPseudoSeminorm& psn_v, const Rat& s,
                                          const CheckOptions& opts = {});

enum class CheckMode { exact, sampled };

struct MapCheckOptions {
  CheckMode mode = CheckMode::exact;
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  /// Blackbox maps: only table entries inside this disk are used.
  std::optional<BalancedPolytope> restrict_to;
};

struct MapCheckResult {
  /// One per target base metric, in base order.
  std::vector<LipschitzCertificate> certificates;
  bool passed() const;
};

/// For every target base metric, the best source base metric and constant.
/// Exact mode certifies linear-type maps between convex gauges by evaluating
/// the target on the images of the source generators, falling back to
/// sampling when the descriptors do not allow that.
MapCheckResult check_map(const MapSpec& f, const LipschitzStructure& lx, const LipschitzStructure& ly,
                         const MapCheckOptions& opts = {});

}  // namespace lipvec
