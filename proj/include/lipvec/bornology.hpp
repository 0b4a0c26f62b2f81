#pragma once

#include "lipvec/gauge.hpp"
#include "lipvec/lipstruct.hpp"
#include "lipvec/veccheck.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lipvec {

/// A convex circled bounded set A together with E_A, the span of A.
class BoundedDisk {
 public:
  explicit BoundedDisk(BalancedPolytope disk, std::string name = "A");

  const BalancedPolytope& disk() const { return disk_; }
  const std::string& name() const { return name_; }
  std::size_t dimension() const { return disk_.dimension(); }
  /// Linearly independent vectors spanning E_A.
  const std::vector<Vec>& span_basis() const { return gauge_.span_basis(); }
  /// p_A on E_A.
  const GaugeFunctional& gauge() const { return gauge_; }
  bool in_span(const Vec& x) const { return gauge_.in_domain(x); }

 private:
  BalancedPolytope disk_;
  std::string name_;
  GaugeFunctional gauge_;
};

/// Random point of E_A with coordinates in [-2, 2] over the span basis.
Vec random_span_point(const BoundedDisk& a, Rng& rng);

/// The structure on E_A generated by the metric of p_A.
LipschitzStructure disk_structure(const BoundedDisk& a);

struct DiskDominationEntry {
  std::string functional;
  /// l = sup p(A).
  Rat bound;
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// Samples with p(x) = l p_A(x) and x != 0.
  std::size_t equalities = 0;
  std::optional<Vec> first_violation;
  std::optional<Rat> min_slack;
  bool passed() const { return violations == 0; }
};

struct DiskDominationReport {
  std::string disk;
  std::uint64_t seed = 0;
  std::vector<DiskDominationEntry> entries;
  bool passed() const;
};

/// For each convex gauge p: l = sup p(A) and p <= l p_A checked on seeded
/// points of E_A. Throws InfiniteValue when some p is +inf on E_A.
DiskDominationReport check_disk_domination(const BoundedDisk& a, const std::vector<std::pair<std::string, GaugeFunctional>>& family,
                        std::size_t samples, std::uint64_t seed);

struct DiskCertificate {
  std::string disk;
  MapCheckResult result;
};

struct BornologicalReport {
  std::vector<DiskCertificate> disks;
  bool passed() const;
};

/// check_map from (E_A, p_A) into LY for every disk, with samples kept in E_A
/// (and, for blackbox maps, in A).
BornologicalReport check_bornological(const MapSpec& f, const std::vector<BoundedDisk>& disks,
                                      const LipschitzStructure& ly, const MapCheckOptions& opts = {});

}  // namespace lipvec
