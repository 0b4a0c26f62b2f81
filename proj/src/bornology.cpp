#include "lipvec/bornology.hpp"

#include "lipvec/errors.hpp"

#include <algorithm>
#include <utility>

namespace lipvec {

BoundedDisk::BoundedDisk(BalancedPolytope disk, std::string name)
    : disk_(disk), name_(std::move(name)), gauge_(GaugeFunctional::on_span(std::move(disk))) {}

Vec random_span_point(const BoundedDisk& a, Rng& rng) {
  Vec x = zeros(a.dimension());
  for (const auto& b : a.span_basis()) x = x + rng.rational(Rat(-2), Rat(2)) * b;
  return x;
}

LipschitzStructure disk_structure(const BoundedDisk& a) {
  return LipschitzStructure({PseudoMetric::from_gauge("p_" + a.name(), a.gauge())}, "L(p_" + a.name() + ")");
}

bool DiskDominationReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed(); });
}

DiskDominationReport check_disk_domination(const BoundedDisk& a, const std::vector<std::pair<std::string, GaugeFunctional>>& family,
                        std::size_t samples, std::uint64_t seed) {
  DiskDominationReport report;
  report.disk = a.name();
  report.seed = seed;
  for (const auto& [name, p] : family) {
    require_same_dimension(a.dimension(), p.dimension(), "functional " + name);
    if (!p.is_convex()) throw InvalidArgument("functional " + name + " is not a convex gauge");
    const SupResult sup = sup_over(a.disk(), p);
    if (sup.value.is_infinite()) {
      throw InfiniteValue("functional " + name + " is infinite at " + to_string(*sup.offending_generator) +
                          " in E_" + a.name());
    }
    DiskDominationEntry e;
    e.functional = name;
    e.bound = sup.value.value();
    e.samples = samples;
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      // Start with the generators themselves, where equality is expected
      // for the maximizing one.
      const auto& gens = a.disk().generators();
      const Vec x = s < gens.size() ? gens[s] : random_span_point(a, rng);
      const ExtRat lhs = gauge_eval(p, x);
      const ExtRat rhs = e.bound * gauge_eval(a.gauge(), x);
      if (rhs < lhs) {
        if (e.violations++ == 0) e.first_violation = x;
        continue;
      }
      const Rat slack = rhs.value() - lhs.value();
      if (slack == 0 && !is_zero(x)) ++e.equalities;
      if (!e.min_slack || slack < *e.min_slack) e.min_slack = slack;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

bool BornologicalReport::passed() const {
  return std::all_of(disks.begin(), disks.end(), [](const auto& d) { return d.result.passed(); });
}

BornologicalReport check_bornological(const MapSpec& f, const std::vector<BoundedDisk>& disks,
                                      const LipschitzStructure& ly, const MapCheckOptions& opts) {
  BornologicalReport report;
  for (const auto& a : disks) {
    MapCheckOptions local = opts;
    if (f.kind() == MapSpec::Kind::blackbox) local.restrict_to = a.disk();
    report.disks.push_back({a.name(), check_map(f, disk_structure(a), ly, local)});
  }
  return report;
}

}  // namespace lipvec
