#pragma once

// Chain fixtures shared by the metrization, veccheck and acceptance suites.

#include "lipvec/metrization.hpp"
#include "test_support.hpp"

#include <string>
#include <vector>

namespace lipvec::testing {

/// V_n = r^n * (core U  union  spike W), where the ratio r makes both pieces of
/// V_{n+1} fit inside half of the core of V_n. The levels are non-convex
/// unions, yet every pair sum of V_{n+1} lies in the single piece r^n U, so
/// the chain condition holds exactly.
inline CircledChain spiked_chain(const BalancedPolytope& core, const std::vector<BalancedPolytope>& spikes,
                                 const Rat& ratio, std::size_t depth) {
  std::vector<CircledSet> levels;
  Rat s = ratio;
  for (std::size_t n = 1; n <= depth; ++n) {
    std::vector<BalancedPolytope> pieces{core.scaled(s)};
    for (const auto& w : spikes) pieces.push_back(w.scaled(s));
    levels.emplace_back(std::move(pieces));
    s *= ratio;
  }
  return CircledChain(std::move(levels));
}

inline BalancedPolytope l1_ball_3d() {
  return BalancedPolytope({{q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}});
}

inline BalancedPolytope linf_ball_3d() {
  return BalancedPolytope({{q(1), q(1), q(1)}, {q(1), q(1), q(-1)}, {q(1), q(-1), q(1)}, {q(1), q(-1), q(-1)}});
}

struct NamedChain {
  std::string name;
  CircledChain chain;
};

}  // namespace lipvec::testing
