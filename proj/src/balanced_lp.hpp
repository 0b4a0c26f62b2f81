#pragma once

#include "lipvec/lp.hpp"
#include "lipvec/sets.hpp"

#include <span>

namespace lipvec::detail {

// Builds the LP  x = sum_i sum_j (u_ij - v_ij) g_ij,  u, v >= 0, with one
// budget row per piece:  sum_j (u_ij + v_ij) <= 1, or <= t when `gauge` is set.
// In gauge mode the last variable is t >= 0 and the objective is min t.
LinearProgram balanced_combination_lp(std::span<const BalancedPolytope* const> pieces,
                                      const Vec& x, bool gauge);

}  // namespace lipvec::detail
