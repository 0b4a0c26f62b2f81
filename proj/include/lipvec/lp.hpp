#pragma once

#include "lipvec/rat.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lipvec {

/// A linear program over exact rationals:
///
///   minimize    c^T x           (only when an objective is present)
///   subject to  A_eq x  = b_eq
///               A_le x <= b_le
///               x_j >= 0        for variables flagged nonnegative
///
/// Variables are free unless flagged.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t variables);

  std::size_t variables() const { return variables_; }

  void set_objective(Vec coefficients);
  void clear_objective() { objective_.reset(); }
  const std::optional<Vec>& objective() const { return objective_; }

  void add_equality(Vec row, Rat rhs);
  void add_less_equal(Vec row, Rat rhs);
  void add_greater_equal(Vec row, Rat rhs);
  void require_nonnegative(std::size_t variable);

  const Matrix& equality_rows() const { return eq_rows_; }
  const Vec& equality_rhs() const { return eq_rhs_; }
  const Matrix& inequality_rows() const { return le_rows_; }
  const Vec& inequality_rhs() const { return le_rhs_; }
  bool is_nonnegative(std::size_t variable) const { return nonneg_[variable]; }

  /// True iff x satisfies every constraint exactly.
  bool satisfied_by(const Vec& x) const;

 private:
  std::size_t variables_;
  std::optional<Vec> objective_;
  Matrix eq_rows_;
  Vec eq_rhs_;
  Matrix le_rows_;
  Vec le_rhs_;
  std::vector<bool> nonneg_;
};

/// Farkas certificate for an infeasible system: multipliers y (free, one per
/// equality) and z (>= 0, one per inequality) with
///   y^T A_eq + z^T A_le = w,  w_j = 0 for free x_j and w_j >= 0 for
///   nonnegative x_j,  and  y^T b_eq + z^T b_le < 0.
struct FarkasCertificate {
  Vec equality_multipliers;
  Vec inequality_multipliers;
};

bool verify_certificate(const LinearProgram& lp, const FarkasCertificate& cert);

struct Feasibility {
  bool feasible = false;
  Vec witness;                                ///< set when feasible
  std::optional<FarkasCertificate> certificate;  ///< set when infeasible
};

struct LpOutcome {
  enum class Status { optimal, unbounded, infeasible };
  Status status = Status::infeasible;
  Rat value;     ///< optimum, when optimal
  Vec argmin;    ///< when optimal
};

/// Pure feasibility. Throws InvalidArgument when an objective is set.
Feasibility lp_feasible(const LinearProgram& lp);

/// Two-phase primal simplex with Bland's rule. Throws InvalidArgument when no
/// objective is set.
LpOutcome lp_minimize(const LinearProgram& lp);

struct SpanMembership {
  bool member = false;
  Vec coordinates;  ///< x = sum_j coordinates[j] * generators[j]
};

/// Decides whether x lies in the linear span of the generators.
SpanMembership span_membership(const std::vector<Vec>& generators, const Vec& x);

/// Indices of a maximal linearly independent subset of the vectors, chosen
/// greedily in order.
std::vector<std::size_t> independent_subset(const std::vector<Vec>& vectors);

}  // namespace lipvec
