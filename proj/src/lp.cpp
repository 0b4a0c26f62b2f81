#include "lipvec/lp.hpp"

#include "lipvec/errors.hpp"

#include <algorithm>
#include <utility>

namespace lipvec {

LinearProgram::LinearProgram(std::size_t variables)
    : variables_(variables), nonneg_(variables, false) {}

void LinearProgram::set_objective(Vec coefficients) {
  require_same_dimension(variables_, coefficients.size(), "LP objective");
  objective_ = std::move(coefficients);
}

void LinearProgram::add_equality(Vec row, Rat rhs) {
  require_same_dimension(variables_, row.size(), "LP equality row");
  eq_rows_.push_back(std::move(row));
  eq_rhs_.push_back(std::move(rhs));
}

void LinearProgram::add_less_equal(Vec row, Rat rhs) {
  require_same_dimension(variables_, row.size(), "LP inequality row");
  le_rows_.push_back(std::move(row));
  le_rhs_.push_back(std::move(rhs));
}

void LinearProgram::add_greater_equal(Vec row, Rat rhs) {
  add_less_equal(-row, Rat(-rhs));
}

void LinearProgram::require_nonnegative(std::size_t variable) {
  if (variable >= variables_) throw InvalidArgument("LP variable index out of range");
  nonneg_[variable] = true;
}

namespace {

Rat dot(const Vec& a, const Vec& b) {
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  }
  return s;
}

}  // namespace

bool LinearProgram::satisfied_by(const Vec& x) const {
  if (x.size() != variables_) return false;
  for (std::size_t j = 0; j < variables_; ++j) {
    if (nonneg_[j] && sgn(x[j]) < 0) return false;
  }
  for (std::size_t r = 0; r < eq_rows_.size(); ++r) {
    if (dot(eq_rows_[r], x) != eq_rhs_[r]) return false;
  }
  for (std::size_t r = 0; r < le_rows_.size(); ++r) {
    if (dot(le_rows_[r], x) > le_rhs_[r]) return false;
  }
  return true;
}

bool verify_certificate(const LinearProgram& lp, const FarkasCertificate& cert) {
  if (cert.equality_multipliers.size() != lp.equality_rows().size() ||
      cert.inequality_multipliers.size() != lp.inequality_rows().size()) {
    return false;
  }
  for (const auto& z : cert.inequality_multipliers) {
    if (sgn(z) < 0) return false;
  }
  Vec w = zeros(lp.variables());
  Rat bound(0);
  auto accumulate = [&](const Matrix& rows, const Vec& rhs, const Vec& mult) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (is_zero(mult[r])) continue;
      for (std::size_t j = 0; j < w.size(); ++j) w[j] += mult[r] * rows[r][j];
      bound += mult[r] * rhs[r];
    }
  };
  accumulate(lp.equality_rows(), lp.equality_rhs(), cert.equality_multipliers);
  accumulate(lp.inequality_rows(), lp.inequality_rhs(), cert.inequality_multipliers);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (lp.is_nonnegative(j) ? sgn(w[j]) < 0 : !is_zero(w[j])) return false;
  }
  return sgn(bound) < 0;
}

namespace {

// Dense simplex tableau in standard form (all columns nonnegative). Each row
// stores its coefficients followed by the right-hand side; the cost row holds
// reduced costs followed by minus the current objective value.
class Tableau {
 public:
  enum class Result { optimal, unbounded };

  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    const std::size_t n = lp.variables();
    for (std::size_t j = 0; j < n; ++j) {
      col_var_.push_back(j);
      col_sign_.push_back(1);
      if (!lp.is_nonnegative(j)) {
        col_var_.push_back(j);
        col_sign_.push_back(-1);
      }
    }
    structural_ = col_var_.size();

    const auto& eq = lp.equality_rows();
    const auto& le = lp.inequality_rows();
    const std::size_t m = eq.size() + le.size();
    const std::size_t slack_begin = structural_;
    const std::size_t art_begin = slack_begin + le.size();

    std::vector<bool> needs_art(m, false);
    flip_.assign(m, 1);
    std::size_t n_art = 0;
    for (std::size_t r = 0; r < m; ++r) {
      const Rat& b = r < eq.size() ? lp.equality_rhs()[r] : lp.inequality_rhs()[r - eq.size()];
      if (sgn(b) < 0) flip_[r] = -1;
      needs_art[r] = r < eq.size() || flip_[r] < 0;
      if (needs_art[r]) ++n_art;
    }
    cols_ = art_begin + n_art;
    art_begin_ = art_begin;

    rows_.assign(m, zeros(cols_ + 1));
    basis_.assign(m, 0);
    init_col_.assign(m, 0);
    std::size_t next_art = art_begin;
    for (std::size_t r = 0; r < m; ++r) {
      const Vec& src = r < eq.size() ? eq[r] : le[r - eq.size()];
      const Rat& b = r < eq.size() ? lp.equality_rhs()[r] : lp.inequality_rhs()[r - eq.size()];
      Vec& row = rows_[r];
      const int s = flip_[r];
      for (std::size_t c = 0; c < structural_; ++c) {
        const Rat& a = src[col_var_[c]];
        if (is_zero(a)) continue;
        row[c] = (s * col_sign_[c] > 0) ? a : Rat(-a);
      }
      if (r >= eq.size()) row[slack_begin + (r - eq.size())] = Rat(s);
      row[cols_] = s > 0 ? b : Rat(-b);
      if (needs_art[r]) {
        row[next_art] = Rat(1);
        basis_[r] = next_art;
        init_col_[r] = next_art;
        ++next_art;
      } else {
        basis_[r] = slack_begin + (r - eq.size());
        init_col_[r] = basis_[r];
      }
    }
  }

  // Phase 1: minimize the sum of artificial variables. Returns the optimum.
  Rat phase_one() {
    cost_ = zeros(cols_ + 1);
    for (std::size_t c = art_begin_; c < cols_; ++c) cost_[c] = Rat(1);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] >= art_begin_) subtract_row(cost_, rows_[r], Rat(1));
    }
    allowed_ = cols_;
    run();  // bounded below by zero
    return Rat(-cost_[cols_]);
  }

  FarkasCertificate certificate() const {
    const auto& eq = lp_.equality_rows();
    FarkasCertificate cert;
    cert.equality_multipliers.resize(eq.size());
    cert.inequality_multipliers.resize(lp_.inequality_rows().size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = init_col_[r];
      const Rat phase_cost = c >= art_begin_ ? Rat(1) : Rat(0);
      // Dual of phase 1, then negated into the "y^T b < 0" orientation.
      Rat y = phase_cost - cost_[c];
      if (flip_[r] < 0) y = -y;
      y = -y;
      if (r < eq.size()) {
        cert.equality_multipliers[r] = y;
      } else {
        cert.inequality_multipliers[r - eq.size()] = y;
      }
    }
    return cert;
  }

  // Pivots zero-valued artificial variables out of the basis and drops
  // redundant rows, then bars artificial columns from entering.
  void drop_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < art_begin_) {
        ++r;
        continue;
      }
      std::size_t pivot_col = cols_;
      for (std::size_t c = 0; c < art_begin_; ++c) {
        if (!is_zero(rows_[r][c])) {
          pivot_col = c;
          break;
        }
      }
      if (pivot_col == cols_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, pivot_col);
      ++r;
    }
    allowed_ = art_begin_;
  }

  Result phase_two(const Vec& objective) {
    cost_ = zeros(cols_ + 1);
    for (std::size_t c = 0; c < structural_; ++c) {
      const Rat& o = objective[col_var_[c]];
      if (!is_zero(o)) cost_[c] = col_sign_[c] > 0 ? o : Rat(-o);
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rat cb = cost_[basis_[r]];
      if (!is_zero(cb)) subtract_row(cost_, rows_[r], cb);
    }
    return run();
  }

  Rat objective_value() const { return Rat(-cost_[cols_]); }

  Vec solution() const {
    Vec x = zeros(lp_.variables());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = basis_[r];
      if (c >= structural_) continue;
      if (col_sign_[c] > 0) {
        x[col_var_[c]] += rows_[r][cols_];
      } else {
        x[col_var_[c]] -= rows_[r][cols_];
      }
    }
    return x;
  }

 private:
  static void subtract_row(Vec& target, const Vec& row, const Rat& factor) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!is_zero(row[k])) target[k] -= factor * row[k];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Vec& prow = rows_[r];
    const Rat inv = Rat(1) / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k <= cols_; ++k) {
      if (!is_zero(prow[k])) {
        prow[k] *= inv;
        nz.push_back(k);
      }
    }
    auto eliminate = [&](Vec& row) {
      if (is_zero(row[c])) return;
      const Rat f = row[c];
      for (std::size_t k : nz) row[k] -= f * prow[k];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(cost_);
    basis_[r] = c;
  }

  // Bland's rule: lowest-index improving column enters; among tied ratios,
  // the row whose basic variable has the lowest index leaves.
  Result run() {
    while (true) {
      std::size_t enter = allowed_;
      for (std::size_t c = 0; c < allowed_; ++c) {
        if (sgn(cost_[c]) < 0) {
          enter = c;
          break;
        }
      }
      if (enter == allowed_) return Result::optimal;

      std::size_t leave = rows_.size();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rat& a = rows_[r][enter];
        if (sgn(a) <= 0) continue;
        if (leave == rows_.size()) {
          leave = r;
          continue;
        }
        const Rat lhs = rows_[r][cols_] * rows_[leave][enter];
        const Rat rhs = rows_[leave][cols_] * a;
        if (lhs < rhs || (lhs == rhs && basis_[r] < basis_[leave])) leave = r;
      }
      if (leave == rows_.size()) return Result::unbounded;
      pivot(leave, enter);
    }
  }

  const LinearProgram& lp_;
  std::vector<std::size_t> col_var_;
  std::vector<int> col_sign_;
  std::size_t structural_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t cols_ = 0;
  std::size_t allowed_ = 0;
  std::vector<int> flip_;
  std::vector<std::size_t> init_col_;
  Matrix rows_;
  std::vector<std::size_t> basis_;
  Vec cost_;
};

}  // namespace

Feasibility lp_feasible(const LinearProgram& lp) {
  if (lp.objective()) throw InvalidArgument("lp_feasible: program has an objective");
  Tableau t(lp);
  Feasibility out;
  if (sgn(t.phase_one()) > 0) {
    out.certificate = t.certificate();
    return out;
  }
  out.feasible = true;
  out.witness = t.solution();
  return out;
}

LpOutcome lp_minimize(const LinearProgram& lp) {
  if (!lp.objective()) throw InvalidArgument("lp_minimize: program has no objective");
  Tableau t(lp);
  LpOutcome out;
  if (sgn(t.phase_one()) > 0) {
    out.status = LpOutcome::Status::infeasible;
    return out;
  }
  t.drop_artificials();
  if (t.phase_two(*lp.objective()) == Tableau::Result::unbounded) {
    out.status = LpOutcome::Status::unbounded;
    return out;
  }
  out.status = LpOutcome::Status::optimal;
  out.value = t.objective_value();
  out.argmin = t.solution();
  return out;
}

namespace {

// Reduces the columns of [generators | x] to row echelon form; returns the
// pivot columns.
struct Echelon {
  Matrix rows;
  std::vector<std::size_t> pivots;
};

Echelon row_echelon(Matrix m, std::size_t usable_cols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < usable_cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && is_zero(m[p][c])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rat inv = Rat(1) / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      const Rat f = m[i][c];
      for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] -= f * m[r][k];
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rows = std::move(m);
  return e;
}

}  // namespace

SpanMembership span_membership(const std::vector<Vec>& generators, const Vec& x) {
  const std::size_t d = x.size();
  for (const auto& g : generators) require_same_dimension(d, g.size(), "span_membership generator");
  const std::size_t k = generators.size();
  Matrix m(d, zeros(k + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = generators[j][i];
    m[i][k] = x[i];
  }
  const Echelon e = row_echelon(std::move(m), k);
  SpanMembership out;
  for (std::size_t i = e.pivots.size(); i < d; ++i) {
    if (!is_zero(e.rows[i][k])) return out;
  }
  out.member = true;
  out.coordinates = zeros(k);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.coordinates[e.pivots[i]] = e.rows[i][k];
  return out;
}

std::vector<std::size_t> independent_subset(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t d = vectors.front().size();
  Matrix m(d, zeros(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    require_same_dimension(d, vectors[j].size(), "independent_subset");
    for (std::size_t i = 0; i < d; ++i) m[i][j] = vectors[j][i];
  }
  return row_echelon(std::move(m), vectors.size()).pivots;
}

}  // namespace lipvec
