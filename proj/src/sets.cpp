#include "lipvec/sets.hpp"

#include "balanced_lp.hpp"
#include "lipvec/errors.hpp"
#include "lipvec/lp.hpp"

#include <utility>

namespace lipvec {

BalancedPolytope::BalancedPolytope(std::vector<Vec> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw InvalidArgument("balanced polytope needs at least one generator");
  dim_ = gens_.front().size();
  if (dim_ == 0) throw InvalidArgument("balanced polytope dimension must be positive");
  for (const auto& g : gens_) require_same_dimension(dim_, g.size(), "balanced polytope generator");
}

BalancedPolytope BalancedPolytope::scaled(const Rat& s) const {
  std::vector<Vec> g;
  g.reserve(gens_.size());
  for (const auto& v : gens_) g.push_back(s * v);
  return BalancedPolytope(std::move(g));
}

std::vector<Vec> BalancedPolytope::signed_generators() const {
  std::vector<Vec> out = gens_;
  for (const auto& g : gens_) out.push_back(-g);
  return out;
}

CircledSet::CircledSet(std::vector<BalancedPolytope> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidArgument("circled set needs at least one piece");
  dim_ = pieces_.front().dimension();
  for (const auto& p : pieces_) require_same_dimension(dim_, p.dimension(), "circled set piece");
}

CircledSet::CircledSet(BalancedPolytope piece) : CircledSet(std::vector{std::move(piece)}) {}

SumExpression::SumExpression(std::vector<CircledSet> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidArgument("sum expression needs at least one term");
  dim_ = terms_.front().dimension();
  for (const auto& t : terms_) require_same_dimension(dim_, t.dimension(), "sum expression term");
}

SumExpression::SumExpression(CircledSet term) : SumExpression(std::vector{std::move(term)}) {}


CircledSet scale(const CircledSet& set, const Rat& s) {
  if (sgn(s) <= 0) throw InvalidArgument("scale factor must be positive, got " + to_string(s));
  std::vector<BalancedPolytope> pieces;
  pieces.reserve(set.pieces().size());
  for (const auto& p : set.pieces()) pieces.push_back(p.scaled(s));
  return CircledSet(std::move(pieces));
}

namespace detail {

LinearProgram balanced_combination_lp(std::span<const BalancedPolytope* const> pieces,
                                      const Vec& x, bool gauge) {
  const std::size_t d = x.size();
  std::size_t n = 0;
  for (const auto* p : pieces) n += 2 * p->generators().size();
  const std::size_t t_index = n;
  LinearProgram lp(gauge ? n + 1 : n);
  const std::size_t width = lp.variables();
  for (std::size_t j = 0; j < width; ++j) lp.require_nonnegative(j);

  Matrix eq(d, zeros(width));
  std::size_t col = 0;
  for (const auto* p : pieces) {
    Vec budget = zeros(width);
    for (const auto& g : p->generators()) {
      for (std::size_t i = 0; i < d; ++i) {
        if (is_zero(g[i])) continue;
        eq[i][col] = g[i];
        eq[i][col + 1] = -g[i];
      }
      budget[col] = Rat(1);
      budget[col + 1] = Rat(1);
      col += 2;
    }
    if (gauge) {
      budget[t_index] = Rat(-1);
      lp.add_less_equal(std::move(budget), Rat(0));
    } else {
      lp.add_less_equal(std::move(budget), Rat(1));
    }
  }
  for (std::size_t i = 0; i < d; ++i) lp.add_equality(std::move(eq[i]), x[i]);
  if (gauge) {
    Vec obj = zeros(width);
    obj[t_index] = Rat(1);
    lp.set_objective(std::move(obj));
  }
  return lp;
}

}  // namespace detail

namespace {

// Cheap necessary condition: |x_k| <= sum over pieces of max_j |g_jk|.
bool within_bounding_box(std::span<const BalancedPolytope* const> pieces, const Vec& x) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (is_zero(x[k])) continue;
    Rat reach(0);
    for (const auto* p : pieces) {
      Rat m(0);
      for (const auto& g : p->generators()) {
        const Rat a = abs(g[k]);
        if (a > m) m = a;
      }
      reach += m;
    }
    if (abs(x[k]) > reach) return false;
  }
  return true;
}

bool combination_member(std::span<const BalancedPolytope* const> pieces, const Vec& x) {
  if (is_zero(x)) return true;
  if (!within_bounding_box(pieces, x)) return false;
  return lp_feasible(detail::balanced_combination_lp(pieces, x, false)).feasible;
}

std::size_t combination_count(std::span<const CircledSet* const> terms) {
  std::size_t n = 1;
  for (const auto* t : terms) {
    const std::size_t k = t->pieces().size();
    if (n > (std::size_t{1} << 40) / k) return std::size_t{1} << 40;  // saturate
    n *= k;
  }
  return n;
}

// Calls fn(pieces) for each one-piece-per-term combination until it returns
// true. Returns whether any call returned true.
template <class Fn>
bool for_each_combination(std::span<const CircledSet* const> terms, const SetOptions& opts,
                          Fn&& fn) {
  const std::size_t count = combination_count(terms);
  if (count > opts.combination_cap) {
    throw CombinationCapExceeded("Minkowski sum has " + std::to_string(count) +
                                 " piece combinations, cap is " +
                                 std::to_string(opts.combination_cap));
  }
  std::vector<std::size_t> choice(terms.size(), 0);
  std::vector<const BalancedPolytope*> pieces(terms.size());
  while (true) {
    for (std::size_t i = 0; i < terms.size(); ++i) pieces[i] = &terms[i]->pieces()[choice[i]];
    if (fn(std::span<const BalancedPolytope* const>(pieces))) return true;
    std::size_t i = 0;
    while (i < terms.size() && ++choice[i] == terms[i]->pieces().size()) {
      choice[i] = 0;
      ++i;
    }
    if (i == terms.size()) return false;
  }
}

std::vector<const CircledSet*> borrow(const SumExpression& sum) {
  std::vector<const CircledSet*> out;
  for (const auto& t : sum.terms()) out.push_back(&t);
  return out;
}

}  // namespace

bool member(const BalancedPolytope& piece, const Vec& x) {
  require_same_dimension(piece.dimension(), x.size(), "member");
  const BalancedPolytope* p = &piece;
  return combination_member(std::span<const BalancedPolytope* const>(&p, 1), x);
}

bool member(const CircledSet& set, const Vec& x) {
  require_same_dimension(set.dimension(), x.size(), "member");
  for (const auto& p : set.pieces()) {
    if (member(p, x)) return true;
  }
  return false;
}

bool sum_member(std::span<const CircledSet* const> terms, const Vec& x,
                const SetOptions& opts) {
  if (terms.empty()) throw InvalidArgument("sum_member needs at least one term");
  for (const auto* t : terms) require_same_dimension(t->dimension(), x.size(), "sum_member");
  return for_each_combination(terms, opts,
                              [&](auto pieces) { return combination_member(pieces, x); });
}

bool sum_member(const SumExpression& sum, const Vec& x, const SetOptions& opts) {
  return sum_member(borrow(sum), x, opts);
}

std::size_t SumExpression::combinations() const {
  std::vector<const CircledSet*> terms;
  for (const auto& t : terms_) terms.push_back(&t);
  return combination_count(terms);
}

InclusionResult included_in_convex(const SumExpression& lhs, const BalancedPolytope& rhs,
                                   const SetOptions& opts) {
  require_same_dimension(rhs.dimension(), lhs.dimension(), "included_in_convex");
  InclusionResult result;
  for_each_combination(borrow(lhs), opts, [&](auto pieces) {
    // Extreme points of a sum of balanced polytopes are sums of signed
    // generators, one per term.
    std::vector<std::vector<Vec>> options;
    for (const auto* p : pieces) options.push_back(p->signed_generators());
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      Vec candidate = zeros(lhs.dimension());
      for (std::size_t i = 0; i < options.size(); ++i) candidate = candidate + options[i][pick[i]];
      if (!member(rhs, candidate)) {
        result.included = false;
        result.witness = std::move(candidate);
        return true;
      }
      std::size_t i = 0;
      while (i < options.size() && ++pick[i] == options[i].size()) {
        pick[i] = 0;
        ++i;
      }
      if (i == options.size()) return false;
    }
  });
  return result;
}

Vec random_point(const BalancedPolytope& piece, Rng& rng) {
  const auto& gens = piece.generators();
  if (rng.index(4) == 0) {
    const Vec& g = gens[rng.index(gens.size())];
    return rng.coin() ? g : -g;
  }
  const Rat total = rng.coin() ? Rat(1) : rng.rational(Rat(0), Rat(1));
  const Vec w = rng.simplex_weights(gens.size(), total);
  Vec x = zeros(piece.dimension());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (is_zero(w[j])) continue;
    x = x + (rng.coin() ? w[j] : Rat(-w[j])) * gens[j];
  }
  return x;
}

Vec random_point(const CircledSet& set, Rng& rng) {
  return random_point(set.pieces()[rng.index(set.pieces().size())], rng);
}

Vec random_point(const SumExpression& sum, Rng& rng) {
  Vec x = zeros(sum.dimension());
  for (const auto& t : sum.terms()) x = x + random_point(t, rng);
  return x;
}

SampledInclusion included_in_sampled(const SumExpression& lhs, const CircledSet& rhs,
                                     std::size_t samples, std::uint64_t seed) {
  require_same_dimension(rhs.dimension(), lhs.dimension(), "included_in_sampled");
  if (samples == 0) throw InvalidArgument("included_in_sampled needs at least one sample");
  SampledInclusion out;
  out.samples = samples;
  out.seed = seed;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Vec x = random_point(lhs, rng);
    if (!member(rhs, x)) {
      out.counterexample_found = true;
      out.witness = std::move(x);
      return out;
    }
  }
  return out;
}

}  // namespace lipvec
