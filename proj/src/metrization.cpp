#include "lipvec/metrization.hpp"

#include "lipvec/errors.hpp"

#include <utility>

namespace lipvec {

std::string to_string(ValidationKind kind) {
  switch (kind) {
    case ValidationKind::unvalidated: return "unvalidated";
    case ValidationKind::valid_exact: return "valid-exact";
    case ValidationKind::valid_sampled: return "valid-sampled";
    case ValidationKind::invalid: return "invalid";
  }
  return "unknown";
}

CircledChain::CircledChain(std::vector<CircledSet> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw InvalidArgument("chain depth must be at least 1");
  for (const auto& l : levels_) require_same_dimension(levels_.front().dimension(), l.dimension(), "chain level");
}

CircledChain CircledChain::with_status(ChainValidation status) const {
  CircledChain c = *this;
  c.status_ = std::move(status);
  return c;
}

namespace {

// Every pair of pieces of `next` sums into a single piece of `level`.
bool covered_piecewise(const CircledSet& next, const CircledSet& level, const SetOptions& opts) {
  for (const auto& a : next.pieces()) {
    for (const auto& b : next.pieces()) {
      const SumExpression pair(std::vector<CircledSet>{CircledSet(a), CircledSet(b)});
      bool fits = false;
      for (const auto& target : level.pieces()) {
        if (included_in_convex(pair, target, opts).included) {
          fits = true;
          break;
        }
      }
      if (!fits) return false;
    }
  }
  return true;
}

}  // namespace

ChainValidation validate_chain(const CircledChain& chain, const ValidationOptions& opts) {
  ChainValidation out;
  out.kind = ValidationKind::valid_exact;
  for (std::size_t n = 1; n < chain.depth(); ++n) {
    const CircledSet& level = chain.level(n);
    const CircledSet& next = chain.level(n + 1);
    const SumExpression doubled(std::vector<CircledSet>{next, next});

    if (opts.exact_where_possible && level.is_convex_piece()) {
      auto inc = included_in_convex(doubled, level.pieces().front(), opts.sets);
      if (!inc.included) {
        out.kind = ValidationKind::invalid;
        out.failing_level = n;
        out.witness = std::move(inc.witness);
        return out;
      }
      continue;
    }
    if (opts.exact_where_possible && covered_piecewise(next, level, opts.sets)) continue;

    auto sampled = included_in_sampled(doubled, level, opts.samples, opts.seed + n);
    if (sampled.counterexample_found) {
      out.kind = ValidationKind::invalid;
      out.failing_level = n;
      out.witness = std::move(sampled.witness);
      return out;
    }
    out.kind = ValidationKind::valid_sampled;
  }
  return out;
}

CircledChain validated(const CircledChain& chain, const ValidationOptions& opts) {
  return chain.with_status(validate_chain(chain, opts));
}

CircledChain chain_from_convex(const BalancedPolytope& unit, std::size_t depth) {
  if (depth == 0) throw InvalidArgument("chain depth must be at least 1");
  std::vector<CircledSet> levels;
  for (std::size_t n = 1; n <= depth; ++n) {
    levels.emplace_back(unit.scaled(dyadic(static_cast<unsigned>(n))));
  }
  return CircledChain(std::move(levels)).with_status({ValidationKind::valid_exact, {}, {}});
}

CircledChain scale_chain(const CircledChain& chain, const Rat& s) {
  if (sgn(s) <= 0) throw InvalidArgument("chain scale factor must be positive, got " + to_string(s));
  std::vector<CircledSet> levels;
  for (const auto& l : chain.levels()) levels.push_back(scale(l, s));
  return CircledChain(std::move(levels)).with_status(chain.status());
}

std::string to_string(const DyadicValue& v) {
  std::string s = v.value.str();
  if (v.is_sentinel()) return s + " (no V_I contains the point)";
  s += " I={";
  for (std::size_t i = 0; i < v.indices->size(); ++i) {
    if (i) s += ",";
    s += std::to_string((*v.indices)[i]);
  }
  return s + "}";
}

DyadicValue dyadic_value_from_numerator(const Int& k, std::size_t depth) {
  Int full(1);
  full <<= static_cast<unsigned>(depth);
  if (k >= full) return DyadicValue{Rat(1), std::nullopt};
  if (k < 1) throw InvalidArgument("dyadic numerator must be at least 1");
  std::vector<std::size_t> indices;
  for (std::size_t i = 1; i <= depth; ++i) {
    if (boost::multiprecision::bit_test(k, static_cast<unsigned>(depth - i))) indices.push_back(i);
  }
  return DyadicValue{Rat(k, full), std::move(indices)};
}

DyadicPseudoSeminorm::DyadicPseudoSeminorm(CircledChain chain, EvalStrategy strategy,
                                           SetOptions opts, bool)
    : chain_(std::move(chain)), strategy_(strategy), opts_(opts) {
  if (chain_.depth() > kMaxDepth) {
    throw InvalidArgument("chain depth " + std::to_string(chain_.depth()) + " exceeds " +
                          std::to_string(kMaxDepth));
  }
}

DyadicPseudoSeminorm::DyadicPseudoSeminorm(CircledChain chain, EvalStrategy strategy,
                                           SetOptions opts)
    : DyadicPseudoSeminorm(std::move(chain), strategy, opts, true) {
  if (!chain_.status().valid()) {
    throw InvalidArgument("dyadic pseudo-seminorm needs a validated chain (status " +
                          to_string(chain_.status().kind) + ")");
  }
}

DyadicPseudoSeminorm DyadicPseudoSeminorm::unchecked(CircledChain chain, EvalStrategy strategy,
                                                     SetOptions opts) {
  return DyadicPseudoSeminorm(std::move(chain), strategy, opts, true);
}

DyadicPseudoSeminorm DyadicPseudoSeminorm::with_strategy(EvalStrategy strategy) const {
  DyadicPseudoSeminorm copy = *this;
  copy.strategy_ = strategy;
  return copy;
}

bool DyadicPseudoSeminorm::in_sum_set(std::size_t k, const Vec& x) const {
  const std::size_t n = depth();
  std::vector<const CircledSet*> terms;
  for (std::size_t i = 1; i <= n; ++i) {
    if ((k >> (n - i)) & 1U) terms.push_back(&chain_.level(i));
  }
  return sum_member(terms, x, opts_);
}

DyadicValue DyadicPseudoSeminorm::operator()(const Vec& x) const {
  return dyadic_eval(*this, x, strategy_);
}

DyadicValue dyadic_eval(const DyadicPseudoSeminorm& psn, const Vec& x) {
  return psn(x);
}

DyadicValue dyadic_eval(const DyadicPseudoSeminorm& psn, const Vec& x, EvalStrategy strategy) {
  require_same_dimension(psn.dimension(), x.size(), "dyadic_eval");
  const std::size_t n = psn.depth();
  const std::size_t top = (std::size_t{1} << n) - 1;

  // For an exactly validated chain, p_I <= p_J implies V_I in V_J, so
  // membership is monotone in k and the first member can be bisected.
  if (strategy == EvalStrategy::fast_path &&
      psn.chain().status().kind == ValidationKind::valid_exact) {
    if (!psn.in_sum_set(top, x)) return DyadicValue{Rat(1), std::nullopt};
    std::size_t lo = 1;
    std::size_t hi = top;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (psn.in_sum_set(mid, x)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return dyadic_value_from_numerator(Int(lo), n);
  }

  for (std::size_t k = 1; k <= top; ++k) {
    if (psn.in_sum_set(k, x)) return dyadic_value_from_numerator(Int(k), n);
  }
  return DyadicValue{Rat(1), std::nullopt};
}

DyadicValue convex_chain_closed_form(const BalancedPolytope& unit, std::size_t depth,
                                     const Vec& x) {
  const ExtRat g = gauge_of_piece(unit, x);
  if (g.is_infinite()) return DyadicValue{Rat(1), std::nullopt};
  Int scale(1);
  scale <<= static_cast<unsigned>(depth);
  Int k = ceil(Rat(g.value() * Rat(scale)));
  if (k < 1) k = 1;
  return dyadic_value_from_numerator(k, depth);
}

Vec random_chain_point(const CircledChain& chain, Rng& rng) {
  const CircledSet& level = chain.level(1 + rng.index(chain.depth()));
  const Rat stretch = rng.rational(Rat(0), Rat(2));
  return stretch * random_point(level, rng);
}

namespace {

Rat random_unit_scalar(Rng& rng) {
  switch (rng.index(8)) {
    case 0: return Rat(1);
    case 1: return Rat(-1);
    case 2: return Rat(0);
    default: return rng.rational(Rat(-1), Rat(1));
  }
}

void keep_min(std::optional<Rat>& slot, const Rat& v) {
  if (!slot || v < *slot) slot = v;
}

}  // namespace

AxiomReport check_axioms(const DyadicPseudoSeminorm& psn, std::size_t samples, std::uint64_t seed) {
  AxiomReport report;
  report.samples = samples;
  report.seed = seed;
  Rng rng(seed);
  const CircledChain& chain = psn.chain();
  const Vec origin = zeros(psn.dimension());

  report.zero_value = psn(origin).value;
  if (report.zero_value > dyadic(static_cast<unsigned>(psn.depth()))) {
    report.violations.push_back({"zero", {origin}, std::nullopt, "|0| = " + report.zero_value.str()});
  }

  for (std::size_t s = 0; s < samples; ++s) {
    const Vec x = random_chain_point(chain, rng);
    const Rat t = s == 0 ? Rat(1) : random_unit_scalar(rng);
    const Rat nx = psn(x).value;
    const Rat ntx = psn(t * x).value;
    ++report.balanced_checks;
    keep_min(report.min_balanced_slack, nx - ntx);
    if (ntx > nx) {
      report.violations.push_back({"balanced", {x}, t,
                                   "|t x| = " + ntx.str() + " > |x| = " + nx.str()});
    }

    const Vec x1 = random_chain_point(chain, rng);
    const Vec x2 = s == 0 ? origin : random_chain_point(chain, rng);
    const Rat n1 = psn(x1).value;
    const Rat n2 = psn(x2).value;
    const Rat n12 = psn(x1 + x2).value;
    ++report.subadditive_checks;
    keep_min(report.min_subadditive_slack, n1 + n2 - n12);
    if (n12 > n1 + n2) {
      report.violations.push_back({"subadditive", {x1, x2}, std::nullopt,
                                   "|x1 + x2| = " + n12.str() + " > " + n1.str() + " + " + n2.str()});
    }
  }
  return report;
}

SandwichReport check_sandwich(const DyadicPseudoSeminorm& psn, std::size_t level,
                              std::size_t samples, std::uint64_t seed) {
  if (level < 1 || level > psn.depth()) {
    throw InvalidArgument("sandwich level must lie in [1, " + std::to_string(psn.depth()) + "]");
  }
  SandwichReport report;
  report.level = level;
  report.samples = samples;
  report.seed = seed;
  Rng rng(seed);
  const CircledSet& vn = psn.chain().level(level);
  const Rat threshold = dyadic(static_cast<unsigned>(level));

  for (std::size_t s = 0; s < samples; ++s) {
    // Concentrate samples around the boundary of V_n.
    Vec x;
    if (s == 0) {
      x = zeros(psn.dimension());
    } else if (rng.coin()) {
      x = rng.rational(Rat(1, 2), Rat(3, 2)) * random_point(vn, rng);
    } else {
      x = random_chain_point(psn.chain(), rng);
    }
    const DyadicValue v = psn(x);
    const bool inside = member(vn, x);
    if (v.value < threshold) {
      ++report.inner_checks;
      if (!inside) {
        report.violations.push_back({"inner", {x}, std::nullopt,
                                     "|x| = " + v.value.str() + " < " + threshold.str() +
                                         " but x is not in V_" + std::to_string(level)});
      }
    }
    if (inside) {
      ++report.outer_checks;
      if (v.value > threshold) {
        report.violations.push_back({"outer", {x}, std::nullopt,
                                     "x in V_" + std::to_string(level) + " but |x| = " +
                                         v.value.str() + " > " + threshold.str()});
      }
    }
  }
  return report;
}

}  // namespace lipvec
