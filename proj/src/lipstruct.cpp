#include "lipvec/lipstruct.hpp"

#include "lipvec/errors.hpp"

#include <utility>

namespace lipvec {

struct PseudoMetric::Node {
  Node(Kind k, std::string n) : kind(k), name(std::move(n)) {}

  Kind kind;
  std::string name;
  std::size_t dim = 0;
  std::vector<PseudoMetric> parts;
  Rat factor{1};
  Side side = Side::left;
  std::size_t other_dim = 0;
  std::optional<GaugeFunctional> gauge;
  std::optional<DyadicPseudoSeminorm> psn;
};

PseudoMetric::PseudoMetric(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

PseudoMetric PseudoMetric::from_gauge(std::string name, GaugeFunctional gauge) {
  Node n(Kind::gauge, std::move(name));
  n.dim = gauge.dimension();
  n.gauge = std::move(gauge);
  return PseudoMetric(std::make_shared<const Node>(std::move(n)));
}

PseudoMetric PseudoMetric::from_chain(std::string name, DyadicPseudoSeminorm psn) {
  Node n(Kind::chain, std::move(name));
  n.dim = psn.dimension();
  n.psn = std::move(psn);
  return PseudoMetric(std::make_shared<const Node>(std::move(n)));
}

namespace {

void require_common_dimension(const std::vector<PseudoMetric>& parts, const char* what) {
  if (parts.empty()) throw InvalidArgument(std::string(what) + " of no metrics");
  for (const auto& p : parts) require_same_dimension(parts.front().dimension(), p.dimension(), what);
}

std::string joined(const std::vector<PseudoMetric>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i].name();
  }
  return out;
}

}  // namespace

PseudoMetric PseudoMetric::sup(std::vector<PseudoMetric> parts) {
  require_common_dimension(parts, "sup");
  if (parts.size() == 1) return parts.front();
  Node n(Kind::sup, "sup(" + joined(parts, ", ") + ")");
  n.dim = parts.front().dimension();
  n.parts = std::move(parts);
  return PseudoMetric(std::make_shared<const Node>(std::move(n)));
}

PseudoMetric PseudoMetric::scaled(const Rat& factor, PseudoMetric d) {
  if (factor <= 0) throw InvalidArgument("metric scale factor must be positive, got " + to_string(factor));
  const std::string f = denominator(factor) == 1 ? to_string(factor) : "(" + to_string(factor) + ")";
  Node n(Kind::scaled, f + "*" + d.name());
  n.dim = d.dimension();
  n.factor = factor;
  n.parts = {std::move(d)};
  return PseudoMetric(std::make_shared<const Node>(std::move(n)));
}

PseudoMetric PseudoMetric::sum(std::vector<PseudoMetric> parts) {
  require_common_dimension(parts, "sum");
  Node n(Kind::sum, joined(parts, " + "));
  n.dim = parts.front().dimension();
  n.parts = std::move(parts);
  return PseudoMetric(std::make_shared<const Node>(std::move(n)));
}

PseudoMetric PseudoMetric::component(Side side, PseudoMetric d, std::size_t other_dim) {
  Node n(Kind::component, d.name() + (side == Side::left ? " o pi1" : " o pi2"));
  n.dim = d.dimension() + other_dim;
  n.side = side;
  n.other_dim = other_dim;
  n.parts = {std::move(d)};
  return PseudoMetric(std::make_shared<const Node>(std::move(n)));
}

PseudoMetric::Kind PseudoMetric::kind() const { return node_->kind; }
const std::string& PseudoMetric::name() const { return node_->name; }
std::size_t PseudoMetric::dimension() const { return node_->dim; }
const std::vector<PseudoMetric>& PseudoMetric::parts() const { return node_->parts; }
const Rat& PseudoMetric::factor() const { return node_->factor; }
PseudoMetric::Side PseudoMetric::side() const { return node_->side; }
const GaugeFunctional* PseudoMetric::gauge() const { return node_->gauge ? &*node_->gauge : nullptr; }
const DyadicPseudoSeminorm* PseudoMetric::psn() const { return node_->psn ? &*node_->psn : nullptr; }

bool PseudoMetric::is_sublinear() const {
  switch (kind()) {
    case Kind::gauge:
      return node_->gauge->is_convex();
    case Kind::chain:
      return false;
    default:
      for (const auto& p : parts()) {
        if (!p.is_sublinear()) return false;
      }
      return true;
  }
}

std::optional<std::vector<Vec>> PseudoMetric::domain_basis() const {
  switch (kind()) {
    case Kind::gauge:
      if (node_->gauge->restricted_to_span()) return node_->gauge->span_basis();
      return std::nullopt;
    case Kind::chain:
      return std::nullopt;
    case Kind::component: {
      const auto inner = parts().front().domain_basis();
      if (!inner) return std::nullopt;
      const std::size_t d = parts().front().dimension();
      const std::size_t offset = side() == Side::left ? 0 : node_->other_dim;
      const std::size_t other_offset = side() == Side::left ? d : 0;
      std::vector<Vec> out;
      for (const auto& b : *inner) {
        Vec v = zeros(dimension());
        for (std::size_t i = 0; i < d; ++i) v[offset + i] = b[i];
        out.push_back(std::move(v));
      }
      for (std::size_t i = 0; i < node_->other_dim; ++i) {
        Vec v = zeros(dimension());
        v[other_offset + i] = 1;
        out.push_back(std::move(v));
      }
      return out;
    }
    default:
      for (const auto& p : parts()) {
        if (auto b = p.domain_basis()) return b;
      }
      return std::nullopt;
  }
}

ExtRat PseudoMetric::at_difference(const Vec& v) const {
  require_same_dimension(dimension(), v.size(), "metric " + name());
  switch (kind()) {
    case Kind::gauge:
      return gauge_eval(*node_->gauge, v);
    case Kind::chain:
      return is_zero(v) ? ExtRat(0) : ExtRat(dyadic_eval(*node_->psn, v).value);
    case Kind::sup: {
      ExtRat best(0);
      for (const auto& p : parts()) best = max(best, p.at_difference(v));
      return best;
    }
    case Kind::scaled:
      return factor() * parts().front().at_difference(v);
    case Kind::sum: {
      ExtRat total(0);
      for (const auto& p : parts()) total = total + p.at_difference(v);
      return total;
    }
    case Kind::component: {
      const std::size_t d = parts().front().dimension();
      const std::size_t offset = side() == Side::left ? 0 : node_->other_dim;
      return parts().front().at_difference(Vec(v.begin() + offset, v.begin() + offset + d));
    }
  }
  return ExtRat(0);
}

ExtRat PseudoMetric::operator()(const Vec& x1, const Vec& x2) const {
  require_same_dimension(dimension(), x1.size(), "metric " + name());
  require_same_dimension(dimension(), x2.size(), "metric " + name());
  return at_difference(x1 - x2);
}

bool PseudoMetric::same_as(const PseudoMetric& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || dimension() != other.dimension()) return false;
  switch (kind()) {
    case Kind::gauge:
    case Kind::chain:
      return false;
    case Kind::scaled:
      if (factor() != other.factor()) return false;
      break;
    case Kind::component:
      if (side() != other.side() || node_->other_dim != other.node_->other_dim) return false;
      break;
    default:
      break;
  }
  if (parts().size() != other.parts().size()) return false;
  for (std::size_t i = 0; i < parts().size(); ++i) {
    if (!parts()[i].same_as(other.parts()[i])) return false;
  }
  return true;
}

ExtRat eval_metric(const PseudoMetric& d, const Vec& x1, const Vec& x2) { return d(x1, x2); }

LipschitzStructure::LipschitzStructure(std::vector<PseudoMetric> base, std::string name)
    : base_(std::move(base)), name_(std::move(name)) {
  if (base_.empty()) throw InvalidArgument("a Lipschitz structure needs a nonempty base");
  for (const auto& b : base_) require_same_dimension(base_.front().dimension(), b.dimension(), "structure base");
}

LipschitzStructure generate_structure(const std::vector<PseudoMetric>& family, std::string name) {
  if (family.empty()) throw InvalidArgument("cannot generate a structure from no metrics");
  if (family.size() > kMaxGenerators) {
    throw InvalidArgument("at most " + std::to_string(kMaxGenerators) + " generating metrics, got " +
                          std::to_string(family.size()));
  }
  std::vector<PseudoMetric> base;
  for (std::size_t mask = 1; mask < (std::size_t{1} << family.size()); ++mask) {
    std::vector<PseudoMetric> subset;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(family[i]);
    }
    base.push_back(PseudoMetric::sup(std::move(subset)));
  }
  return LipschitzStructure(std::move(base), std::move(name));
}

LipschitzStructure product_structure(const LipschitzStructure& lx, const LipschitzStructure& ly) {
  std::vector<PseudoMetric> base;
  for (const auto& bx : lx.base()) {
    for (const auto& by : ly.base()) {
      base.push_back(PseudoMetric::sum({PseudoMetric::component(PseudoMetric::Side::left, bx, ly.dimension()),
                                        PseudoMetric::component(PseudoMetric::Side::right, by, lx.dimension())}));
    }
  }
  std::string name;
  if (!lx.name().empty() || !ly.name().empty()) name = lx.name() + " x " + ly.name();
  return LipschitzStructure(std::move(base), std::move(name));
}

namespace {

ExtRat value_or_infinity(const PseudoMetric& p, const Vec& v) {
  try {
    return p.at_difference(v);
  } catch (const OutsideSubspace&) {
    return ExtRat::infinity();
  }
}

// p <= alpha * c * gauge_U iff p(g) <= alpha * c at every generator g of U,
// by sublinearity of p. Returns max p(g) / c and the first maximizing g.
std::pair<ExtRat, std::optional<Vec>> generator_ratio(const PseudoMetric& p, const ScaledGauge& q) {
  ExtRat best(0);
  std::optional<Vec> arg;
  for (const auto& g : q.gauge->base().pieces().front().generators()) {
    const ExtRat v = value_or_infinity(p, g);
    if (!arg || best < v) {
      best = v;
      arg = g;
    }
    if (v.is_infinite()) break;
  }
  if (best.is_infinite()) return {best, arg};
  return {ExtRat(best.value() / q.factor), arg};
}

void keep_min(std::optional<Rat>& best, const std::optional<Rat>& r) {
  if (r && (!best || *r < *best)) best = r;
}

}  // namespace

std::optional<ScaledGauge> as_scaled_gauge(const PseudoMetric& q) {
  Rat c(1);
  const PseudoMetric* cur = &q;
  while (cur->kind() == PseudoMetric::Kind::scaled) {
    c *= cur->factor();
    cur = &cur->parts().front();
  }
  if (cur->kind() != PseudoMetric::Kind::gauge || !cur->gauge()->is_convex()) return std::nullopt;
  return ScaledGauge{c, cur->gauge()};
}

std::optional<std::vector<Vec>> unit_ball_generators(const PseudoMetric& d) {
  if (const auto sq = as_scaled_gauge(d)) {
    std::vector<Vec> gens;
    for (const auto& g : sq->gauge->base().pieces().front().generators()) gens.push_back((Rat(1) / sq->factor) * g);
    return gens;
  }
  if (d.kind() == PseudoMetric::Kind::scaled) {
    auto gens = unit_ball_generators(d.parts().front());
    if (gens) {
      for (auto& g : *gens) g = (Rat(1) / d.factor()) * g;
    }
    return gens;
  }
  // |x|_U + |y|_V is the gauge of the balanced hull of (U, 0) and (0, V).
  if (d.kind() != PseudoMetric::Kind::sum || d.parts().size() != 2) return std::nullopt;
  const auto& a = d.parts()[0];
  const auto& b = d.parts()[1];
  if (a.kind() != PseudoMetric::Kind::component || b.kind() != PseudoMetric::Kind::component ||
      a.side() == b.side()) {
    return std::nullopt;
  }
  std::vector<Vec> gens;
  for (const auto* part : {&a, &b}) {
    const auto inner = unit_ball_generators(part->parts().front());
    if (!inner) return std::nullopt;
    const std::size_t offset = part->side() == PseudoMetric::Side::left ? 0 : d.dimension() - inner->front().size();
    for (const auto& g : *inner) {
      Vec e = zeros(d.dimension());
      std::copy(g.begin(), g.end(), e.begin() + static_cast<std::ptrdiff_t>(offset));
      gens.push_back(std::move(e));
    }
  }
  return gens;
}

DominationResult dominates(const PseudoMetric& p, const PseudoMetric& q, const Rat& alpha) {
  require_same_dimension(q.dimension(), p.dimension(), "dominates");
  if (alpha <= 0) throw InvalidArgument("domination constant must be positive");
  if (!p.is_sublinear()) throw InvalidArgument("metric " + p.name() + " is not built from convex gauges");
  const auto sq = as_scaled_gauge(q);
  if (!sq) throw InvalidArgument("metric " + q.name() + " is not a multiple of a convex gauge");
  DominationResult out;
  out.ratio = generator_ratio(p, *sq).first;
  out.holds = out.ratio <= ExtRat(alpha);
  if (!out.holds) {
    for (const auto& g : sq->gauge->base().pieces().front().generators()) {
      const ExtRat v = value_or_infinity(p, g);
      if (ExtRat(alpha * sq->factor) < v) {
        out.witness = g;
        out.witness_value = v;
        break;
      }
    }
  }
  return out;
}

std::optional<Rat> certified_bound(const PseudoMetric& d, const PseudoMetric& b) {
  using K = PseudoMetric::Kind;
  if (d.same_as(b)) return Rat(1);
  if (d.is_sublinear()) {
    if (const auto sq = as_scaled_gauge(b)) {
      const ExtRat r = generator_ratio(d, *sq).first;
      if (r.is_finite()) return r.value();
      return std::nullopt;
    }
  }
  std::optional<Rat> best;
  switch (d.kind()) {
    case K::scaled:
      if (auto r = certified_bound(d.parts().front(), b)) keep_min(best, d.factor() * *r);
      break;
    case K::sup:
    case K::sum: {
      std::optional<Rat> acc = Rat(0);
      for (const auto& part : d.parts()) {
        const auto r = certified_bound(part, b);
        if (!r) {
          acc.reset();
          break;
        }
        acc = d.kind() == K::sup ? (*acc < *r ? *r : *acc) : *acc + *r;
      }
      keep_min(best, acc);
      break;
    }
    case K::component:
      if (b.kind() == K::component && b.side() == d.side() && b.dimension() == d.dimension()) {
        keep_min(best, certified_bound(d.parts().front(), b.parts().front()));
      }
      break;
    default:
      break;
  }
  switch (b.kind()) {
    case K::scaled:
      if (auto r = certified_bound(d, b.parts().front())) keep_min(best, *r / b.factor());
      break;
    case K::sup:
    case K::sum:
      // Every part is at most b.
      for (const auto& part : b.parts()) keep_min(best, certified_bound(d, part));
      break;
    default:
      break;
  }
  return best;
}

std::string to_string(CertificateKind kind) { return kind == CertificateKind::exact ? "exact" : "sampled"; }

namespace {

const DyadicPseudoSeminorm* find_chain(const PseudoMetric& m) {
  if (m.psn()) return m.psn();
  if (m.kind() == PseudoMetric::Kind::component) return nullptr;
  for (const auto& p : m.parts()) {
    if (const auto* c = find_chain(p)) return c;
  }
  return nullptr;
}

}  // namespace

std::pair<Vec, Vec> random_pair(const std::vector<const PseudoMetric*>& metrics, Rng& rng) {
  const std::size_t dim = metrics.front()->dimension();
  std::optional<std::vector<Vec>> basis;
  const DyadicPseudoSeminorm* chain = nullptr;
  for (const auto* m : metrics) {
    if (!basis) basis = m->domain_basis();
    if (!chain) chain = find_chain(*m);
  }
  auto draw = [&](const Rat& radius) {
    if (!basis) {
      Vec v(dim);
      for (auto& c : v) c = rng.rational(-radius, radius);
      return v;
    }
    Vec v = zeros(dim);
    for (const auto& b : *basis) v = v + rng.rational(-radius, radius) * b;
    return v;
  };
  Vec x1 = draw(Rat(2));
  if (rng.coin()) return {x1, draw(Rat(2))};
  if (chain && !basis && rng.coin()) return {x1, x1 + random_chain_point(chain->chain(), rng)};
  return {x1, x1 + draw(dyadic(rng.index(7)))};
}

namespace {

ContainmentVerdict sampled_containment(const LipschitzStructure& l, const PseudoMetric& d,
                                       const ContainmentOptions& opts) {
  ContainmentVerdict v;
  v.kind = CertificateKind::sampled;
  v.samples = opts.samples;
  v.seed = opts.seed;
  const auto& base = l.base();
  std::vector<const PseudoMetric*> metrics{&d};
  for (const auto& b : base) metrics.push_back(&b);

  // Largest observed d / b per base element; nullopt once b = 0 < d was seen.
  std::vector<std::optional<Rat>> ratio(base.size(), Rat(0));
  Rng rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    const auto [x1, x2] = random_pair(metrics, rng);
    const ExtRat dv = d(x1, x2);
    if (dv == ExtRat(0)) continue;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (!ratio[i]) continue;
      const ExtRat bv = base[i](x1, x2);
      if (bv.is_infinite()) continue;
      if (dv.is_infinite() || bv == ExtRat(0)) {
        ratio[i].reset();
        if (i == 0) v.witness_pair = std::make_pair(x1, x2);
        continue;
      }
      const Rat r = dv.value() / bv.value();
      if (*ratio[i] < r) ratio[i] = r;
    }
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (ratio[i] && (!v.alpha || *ratio[i] < *v.alpha)) {
      v.alpha = ratio[i];
      v.base_index = i;
    }
  }
  v.contained = v.alpha.has_value();
  if (v.contained) v.witness_pair.reset();
  return v;
}

}  // namespace

namespace {

/// c > 0 with d(x1, x2) >= c whenever x1 != x2, read off the descriptors.
std::optional<Rat> positive_floor(const PseudoMetric& d) {
  switch (d.kind()) {
    case PseudoMetric::Kind::chain:
      return Rat(1, Int(1) << d.psn()->depth());
    case PseudoMetric::Kind::scaled:
      if (const auto f = positive_floor(d.parts().front())) return d.factor() * *f;
      return std::nullopt;
    case PseudoMetric::Kind::sup:
    case PseudoMetric::Kind::sum: {
      std::optional<Rat> best;
      for (const auto& part : d.parts()) {
        if (const auto f = positive_floor(part); f && (!best || *best < *f)) best = f;
      }
      return best;
    }
    default:
      return std::nullopt;
  }
}

void leaf_generators(const PseudoMetric& b, std::vector<Vec>& out) {
  if (const auto* g = b.gauge()) {
    for (const auto& piece : g->base().pieces()) {
      for (const auto& v : piece.generators()) {
        if (!is_zero(v)) out.push_back(v);
      }
    }
  }
  for (const auto& part : b.parts()) leaf_generators(part, out);
}

/// v != 0 with b(v) finite, for positively homogeneous b.
std::optional<Vec> finite_direction(const PseudoMetric& b) {
  if (!b.is_sublinear()) return std::nullopt;
  std::vector<Vec> candidates;
  leaf_generators(b, candidates);
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    Vec e = zeros(b.dimension());
    e[i] = Rat(1);
    candidates.push_back(std::move(e));
  }
  for (const auto& v : candidates) {
    if (v.size() == b.dimension() && b.at_difference(v).is_finite()) return v;
  }
  return std::nullopt;
}

}  // namespace

ContainmentVerdict structure_contains(const LipschitzStructure& l, const PseudoMetric& d, ContainmentMode mode,
                                      const ContainmentOptions& opts) {
  require_same_dimension(l.dimension(), d.dimension(), "structure_contains");
  if (mode == ContainmentMode::sampled) return sampled_containment(l, d, opts);

  ContainmentVerdict v;
  bool decisive = d.is_sublinear();
  for (std::size_t i = 0; i < l.base().size(); ++i) {
    const auto r = certified_bound(d, l.base()[i]);
    if (r && (!v.alpha || *r < *v.alpha)) {
      v.alpha = r;
      v.base_index = i;
    }
    decisive = decisive && as_scaled_gauge(l.base()[i]).has_value();
  }
  if (v.alpha) {
    v.contained = true;
    return v;
  }
  if (const auto floor = positive_floor(d)) {
    // d >= floor off the diagonal while every homogeneous b vanishes along
    // t v as t -> 0.
    std::optional<Vec> direction;
    bool all = true;
    for (const auto& b : l.base()) {
      const auto g = finite_direction(b);
      all = all && g.has_value();
      if (g && !direction) direction = g;
    }
    if (all) {
      v.witness = direction;
      return v;
    }
  }
  if (decisive) {
    // Every base element is a multiple of a convex gauge and d is infinite at
    // a generator of each unit ball.
    v.witness = generator_ratio(d, *as_scaled_gauge(l.base().front())).second;
    return v;
  }
  return sampled_containment(l, d, opts);
}

}  // namespace lipvec
