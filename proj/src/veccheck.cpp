#include "lipvec/veccheck.hpp"

#include "lipvec/errors.hpp"

#include <algorithm>
#include <utility>

namespace lipvec {

MapSpec::MapSpec(Kind kind, std::string name, std::size_t in, std::size_t out)
    : kind_(kind), name_(std::move(name)), in_(in), out_(out) {}

MapSpec MapSpec::linear(Matrix m, std::string name) {
  if (m.empty() || m.front().empty()) throw InvalidArgument("linear map needs a nonempty matrix");
  for (const auto& row : m) require_same_dimension(m.front().size(), row.size(), "matrix row");
  MapSpec f(Kind::linear, std::move(name), m.front().size(), m.size());
  f.shift_ = zeros(m.size());
  f.matrix_ = std::move(m);
  return f;
}

MapSpec MapSpec::affine(Matrix m, Vec shift, std::string name) {
  MapSpec f = linear(std::move(m), std::move(name));
  require_same_dimension(f.out_, shift.size(), "affine shift");
  f.kind_ = Kind::affine;
  f.shift_ = std::move(shift);
  return f;
}

MapSpec MapSpec::addition(std::size_t dim, std::string name) {
  Matrix m(dim, zeros(2 * dim));
  for (std::size_t i = 0; i < dim; ++i) {
    m[i][i] = 1;
    m[i][dim + i] = 1;
  }
  MapSpec f = linear(std::move(m), std::move(name));
  f.kind_ = Kind::addition;
  return f;
}

MapSpec MapSpec::scalar_mult(std::size_t dim, std::string name) {
  if (dim == 0) throw InvalidArgument("scalar multiplication needs a positive dimension");
  return MapSpec(Kind::scalar_mult, std::move(name), dim + 1, dim);
}

MapSpec MapSpec::blackbox(std::vector<std::pair<Vec, Vec>> table, std::string name) {
  if (table.empty()) throw InvalidArgument("blackbox map needs at least one evaluated pair");
  const std::size_t in = table.front().first.size();
  const std::size_t out = table.front().second.size();
  for (const auto& [x, y] : table) {
    require_same_dimension(in, x.size(), "blackbox input");
    require_same_dimension(out, y.size(), "blackbox output");
  }
  MapSpec f(Kind::blackbox, std::move(name), in, out);
  f.table_ = std::move(table);
  return f;
}

Vec MapSpec::operator()(const Vec& x) const {
  require_same_dimension(in_, x.size(), "map input");
  switch (kind_) {
    case Kind::linear:
    case Kind::affine:
    case Kind::addition:
      return mat_vec(*matrix_, x) + shift_;
    case Kind::scalar_mult:
      return x.front() * Vec(x.begin() + 1, x.end());
    case Kind::blackbox:
      for (const auto& [in, out] : table_) {
        if (in == x) return out;
      }
      throw InvalidArgument("blackbox map " + name_ + " has no value at " + to_string(x));
  }
  return {};
}

std::optional<Rat> grid_constant(const Rat& r) {
  if (r > kGridMax) return std::nullopt;
  const Int scale = Int(1) << kGridBits;
  Int k = ceil(Rat(r * scale));
  if (k < 1) k = 1;
  return Rat(k, scale);
}

namespace {

Vec concat(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

PseudoMetric product_of(const PseudoMetric& d) {
  return PseudoMetric::sum({PseudoMetric::component(PseudoMetric::Side::left, d, d.dimension()),
                            PseudoMetric::component(PseudoMetric::Side::right, d, d.dimension())});
}

}  // namespace

LipschitzCertificate check_addition(const PseudoMetric& d, const CheckOptions& opts) {
  LipschitzCertificate cert;
  cert.target = d.name();
  cert.source = product_of(d).name();
  cert.kind = CertificateKind::sampled;
  cert.constant = Rat(1);
  cert.grid = Rat(1);
  cert.samples = opts.samples;
  cert.seed = opts.seed;
  Rng rng(opts.seed);
  const std::vector<const PseudoMetric*> ms{&d};
  for (std::size_t s = 0; s < opts.samples; ++s) {
    auto [x1, y1] = random_pair(ms, rng);
    auto [x2, y2] = random_pair(ms, rng);
    if (s == 0) y1 = x1;
    const ExtRat lhs = d(x1 + x2, y1 + y2);
    const ExtRat rhs = d(x1, y1) + d(x2, y2);
    if (rhs < lhs) {
      if (cert.violations++ == 0) {
        cert.witness = std::make_pair(concat(x1, x2), concat(y1, y2));
        cert.worst_ratio = rhs == ExtRat(0) ? ExtRat::infinity() : ExtRat(lhs.value() / rhs.value());
      }
    }
  }
  cert.passed = cert.violations == 0;
  return cert;
}

LipschitzCertificate check_addition(const GaugeFunctional& p, const CheckOptions& opts) {
  return check_addition(PseudoMetric::from_gauge("gauge", p), opts);
}

LipschitzCertificate check_addition(const DyadicPseudoSeminorm& psn, const CheckOptions& opts) {
  return check_addition(PseudoMetric::from_chain("dyadic", psn), opts);
}

LocalConstants local_constants(const Rat& lambda_bar, const Vec& x_bar, const GaugeFunctional& p) {
  if (!p.is_convex()) throw InvalidArgument("local constants need a convex gauge");
  const ExtRat px = gauge_eval(p, x_bar);
  if (px.is_infinite()) throw InfiniteValue("gauge is infinite at " + to_string(x_bar));
  return {1 + abs(lambda_bar), 1 + px.value()};
}

ScalarMultReport check_scalar_mult(const GaugeFunctional& p, const Rat& lambda_bar, const Vec& x_bar,
                                   const CheckOptions& opts) {
  ScalarMultReport report;
  report.lambda_bar = lambda_bar;
  report.x_bar = x_bar;
  report.constants = local_constants(lambda_bar, x_bar, p);
  report.seed = opts.seed;
  const auto& [c1, c2] = report.constants;
  const BalancedPolytope& unit = p.base().pieces().front();
  Rng rng(opts.seed);

  // Draws overshoot the neighbourhood by a quarter so the sampler's own
  // rejection is exercised.
  const Rat over(5, 4);
  auto draw = [&](Rat& t, Vec& x) {
    t = lambda_bar + rng.rational(-over, over);
    x = x_bar + rng.rational(Rat(0), over) * random_point(unit, rng);
    if (abs(t - lambda_bar) > 1 || ExtRat(1) < gauge_eval(p, x - x_bar)) {
      ++report.rejected;
      return false;
    }
    return true;
  };

  const std::size_t max_draws = 50 * opts.samples + 10;
  for (std::size_t draws = 0; report.samples < opts.samples && draws < max_draws; ++draws) {
    Rat t1, t2;
    Vec x1, x2;
    if (report.samples == 0) {
      t1 = t2 = lambda_bar;
      x1 = x2 = x_bar;
    } else if (!draw(t1, x1) || !draw(t2, x2)) {
      continue;
    }
    ++report.samples;
    const ExtRat lhs = gauge_eval(p, t1 * x1 - t2 * x2);
    const ExtRat rhs = c1 * gauge_eval(p, x1 - x2) + ExtRat(c2 * abs(t1 - t2));
    if (rhs < lhs) {
      if (report.violations++ == 0) report.first_violation = std::vector<Vec>{{t1}, {t2}, x1, x2};
      continue;
    }
    const Rat slack = rhs.value() - lhs.value();
    if (!report.min_slack || slack < *report.min_slack) report.min_slack = slack;
  }
  return report;
}

ScaledChainReport check_scalar_mult_chain(const DyadicPseudoSeminorm& psn_v, const Rat& s,
                                          const CheckOptions& opts) {
  if (s <= 0) throw InvalidArgument("chain scale must be positive, got " + to_string(s));
  const DyadicPseudoSeminorm psn_u(scale_chain(psn_v.chain(), s), psn_v.strategy(), psn_v.set_options());
  ScaledChainReport report;
  report.scale = s;
  report.samples = opts.samples;
  report.seed = opts.seed;
  Rng rng(opts.seed);
  for (std::size_t i = 0; i < opts.samples; ++i) {
    Rat t;
    if (i == 0) {
      t = 0;
    } else if (i == 1) {
      t = s;
    } else if (i == 2) {
      t = -s;
    } else {
      t = rng.rational(-s, s);
    }
    const Vec x = random_chain_point(psn_v.chain(), rng);
    const Rat lhs = dyadic_eval(psn_u, t * x).value;
    const Rat rhs = dyadic_eval(psn_v, x).value;
    if (lhs > rhs) {
      if (report.violations++ == 0) report.first_violation = std::make_pair(t, x);
      continue;
    }
    if (lhs == rhs) ++report.equalities;
    const Rat slack = rhs - lhs;
    if (!report.min_slack || slack < *report.min_slack) report.min_slack = slack;
  }
  return report;
}

bool MapCheckResult::passed() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const auto& c) { return c.passed; });
}

namespace {

ExtRat value_or_infinity(const PseudoMetric& d, const Vec& v) {
  try {
    return d.at_difference(v);
  } catch (const OutsideSubspace&) {
    return ExtRat::infinity();
  }
}

// Target d_Y o M against each source base element with a finitely generated
// unit ball B: d_Y(M v) <= k p_B(v) for all v iff d_Y(M g) <= k at the
// generators g of B. Nothing when some source element has another shape and
// no certificate was found.
std::optional<LipschitzCertificate> exact_certificate(const Matrix& m, const LipschitzStructure& lx,
                                                      const PseudoMetric& target) {
  if (!target.is_sublinear()) return std::nullopt;
  LipschitzCertificate cert;
  cert.target = target.name();
  bool decisive = true;
  std::optional<std::pair<Vec, Vec>> refutation;
  for (const auto& source : lx.base()) {
    const auto gens = unit_ball_generators(source);
    if (!gens) {
      decisive = false;
      continue;
    }
    ExtRat worst(0);
    std::optional<Vec> arg;
    for (const auto& g : *gens) {
      const ExtRat v = value_or_infinity(target, mat_vec(m, g));
      if (!arg || worst < v) {
        worst = v;
        arg = g;
      }
      if (v.is_infinite()) break;
    }
    if (worst.is_infinite()) {
      if (!refutation) refutation = std::make_pair(*arg, zeros(arg->size()));
      continue;
    }
    const Rat c = worst.value();
    if (!cert.constant || c < *cert.constant) {
      cert.constant = c;
      cert.source = source.name();
    }
  }
  if (cert.constant) {
    cert.passed = true;
    cert.grid = grid_constant(*cert.constant);
    return cert;
  }
  if (!decisive) return std::nullopt;
  cert.source = lx.base().front().name();
  cert.witness = refutation;
  cert.worst_ratio = ExtRat::infinity();
  cert.violations = 1;
  return cert;
}

LipschitzCertificate sampled_certificate(const MapSpec& f, const LipschitzStructure& lx,
                                         const PseudoMetric& target, const MapCheckOptions& opts) {
  LipschitzCertificate cert;
  cert.target = target.name();
  cert.kind = CertificateKind::sampled;
  cert.samples = opts.samples;
  cert.seed = opts.seed;

  std::vector<std::pair<Vec, Vec>> table;
  if (f.kind() == MapSpec::Kind::blackbox) {
    for (const auto& entry : f.table()) {
      if (!opts.restrict_to || member(*opts.restrict_to, entry.first)) table.push_back(entry);
    }
    if (table.size() < 2) throw InvalidArgument("blackbox map " + f.name() + " has fewer than two usable points");
  }
  std::vector<const PseudoMetric*> sources;
  for (const auto& b : lx.base()) sources.push_back(&b);

  struct Worst {
    ExtRat ratio{0};
    std::optional<std::pair<Vec, Vec>> pair;
    std::size_t over_grid = 0;
  };
  std::vector<Worst> worst(sources.size());
  Rng rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    Vec x1, x2, y1, y2;
    if (!table.empty()) {
      const std::size_t i = rng.index(table.size());
      std::size_t j = rng.index(table.size() - 1);
      if (j >= i) ++j;
      x1 = table[i].first;
      y1 = table[i].second;
      x2 = table[j].first;
      y2 = table[j].second;
    } else {
      std::tie(x1, x2) = random_pair(sources, rng);
      y1 = f(x1);
      y2 = f(x2);
    }
    const ExtRat dy = value_or_infinity(target, y1 - y2);
    if (dy == ExtRat(0)) continue;
    for (std::size_t k = 0; k < sources.size(); ++k) {
      const ExtRat dx = (*sources[k])(x1, x2);
      if (dx.is_infinite()) continue;
      const ExtRat r = dy.is_infinite() || dx == ExtRat(0) ? ExtRat::infinity() : ExtRat(dy.value() / dx.value());
      if (ExtRat(kGridMax) < r) ++worst[k].over_grid;
      if (!worst[k].pair || worst[k].ratio < r) {
        worst[k].ratio = r;
        worst[k].pair = std::make_pair(x1, x2);
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < sources.size(); ++k) {
    if (worst[k].ratio < worst[best].ratio) best = k;
  }
  cert.source = sources[best]->name();
  const Worst& w = worst[best];
  if (w.ratio.is_finite()) {
    cert.constant = w.ratio.value();
    cert.grid = grid_constant(w.ratio.value());
  }
  cert.passed = cert.grid.has_value();
  if (!cert.passed) {
    cert.witness = w.pair;
    cert.worst_ratio = w.ratio;
    cert.violations = w.over_grid;
  }
  return cert;
}

}  // namespace

MapCheckResult check_map(const MapSpec& f, const LipschitzStructure& lx, const LipschitzStructure& ly,
                         const MapCheckOptions& opts) {
  require_same_dimension(f.input_dim(), lx.dimension(), "source structure of " + f.name());
  require_same_dimension(f.output_dim(), ly.dimension(), "target structure of " + f.name());
  if (opts.mode == CheckMode::exact && f.kind() == MapSpec::Kind::blackbox) {
    throw InvalidArgument("blackbox map " + f.name() + " only supports sampled checks");
  }
  MapCheckResult result;
  for (const auto& target : ly.base()) {
    std::optional<LipschitzCertificate> cert;
    if (opts.mode == CheckMode::exact && f.difference_matrix()) {
      cert = exact_certificate(*f.difference_matrix(), lx, target);
    }
    if (!cert) cert = sampled_certificate(f, lx, target, opts);
    result.certificates.push_back(std::move(*cert));
  }
  return result;
}

}  // namespace lipvec
