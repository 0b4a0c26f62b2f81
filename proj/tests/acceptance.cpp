// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include "chains.hpp"
#include "test_support.hpp"

#include "lipvec/bornology.hpp"
#include "lipvec/errors.hpp"
#include "lipvec/lipstruct.hpp"
#include "lipvec/metrization.hpp"
#include "lipvec/veccheck.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace lipvec {
namespace {

using testing::l1_ball;
using testing::l1_ball_3d;
using testing::l1_norm;
using testing::linf_ball;
using testing::linf_ball_3d;
using testing::linf_norm;
using testing::NamedChain;
using testing::q;
using testing::skew_hexagon;
using testing::spiked_chain;
using testing::v2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

GaugeFunctional gauge_of(BalancedPolytope p) { return GaugeFunctional::of_set(CircledSet(std::move(p))); }

std::vector<NamedChain> chain_suite() {
  std::vector<NamedChain> out;
  const std::vector<std::pair<std::string, BalancedPolytope>> convex{
      {"l1", l1_ball()}, {"linf", linf_ball()}, {"hex", skew_hexagon()}, {"l1-3d", l1_ball_3d()},
      {"linf-3d", linf_ball_3d()}};
  struct Spiked {
    std::string name;
    BalancedPolytope core;
    std::vector<BalancedPolytope> spikes;
    Rat ratio;
  };
  // Two-piece levels at both depths; three-piece levels only at N = 4, where
  // the 3^N piece combinations of a full Minkowski sum stay under the cap.
  const std::vector<Spiked> two_piece{
      {"l1+diag", l1_ball(), {BalancedPolytope({v2(q(1), q(1))})}, q(1, 4)},
      {"hex+spike", skew_hexagon(), {BalancedPolytope({v2(q(0), q(3))})}, q(1, 8)},
      {"l1-3d+diag", l1_ball_3d(), {BalancedPolytope({Vec{q(1), q(1), q(0)}})}, q(1, 4)},
      {"linf-3d+slant", linf_ball_3d(), {BalancedPolytope({Vec{q(1), q(2), q(0)}})}, q(1, 8)}};
  const std::vector<Spiked> three_piece{
      {"linf+axes", linf_ball(), {BalancedPolytope({v2(q(3), q(0))}), BalancedPolytope({v2(q(0), q(3))})}, q(1, 8)},
      {"linf-3d+axes", linf_ball_3d(),
       {BalancedPolytope({Vec{q(2), q(0), q(0)}}), BalancedPolytope({Vec{q(0), q(0), q(2)}})}, q(1, 8)}};
  auto add = [&](const Spiked& s, std::size_t n) {
    out.push_back({s.name + "/N" + std::to_string(n), validated(spiked_chain(s.core, s.spikes, s.ratio, n))});
  };
  for (const std::size_t n : {4U, 8U}) {
    for (const auto& [name, u] : convex) out.push_back({name + "/N" + std::to_string(n), chain_from_convex(u, n)});
    for (const auto& s : two_piece) add(s, n);
  }
  for (const auto& s : three_piece) add(s, 4);
  return out;
}

const std::vector<NamedChain>& suite() {
  static const auto chains = chain_suite();
  return chains;
}

Outcome c1_axioms() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t nonconvex = 0;
  for (const auto& [name, c] : suite()) {
    require(o, c.status().kind == ValidationKind::valid_exact, name + " is not valid-exact");
    nonconvex += c.level(1).pieces().size() > 1 ? 1 : 0;
    const auto r = check_axioms(DyadicPseudoSeminorm(c), 500, 1);
    require(o, r.passed(), name + ": " + std::to_string(r.violations.size()) + " violations");
    require(o, r.balanced_checks == 500 && r.subadditive_checks == 500, name + ": short sample count");
    require(o, r.zero_value == Rat(1, Int(1) << c.depth()), name + ": wrong value at 0");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(o, suite().size() >= 20 && nonconvex >= 6, "chain suite too small");
  require(o, secs < 60, "took " + std::to_string(secs) + " s");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu chains (%zu non-convex), 500 samples each, 0 violations, %.1f s", suite().size(),
                  nonconvex, secs);
    o.detail = buf;
  }
  return o;
}

Outcome c2_sandwich() {
  Outcome o;
  std::size_t inner = 0, outer = 0, runs = 0;
  for (const auto& [name, c] : suite()) {
    const DyadicPseudoSeminorm psn(c);
    for (std::size_t n = 1; n <= c.depth(); ++n) {
      const auto r = check_sandwich(psn, n, 200, 2);
      require(o, r.passed(), name + " level " + std::to_string(n) + ": violation");
      inner += r.inner_checks;
      outer += r.outer_checks;
      ++runs;
    }
  }
  require(o, inner > 0 && outer > 0, "one direction never exercised");
  if (o.pass) {
    o.detail = std::to_string(runs) + " (chain, n) pairs x 200 samples; " + std::to_string(inner) + " inner and " +
               std::to_string(outer) + " outer checks, 0 violations";
  }
  return o;
}

Outcome c3_fast_vs_brute() {
  Outcome o;
  Rng rng(3);
  std::size_t points = 0;
  for (const auto& [name, c] : suite()) {
    const DyadicPseudoSeminorm psn(c);
    for (int i = 0; i < 100; ++i) {
      // Mix chain-scale points with wide ones that hit the sentinel.
      const Vec x = i % 10 == 9 ? Rat(3) * random_chain_point(c, rng) : random_chain_point(c, rng);
      const auto fast = dyadic_eval(psn, x, EvalStrategy::fast_path);
      const auto brute = dyadic_eval(psn, x, EvalStrategy::brute_force);
      require(o, fast == brute, name + " at " + to_string(x) + ": " + to_string(fast) + " vs " + to_string(brute));
      ++points;
    }
  }
  if (o.pass) o.detail = std::to_string(points) + " points over " + std::to_string(suite().size()) + " chains agree";
  return o;
}

/// Dyadic ceiling with index set from the binary digits, built by hand.
DyadicValue ceiling_oracle(const Rat& g, std::size_t depth) {
  const long full = 1L << depth;
  Int k = ceil(Rat(g * full));
  if (k < 1) k = 1;
  if (k >= full) return DyadicValue{Rat(1), std::nullopt};
  const long kk = k.convert_to<long>();
  std::vector<std::size_t> indices;
  for (std::size_t i = 1; i <= depth; ++i) {
    if ((kk >> (depth - i)) & 1) indices.push_back(i);
  }
  return DyadicValue{Rat(kk, full), indices};
}

Outcome c4_closed_form() {
  Outcome o;
  Rng rng(4);
  std::size_t boundary = 0, total = 0;
  const std::vector<std::pair<std::string, BalancedPolytope>> units{
      {"l1", l1_ball()}, {"linf", linf_ball()}, {"hex", skew_hexagon()}};
  for (const auto& [name, u] : units) {
    for (const std::size_t n : {4U, 8U}) {
      const DyadicPseudoSeminorm psn(chain_from_convex(u, n));
      const long full = 1L << n;
      for (int i = 0; i < 200; ++i) {
        Vec x = v2(rng.rational(q(-5, 4), q(5, 4), 64), rng.rational(q(-5, 4), q(5, 4), 64));
        if (i % 4 == 0 && !is_zero(x)) {
          // Rescale onto the level set {gauge = k / 2^N}.
          const Rat g = gauge_of_piece(u, x).value();
          x = (Rat(rng.integer(1, full), full) / g) * x;
          require(o, gauge_of_piece(u, x).value() * full == ceil(Rat(gauge_of_piece(u, x).value() * full)),
                  "boundary point off the grid");
          ++boundary;
        }
        const auto value = dyadic_eval(psn, x);
        require(o, value == convex_chain_closed_form(u, n, x), name + " at " + to_string(x));
        if (name != "hex") {
          const Rat norm = name == "l1" ? l1_norm(x) : linf_norm(x);
          require(o, value == ceiling_oracle(norm, n), name + " vs hand oracle at " + to_string(x));
        }
        ++total;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(total) + " points (" + std::to_string(boundary) +
               " with gauge exactly k/2^N), l1/linf also against the norm ceiling";
  }
  return o;
}

Outcome c5_gauge_grid() {
  Outcome o;
  const auto l1 = gauge_of(l1_ball());
  const auto linf = gauge_of(linf_ball());
  std::size_t n = 0;
  for (int i = -10; i <= 10; ++i) {
    for (int j = -10; j <= 10; ++j) {
      const Vec x = v2(q(i, 5), q(j, 5));
      require(o, gauge_eval(l1, x) == ExtRat(l1_norm(x)), "l1 at " + to_string(x));
      require(o, gauge_eval(linf, x) == ExtRat(linf_norm(x)), "linf at " + to_string(x));
      ++n;
    }
  }
  if (o.pass) o.detail = std::to_string(n) + " grid points in [-2,2]^2, both norms exact";
  return o;
}

Outcome c6_addition() {
  Outcome o;
  std::size_t functionals = 0;
  for (const auto& [name, u] : std::vector<std::pair<std::string, BalancedPolytope>>{
           {"l1", l1_ball()}, {"hex", skew_hexagon()}, {"linf-3d", linf_ball_3d()}}) {
    const auto r = check_addition(gauge_of(u), {1000, 6});
    require(o, r.passed && r.violations == 0 && r.samples == 1000, "gauge " + name);
    ++functionals;
  }
  for (const auto& [name, c] : suite()) {
    if (name.find("/N8") == std::string::npos) continue;
    const auto r = check_addition(DyadicPseudoSeminorm(c), {1000, 6});
    require(o, r.passed && r.violations == 0 && r.samples == 1000, "chain " + name);
    ++functionals;
  }
  if (o.pass) o.detail = std::to_string(functionals) + " functionals (gauge and chain) x 1000 quadruples, 0 violations";
  return o;
}

Outcome c7_scalar_mult() {
  Outcome o;
  const auto p = gauge_of(skew_hexagon());
  const std::vector<std::pair<Rat, Vec>> bases{{q(0), v2(q(1), q(-1, 2))},
                                               {q(2), v2(q(0), q(0))},
                                               {q(-3, 2), v2(q(1, 3), q(1, 4))},
                                               {q(0), v2(q(0), q(0))},
                                               {q(-1), v2(q(-2), q(1))}};
  std::size_t rejected = 0;
  for (const auto& [lambda, x] : bases) {
    const auto r = check_scalar_mult(p, lambda, x, {1000, 7});
    const Rat c1 = 1 + abs(lambda);
    const Rat c2 = 1 + gauge_eval(p, x).value();
    const std::string at = "(" + to_string(lambda) + ", " + to_string(x) + ")";
    require(o, r.constants.c1 == c1 && r.constants.c2 == c2, "constants at " + at);
    require(o, r.passed(), std::to_string(r.violations) + " violations at " + at);
    require(o, r.samples == 1000, "short sample count at " + at);
    rejected += r.rejected;
  }
  if (o.pass) {
    o.detail = "5 base points x 1000 in-box samples with c1 = 1+|lambda|, c2 = 1+p(x); 0 violations (" +
               std::to_string(rejected) + " out-of-box draws discarded)";
  }
  return o;
}

Outcome c8_scaled_chain_bound() {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& [name, c] : suite()) {
    if (name.find("/N4") == std::string::npos) continue;
    const DyadicPseudoSeminorm v(c);
    for (const Rat& s : {q(1, 2), q(1), q(2), q(3)}) {
      const auto r = check_scalar_mult_chain(v, s, {500, 8});
      require(o, r.passed() && r.samples == 500, name + " s=" + to_string(s));
      ++runs;
    }
    // s = 1: the scaled chain is the chain itself and the bound is balancedness.
    const DyadicPseudoSeminorm u(scale_chain(c, q(1)));
    Rng rng(80);
    for (int i = 0; i < 50; ++i) {
      const Vec x = random_chain_point(c, rng);
      const Rat t = rng.rational(q(-1), q(1));
      require(o, u(t * x) == v(t * x), name + ": scale 1 changed a value");
    }
    const auto axioms = check_axioms(v, 500, 8);
    require(o, axioms.passed(), name + ": axioms disagree with the s = 1 case");
  }
  if (o.pass) o.detail = std::to_string(runs) + " (chain, s) runs x 500 samples, 0 violations; s = 1 agrees with the axioms";
  return o;
}

Outcome c9_scaled_identity() {
  Outcome o;
  Rng rng(9);
  std::size_t runs = 0;
  for (const auto& [name, c] : suite()) {
    if (name.find("/N4") == std::string::npos) continue;
    const DyadicPseudoSeminorm v(c);
    for (const Rat& s : {q(1, 2), q(2), q(3), q(5, 3)}) {
      const DyadicPseudoSeminorm u(scale_chain(c, s));
      for (int i = 0; i < 200; ++i) {
        const Vec x = s * random_chain_point(c, rng);
        require(o, dyadic_eval(u, x) == dyadic_eval(v, (1 / s) * x), name + " s=" + to_string(s));
      }
      ++runs;
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " (chain, s) pairs x 200 points, bit-identical values";
  return o;
}

Outcome c10_domination() {
  Outcome o;
  struct Case {
    std::string name;
    BalancedPolytope disk;
    BalancedPolytope p;
    Rat hand;
  };
  const std::vector<Case> cases{
      {"A=l1, p=linf", l1_ball(), linf_ball(), q(1)},
      {"A=linf, p=l1", linf_ball(), l1_ball(), q(2)},
      {"A=linf, p=linf", linf_ball(), linf_ball(), q(1)},
      {"A=seg(3,-1), p=l1", BalancedPolytope({v2(q(3), q(-1))}), l1_ball(), q(4)},
      {"A=seg(3,-1), p=linf", BalancedPolytope({v2(q(3), q(-1))}), linf_ball(), q(3)},
      {"A=l1/2, p=l1", l1_ball().scaled(q(1, 2)), l1_ball(), q(1, 2)},
      {"A=linf-3d, p=l1-3d", linf_ball_3d(), l1_ball_3d(), q(3)}};
  for (const auto& c : cases) {
    const auto r = check_disk_domination(BoundedDisk(c.disk), {{c.name, gauge_of(c.p)}}, 500, 10);
    require(o, r.entries.size() == 1 && r.entries[0].bound == c.hand, c.name + ": l differs from the hand value");
    require(o, r.passed(), c.name + ": violations");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " (A, p) pairs x 500 samples, l matches the hand values";
  return o;
}

Outcome c11_composition() {
  Outcome o;
  Rng rng(11);
  const auto lx = generate_structure({PseudoMetric::from_gauge("L1", gauge_of(l1_ball()))});
  const auto ly = generate_structure(
      {PseudoMetric::from_gauge("L1", gauge_of(l1_ball())), PseudoMetric::from_gauge("Linf", gauge_of(linf_ball()))});
  const std::vector<BoundedDisk> disks{BoundedDisk(l1_ball(), "l1"), BoundedDisk(linf_ball(), "linf"),
                                       BoundedDisk(skew_hexagon(), "hex"),
                                       BoundedDisk(BalancedPolytope({v2(q(3), q(-1))}), "seg")};
  std::size_t checks = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m(2, zeros(2));
    for (auto& row : m) {
      for (auto& x : row) x = Rat(rng.integer(-4, 4), rng.integer(1, 5));
    }
    const auto f = MapSpec::linear(m, "f" + std::to_string(trial));
    const auto base = check_map(f, lx, ly);
    require(o, base.passed(), f.name() + " not certified");
    if (!base.passed()) continue;
    const auto born = check_bornological(f, disks, ly);
    require(o, born.passed(), f.name() + " not bornological");
    for (std::size_t i = 0; i < disks.size(); ++i) {
      const Rat l = sup_over(disks[i].disk(), gauge_of(l1_ball())).value.value();
      for (std::size_t t = 0; t < ly.base().size(); ++t) {
        const auto& cert = born.disks[i].result.certificates[t];
        require(o, cert.kind == CertificateKind::exact, f.name() + " on " + disks[i].name() + ": not exact");
        require(o, *cert.constant <= *base.certificates[t].constant * l,
                f.name() + " on " + disks[i].name() + ": constant above c*l");
        ++checks;
      }
    }
  }
  if (o.pass) o.detail = "10 maps x 4 disks x 3 target metrics: " + std::to_string(checks) + " constants <= c*l";
  return o;
}

Outcome c12_falsification() {
  Outcome o;
  const CircledChain corrupted({CircledSet(l1_ball()), CircledSet(l1_ball()), CircledSet(l1_ball().scaled(q(1, 4)))});
  const auto st = validate_chain(corrupted);
  require(o, st.kind == ValidationKind::invalid && st.failing_level == 1U && st.witness, "corrupted chain accepted");
  if (st.witness) {
    const SumExpression sum({corrupted.level(2), corrupted.level(2)});
    require(o, sum_member(sum, *st.witness) && !member(corrupted.level(1), *st.witness), "witness does not separate");
  }

  std::vector<std::pair<Vec, Vec>> table;
  for (long k = 0; k <= 1024; ++k) table.emplace_back(Vec{q(k)}, Vec{q(k * k)});
  const auto abs1 = generate_structure({PseudoMetric::from_gauge("abs", gauge_of(BalancedPolytope({Vec{q(1)}})))});
  const auto r = check_map(MapSpec::blackbox(table, "square"), abs1, abs1, {CheckMode::sampled, 500, 12});
  const auto& c = r.certificates.front();
  require(o, !r.passed() && c.witness && c.worst_ratio, "quadratic map not falsified");
  std::string ratio;
  if (c.witness) {
    const Rat j = c.witness->first[0];
    const Rat k = c.witness->second[0];
    require(o, *c.worst_ratio == ExtRat(abs(j + k)) && ExtRat(kGridMax) < *c.worst_ratio,
            "witness ratio is not |j + k| above the grid cap");
    ratio = to_string(*c.worst_ratio);
  }
  if (o.pass) {
    o.detail = "chain rejected at level 1 with witness " + to_string(*st.witness) +
               "; x^2 falsified with ratio " + ratio;
  }
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome c13_cli_determinism() {
  Outcome o;
  const std::string cli = LIPVEC_CLI_PATH;
  const std::string scenes = std::string(LIPVEC_SOURCE_DIR) + "/scenes/";
  const auto dir = std::filesystem::temp_directory_path() / "lipvec_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"psn.json", "psn eval --scene " + scenes + "planar.json --chain X --point 1/100,1/50 --point 3,3"},
      {"axioms.json", "axioms check --scene " + scenes + "spatial.json --chain spiked --samples 200 --seed 13"},
      {"sandwich.json", "sandwich check --scene " + scenes + "planar.json --chain X --samples 100 --seed 13"},
      {"struct.json", "struct contains --scene " + scenes + "planar.json --struct LX --metric pseg --mode sampled"},
      {"map.json", "map check --scene " + scenes + "square.json --map square --from I --to I --seed 13"},
      {"born.json", "born check --scene " + scenes + "planar.json --map shear --disk A --disk S --to LX "
                    "--functional L1 --mode sampled --seed 13"},
      {"ball.svg", "plot ball --scene " + scenes + "planar.json --chain X"},
      {"levels.svg", "plot ball --scene " + scenes + "planar.json --set cross --levels 1,2,3"}};
  for (const auto& [file, args] : commands) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / (std::to_string(run) + "_" + file);
      std::filesystem::remove(out);
      const int status = std::system((cli + " " + args + " --output " + out.string() + " 2>/dev/null").c_str());
      require(o, status != -1 && std::filesystem::exists(out), file + ": no output");
      const std::string content = slurp(out);
      require(o, !content.empty(), file + ": empty output");
      if (run == 0) {
        first = content;
      } else {
        require(o, content == first, file + ": outputs differ between runs");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands (6 reports, 2 SVG), byte-identical across two runs";
  return o;
}

}  // namespace
}  // namespace lipvec

int main() {
  using namespace lipvec;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"pseudo-seminorm axioms", c1_axioms},
      {"sandwich", c2_sandwich},
      {"fast path = brute force", c3_fast_vs_brute},
      {"convex-chain closed form", c4_closed_form},
      {"gauge closed forms", c5_gauge_grid},
      {"addition is Lipschitz", c6_addition},
      {"scalar multiplication constants", c7_scalar_mult},
      {"scaled-chain scalar bound", c8_scaled_chain_bound},
      {"scaled-chain identity", c9_scaled_identity},
      {"domination by the disk gauge", c10_domination},
      {"composition bound", c11_composition},
      {"falsification", c12_falsification},
      {"CLI determinism", c13_cli_determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, " [%.1f s]", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
              << elapsed << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
