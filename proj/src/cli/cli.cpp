#include "cli.hpp"

#include "scene.hpp"
#include "svg.hpp"

#include "lipvec/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

namespace lipvec::cli {

namespace {

struct Globals {
  std::string scene;
  std::string output;
  std::uint64_t seed = 0;
  std::size_t samples = 256;
  std::size_t depth = kDefaultDepth;
  std::size_t cap = SetOptions{}.combination_cap;
  bool timing = false;
};

struct Outcome {
  Outcome() = default;
  Outcome(Json r, bool p = true) : results(std::move(r)), passed(p) {}  // NOLINT(implicit)

  Json results;
  bool passed = true;
  /// Set by commands whose product is a document rather than a report.
  std::optional<std::string> document;
};

struct Context {
  const Globals& g;
  Scene scene;
};

Vec parse_point(const std::string& text, const std::string& where, std::size_t dim) {
  Vec v;
  try {
    v = parse_vec(text);
  } catch (const InvalidArgument& e) {
    throw InputError(where, std::string(e.what()) + " in \"" + text + "\"");
  }
  if (v.size() != dim) {
    throw InputError(where, "dimension mismatch: \"" + text + "\" has " + std::to_string(v.size()) +
                                " coordinates, expected " + std::to_string(dim));
  }
  return v;
}

template <class T>
Json opt_json(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

Json pair_json(const std::optional<std::pair<Vec, Vec>>& p) {
  return p ? Json::array({to_json(p->first), to_json(p->second)}) : Json(nullptr);
}

Json violations_json(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json points = Json::array();
    for (const auto& p : v.points) points.push_back(to_json(p));
    out.push_back({{"kind", v.kind}, {"points", points}, {"scalar", opt_json(v.scalar)}, {"detail", v.detail}});
  }
  return out;
}

Json certificate_json(const LipschitzCertificate& c) {
  return {{"target", c.target},        {"source", c.source},         {"passed", c.passed},
          {"certificate", to_string(c.kind)}, {"constant", opt_json(c.constant)}, {"grid", opt_json(c.grid)},
          {"samples", c.samples},      {"seed", c.seed},             {"violations", c.violations},
          {"witness", pair_json(c.witness)},  {"worst_ratio", opt_json(c.worst_ratio)}};
}

DyadicPseudoSeminorm chain_functional(const Context& ctx, const std::string& name) {
  const PseudoMetric m = ctx.scene.metric(name, "--chain");
  if (m.psn() == nullptr) throw InputError("--chain", "\"" + name + "\" is not a chain");
  return *m.psn();
}

Outcome gauge_eval_cmd(Context& ctx, const std::string& name, const std::vector<std::string>& points) {
  const GaugeFunctional p = ctx.scene.gauge(name, "--gauge");
  Json values = Json::array();
  for (const auto& text : points) {
    const Vec x = parse_point(text, "--point", p.dimension());
    ExtRat value;
    try {
      value = gauge_eval(p, x);
    } catch (const OutsideSubspace&) {
      throw InputError("--point", to_string(x) + " lies outside the span of gauge \"" + name + "\"");
    }
    values.push_back({{"point", to_json(x)}, {"value", to_json(value)}});
  }
  return {Json{{"gauge", name}, {"values", values}}};
}

Outcome psn_eval_cmd(Context& ctx, const std::string& name, const std::vector<std::string>& points,
                     const std::string& strategy) {
  const auto psn = chain_functional(ctx, name).with_strategy(strategy == "brute" ? EvalStrategy::brute_force
                                                                                 : EvalStrategy::fast_path);
  Json values = Json::array();
  for (const auto& text : points) {
    const Vec x = parse_point(text, "--point", psn.dimension());
    const DyadicValue v = dyadic_eval(psn, x);
    Json indices = nullptr;
    if (v.indices) indices = *v.indices;
    values.push_back({{"point", to_json(x)}, {"value", to_json(v.value)}, {"indices", indices}});
  }
  return {Json{{"chain", name}, {"depth", psn.depth()}, {"strategy", strategy}, {"values", values}}};
}

Outcome chain_validate_cmd(Context& ctx, const std::string& name) {
  const CircledChain& c = ctx.scene.chain(name, "--chain");
  const ChainValidation st = validate_chain(c, ctx.scene.validation);
  return {Json{{"chain", name},
               {"depth", c.depth()},
               {"status", to_string(st.kind)},
               {"failing_level", st.failing_level ? Json(*st.failing_level) : Json(nullptr)},
               {"witness", opt_json(st.witness)}},
          st.valid()};
}

Outcome chain_from_convex_cmd(Context& ctx, const std::string& set_name, std::string name) {
  const CircledSet& u = ctx.scene.set(set_name, "--set");
  if (!u.is_convex_piece()) throw InputError("--set", "\"" + set_name + "\" is not a single convex piece");
  if (name.empty()) name = set_name + "_chain";
  const CircledChain c = chain_from_convex(u.pieces().front(), ctx.g.depth);
  Json levels = Json::array();
  for (const auto& level : c.levels()) levels.push_back(to_json(level));
  return {Json{{"name", name},
               {"depth", c.depth()},
               {"status", to_string(c.status().kind)},
               {"scene_fragment", {{"chains", {{name, {{"levels", levels}}}}}}}}};
}

Outcome sandwich_cmd(Context& ctx, const std::string& name, std::optional<std::size_t> level) {
  const auto psn = chain_functional(ctx, name);
  if (level && (*level == 0 || *level > psn.depth())) {
    throw InputError("--level", "level must lie in [1, " + std::to_string(psn.depth()) + "]");
  }
  Outcome o{Json{{"chain", name}, {"depth", psn.depth()}, {"levels", Json::array()}}};
  for (std::size_t n = level.value_or(1); n <= level.value_or(psn.depth()); ++n) {
    const auto r = check_sandwich(psn, n, ctx.g.samples, ctx.g.seed);
    o.passed = o.passed && r.passed();
    o.results["levels"].push_back({{"level", n},
                                   {"passed", r.passed()},
                                   {"inner_checks", r.inner_checks},
                                   {"outer_checks", r.outer_checks},
                                   {"violations", violations_json(r.violations)}});
  }
  return o;
}

Outcome axioms_cmd(Context& ctx, const std::string& name) {
  const auto psn = chain_functional(ctx, name);
  const auto r = check_axioms(psn, ctx.g.samples, ctx.g.seed);
  return {Json{{"chain", name},
               {"zero_value", to_json(r.zero_value)},
               {"balanced_checks", r.balanced_checks},
               {"subadditive_checks", r.subadditive_checks},
               {"min_balanced_slack", opt_json(r.min_balanced_slack)},
               {"min_subadditive_slack", opt_json(r.min_subadditive_slack)},
               {"violations", violations_json(r.violations)}},
          r.passed()};
}

ContainmentMode containment_mode(const std::string& mode) {
  return mode == "sampled" ? ContainmentMode::sampled : ContainmentMode::exact;
}

Outcome struct_contains_cmd(Context& ctx, const std::string& sname, const std::vector<std::string>& metrics,
                            const std::optional<std::string>& scale, const std::string& mode) {
  const LipschitzStructure l = ctx.scene.structure(sname, "--struct");
  std::optional<Rat> factor;
  if (scale) {
    factor = try_parse_rat(*scale);
    if (!factor || *factor <= 0) throw InputError("--scale", "expected a positive rational, got \"" + *scale + "\"");
  }
  Outcome o{Json{{"structure", sname}, {"mode", mode}, {"metrics", Json::array()}}};
  for (const auto& name : metrics) {
    PseudoMetric d = ctx.scene.metric(name, "--metric");
    if (factor) d = PseudoMetric::scaled(*factor, d);
    if (d.dimension() != l.dimension()) {
      throw InputError("--metric", "dimension mismatch: \"" + name + "\" lives in dimension " +
                                       std::to_string(d.dimension()) + ", the structure in " +
                                       std::to_string(l.dimension()));
    }
    const auto v = structure_contains(l, d, containment_mode(mode), {ctx.g.samples, ctx.g.seed});
    o.passed = o.passed && v.contained;
    o.results["metrics"].push_back(
        {{"metric", d.name()},
         {"contained", v.contained},
         {"certificate", to_string(v.kind)},
         {"alpha", opt_json(v.alpha)},
         {"base_metric", v.base_index ? Json(l.base()[*v.base_index].name()) : Json(nullptr)},
         {"witness", opt_json(v.witness)},
         {"witness_pair", pair_json(v.witness_pair)},
         {"samples", v.samples}});
  }
  return o;
}

MapCheckOptions map_options(const Context& ctx, const MapSpec& f, const std::string& mode) {
  MapCheckOptions opts;
  opts.samples = ctx.g.samples;
  opts.seed = ctx.g.seed;
  const bool sampled = mode == "sampled" || (mode == "auto" && f.kind() == MapSpec::Kind::blackbox);
  if (!sampled && f.kind() == MapSpec::Kind::blackbox) {
    throw InputError("--mode", "blackbox map \"" + f.name() + "\" can only be checked in sampled mode");
  }
  opts.mode = sampled ? CheckMode::sampled : CheckMode::exact;
  return opts;
}

Outcome map_check_cmd(Context& ctx, const std::string& fname, const std::string& from, const std::string& to,
                      const std::string& mode) {
  const MapSpec& f = ctx.scene.map(fname, "--map");
  const auto lx = ctx.scene.structure(from, "--from");
  const auto ly = ctx.scene.structure(to, "--to");
  if (f.input_dim() != lx.dimension()) {
    throw InputError("--from", "dimension mismatch: map \"" + fname + "\" takes dimension " +
                                   std::to_string(f.input_dim()) + ", \"" + from + "\" has " +
                                   std::to_string(lx.dimension()));
  }
  if (f.output_dim() != ly.dimension()) {
    throw InputError("--to", "dimension mismatch: map \"" + fname + "\" returns dimension " +
                                 std::to_string(f.output_dim()) + ", \"" + to + "\" has " +
                                 std::to_string(ly.dimension()));
  }
  const auto r = check_map(f, lx, ly, map_options(ctx, f, mode));
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_json(c));
  return {Json{{"map", fname}, {"from", from}, {"to", to}, {"certificates", certs}}, r.passed()};
}

Outcome born_check_cmd(Context& ctx, const std::string& fname, const std::vector<std::string>& disk_names,
                       const std::string& to, const std::vector<std::string>& functionals, const std::string& mode) {
  const MapSpec& f = ctx.scene.map(fname, "--map");
  const auto ly = ctx.scene.structure(to, "--to");
  std::vector<BoundedDisk> disks;
  for (const auto& name : disk_names) {
    disks.push_back(ctx.scene.disk(name, "--disk"));
    if (disks.back().dimension() != f.input_dim()) {
      throw InputError("--disk", "dimension mismatch: disk \"" + name + "\" has dimension " +
                                     std::to_string(disks.back().dimension()));
    }
  }
  if (f.output_dim() != ly.dimension()) {
    throw InputError("--to", "dimension mismatch: \"" + to + "\" has dimension " + std::to_string(ly.dimension()));
  }
  std::vector<std::pair<std::string, GaugeFunctional>> family;
  for (const auto& name : functionals) {
    family.emplace_back(name, ctx.scene.gauge(name, "--functional"));
    if (!family.back().second.is_convex()) {
      throw InputError("--functional", "\"" + name + "\" is not a convex gauge");
    }
    if (family.back().second.dimension() != f.input_dim()) {
      throw InputError("--functional", "dimension mismatch for \"" + name + "\"");
    }
  }
  const auto born = check_bornological(f, disks, ly, map_options(ctx, f, mode));
  Outcome o{Json{{"map", fname}, {"to", to}, {"disks", Json::array()}}, born.passed()};
  for (std::size_t i = 0; i < disks.size(); ++i) {
    Json certs = Json::array();
    for (const auto& c : born.disks[i].result.certificates) certs.push_back(certificate_json(c));
    Json entry{{"disk", disks[i].name()}, {"passed", born.disks[i].result.passed()}, {"certificates", certs}};
    if (!family.empty()) {
      Json bounds = Json::array();
      DiskDominationReport r;
      try {
        r = check_disk_domination(disks[i], family, ctx.g.samples, ctx.g.seed);
      } catch (const InfiniteValue& e) {
        throw InputError("--functional", e.what());
      }
      o.passed = o.passed && r.passed();
      for (const auto& e : r.entries) {
        bounds.push_back({{"functional", e.functional},
                          {"bound", to_json(e.bound)},
                          {"passed", e.passed()},
                          {"samples", e.samples},
                          {"violations", e.violations},
                          {"equalities", e.equalities},
                          {"min_slack", opt_json(e.min_slack)},
                          {"first_violation", opt_json(e.first_violation)}});
      }
      entry["domination"] = std::move(bounds);
    }
    o.results["disks"].push_back(std::move(entry));
  }
  return o;
}

Outcome plot_cmd(Context& ctx, const std::string& set_name, const std::string& gauge_name,
                 const std::string& chain_name, const std::vector<std::size_t>& levels) {
  std::vector<PlotLayer> layers;
  if (!chain_name.empty()) {
    const CircledChain& c = ctx.scene.chain(chain_name, "--chain");
    std::vector<std::size_t> ns = levels;
    if (ns.empty()) {
      for (std::size_t n = 1; n <= c.depth(); ++n) ns.push_back(n);
    }
    for (const auto n : ns) {
      if (n == 0 || n > c.depth()) {
        throw InputError("--levels", "level must lie in [1, " + std::to_string(c.depth()) + "]");
      }
      layers.push_back({chain_name + " V_" + std::to_string(n), c.level(n)});
    }
  } else {
    const bool by_set = !set_name.empty();
    const std::string name = by_set ? set_name : gauge_name;
    const CircledSet base = by_set ? ctx.scene.set(name, "--set") : ctx.scene.gauge(name, "--gauge").base();
    layers.push_back({name, base});
    for (const auto n : levels) {
      if (n > kMaxDepth) throw InputError("--levels", "level must lie in [0, " + std::to_string(kMaxDepth) + "]");
      layers.push_back({"2^-" + std::to_string(n) + " " + name, scale(base, Rat(1, Int(1) << n))});
    }
  }
  const std::string title = layers.front().label;
  if (ctx.scene.dimension() != 2 || layers.front().set.dimension() != 2) {
    throw InputError(set_name.empty() ? (gauge_name.empty() ? "--chain" : "--gauge") : "--set",
                     "plotting needs dimension 2");
  }
  Outcome o;
  o.document = render_svg(layers, title);
  return o;
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("--output", "cannot write " + path);
    f << content;
    if (!f.flush()) throw InputError("--output", "cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("--output", "cannot write " + path + ": " + ec.message());
}

Json echo_options(const CLI::App& app) {
  Json args = Json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "output" || name == "timing" || name == "help") continue;
    const auto& res = opt->results();
    if (opt->get_items_expected_max() > 1) {
      args[name] = res;
    } else {
      args[name] = res.empty() ? std::string() : res.back();
    }
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with gauges, dyadic pseudo-seminorms and Lipschitz structures.", "lipvec"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--scene", g.scene, "Scene file (JSON)");
  app.add_option("--seed", g.seed, "Seed for every sampled check")->capture_default_str();
  app.add_option("--samples", g.samples, "Samples per sampled check")->capture_default_str();
  app.add_option("--depth", g.depth, "Depth of from-convex chains without an explicit depth")->capture_default_str();
  app.add_option("--cap", g.cap, "Cap on piece combinations in Minkowski-sum queries")->capture_default_str();
  app.add_option("--output", g.output, "Write the report (or SVG) here instead of stdout");
  app.add_flag("--timing", g.timing, "Add wall-clock timing to the report");

  std::string name, set_name, gauge_name, chain_name, struct_name, map_name, from, to;
  std::string strategy = "fast", mode = "exact", map_mode = "auto";
  std::vector<std::string> points, metrics, disks, functionals;
  std::optional<std::string> scale;
  std::optional<std::size_t> level;
  std::vector<std::size_t> levels;
  std::function<Outcome(Context&)> action;
  std::string command;

  auto group = [&](const char* gname, const char* desc) {
    auto* sub = app.add_subcommand(gname, desc);
    sub->require_subcommand(1);
    sub->fallthrough();
    return sub;
  };
  auto leaf = [&](CLI::App* parent, const char* lname, const char* desc, std::function<Outcome(Context&)> fn) {
    auto* sub = parent->add_subcommand(lname, desc);
    sub->fallthrough();
    sub->callback([&, fn, sub] {
      command = sub->get_parent()->get_name() + " " + sub->get_name();
      action = fn;
    });
    return sub;
  };

  auto* gauge = group("gauge", "Minkowski functionals");
  auto* ge = leaf(gauge, "eval", "Evaluate a gauge at points",
                  [&](Context& c) { return gauge_eval_cmd(c, gauge_name, points); });
  ge->add_option("--gauge", gauge_name, "Gauge or set name")->required();
  ge->add_option("--point", points, "Point as \"p/q,p/q,...\"")->required();

  auto* psn = group("psn", "Dyadic pseudo-seminorms");
  auto* pe = leaf(psn, "eval", "Evaluate the dyadic functional of a chain",
                  [&](Context& c) { return psn_eval_cmd(c, chain_name, points, strategy); });
  pe->add_option("--chain", chain_name, "Chain name")->required();
  pe->add_option("--point", points, "Point as \"p/q,p/q,...\"")->required();
  pe->add_option("--strategy", strategy, "fast or brute")->check(CLI::IsMember({"fast", "brute"}));

  auto* chain = group("chain", "Chains of circled sets");
  leaf(chain, "validate", "Check V_{n+1} + V_{n+1} in V_n", [&](Context& c) { return chain_validate_cmd(c, chain_name); })
      ->add_option("--chain", chain_name, "Chain name")
      ->required();
  auto* cf = leaf(chain, "from-convex", "Build the chain 2^-n U of a convex set",
                  [&](Context& c) { return chain_from_convex_cmd(c, set_name, name); });
  cf->add_option("--set", set_name, "Convex set name")->required();
  cf->add_option("--name", name, "Name of the new chain");

  auto* sandwich = group("sandwich", "Level sets against chain levels");
  auto* sc = leaf(sandwich, "check", "Check {|x| < 2^-n} in V_n in {|x| <= 2^-n}",
                  [&](Context& c) { return sandwich_cmd(c, chain_name, level); });
  sc->add_option("--chain", chain_name, "Chain name")->required();
  sc->add_option("--level", level, "Single level n (default: every level)");

  auto* axioms = group("axioms", "Pseudo-seminorm axioms");
  leaf(axioms, "check", "Check balancedness, subadditivity and the value at 0",
       [&](Context& c) { return axioms_cmd(c, chain_name); })
      ->add_option("--chain", chain_name, "Chain name")
      ->required();

  auto* st = group("struct", "Lipschitz structures");
  auto* sct = leaf(st, "contains", "Decide membership of metrics in a structure",
                   [&](Context& c) { return struct_contains_cmd(c, struct_name, metrics, scale, mode); });
  sct->add_option("--struct", struct_name, "Structure name")->required();
  sct->add_option("--metric", metrics, "Metric names")->required();
  sct->add_option("--scale", scale, "Positive factor applied to every metric");
  sct->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));

  auto* mp = group("map", "Lipschitz maps");
  auto* mc = leaf(mp, "check", "Certify or falsify a map between structures",
                  [&](Context& c) { return map_check_cmd(c, map_name, from, to, map_mode); });
  mc->add_option("--map", map_name, "Map name")->required();
  mc->add_option("--from", from, "Source structure")->required();
  mc->add_option("--to", to, "Target structure")->required();
  mc->add_option("--mode", map_mode, "exact, sampled or auto")->check(CLI::IsMember({"exact", "sampled", "auto"}));

  auto* born = group("born", "Bornological maps");
  auto* bc = leaf(born, "check", "Check a map from (E_A, p_A) for every disk A",
                  [&](Context& c) { return born_check_cmd(c, map_name, disks, to, functionals, map_mode); });
  bc->add_option("--map", map_name, "Map name")->required();
  bc->add_option("--disk", disks, "Disk names")->required();
  bc->add_option("--to", to, "Target structure")->required();
  bc->add_option("--functional", functionals, "Convex gauges p to bound by sup p(A) p_A");
  bc->add_option("--mode", map_mode, "exact, sampled or auto")->check(CLI::IsMember({"exact", "sampled", "auto"}));

  auto* plot = group("plot", "SVG figures");
  auto* pb = leaf(plot, "ball", "Draw a set, a gauge ball or chain levels",
                  [&](Context& c) { return plot_cmd(c, set_name, gauge_name, chain_name, levels); });
  auto* ps = pb->add_option("--set", set_name, "Set name");
  auto* pg = pb->add_option("--gauge", gauge_name, "Gauge name");
  auto* pc = pb->add_option("--chain", chain_name, "Chain name");
  ps->excludes(pg)->excludes(pc);
  pg->excludes(pc);
  pb->add_option("--levels", levels, "Dyadic levels n to overlay")->delimiter(',');

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "lipvec: " << e.what() << "\n";
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report;
  report["command"] = command;
  Json args = echo_options(app);
  for (const CLI::App* sub : app.get_subcommands()) {
    for (const CLI::App* l : sub->get_subcommands()) args.update(echo_options(*l));
  }
  report["args"] = std::move(args);
  report["seed"] = g.seed;
  report["samples"] = g.samples;

  int code = kPass;
  std::optional<std::string> document;
  try {
    if (g.scene.empty()) throw InputError("--scene", "a scene file is required");
    if (g.depth == 0 || g.depth > kMaxDepth) {
      throw InputError("--depth", "depth must lie in [1, " + std::to_string(kMaxDepth) + "]");
    }
    if (g.cap == 0) throw InputError("--cap", "the combination cap must be positive");
    if (g.samples == 0) throw InputError("--samples", "at least one sample is needed");
    Context ctx{g, Scene::load(g.scene)};
    ctx.scene.default_depth = g.depth;
    ctx.scene.validation.samples = g.samples;
    ctx.scene.validation.seed = g.seed;
    ctx.scene.validation.sets.combination_cap = g.cap;
    Outcome o = action(ctx);
    if (o.document) {
      document = std::move(o.document);
    } else {
      code = o.passed ? kPass : kFalsified;
      report["results"] = std::move(o.results);
      report["verdict"] = o.passed ? "pass" : "falsified";
    }
  } catch (const InputError& e) {
    code = kInputError;
    report["error"] = {{"location", e.location()}, {"message", e.message()}};
    report["verdict"] = "input_error";
    err << "lipvec: " << e.what() << "\n";
  } catch (const CombinationCapExceeded& e) {
    code = kInputError;
    report["error"] = {{"location", "--cap"}, {"message", e.what()}};
    report["verdict"] = "input_error";
    err << "lipvec: --cap: " << e.what() << "\n";
  } catch (const Error& e) {
    code = kInputError;
    report["error"] = {{"location", command}, {"message", e.what()}};
    report["verdict"] = "input_error";
    err << "lipvec: " << command << ": " << e.what() << "\n";
  }
  report["exit_code"] = code;
  if (g.timing) {
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  const std::string content = document ? *document : report.dump(2) + "\n";
  try {
    if (g.output.empty()) {
      out << content;
    } else {
      write_atomically(g.output, content);
    }
  } catch (const InputError& e) {
    err << "lipvec: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace lipvec::cli
