#include "scene.hpp"

#include "lipvec/errors.hpp"

#include <fstream>
#include <sstream>

namespace lipvec::cli {

std::string pointer(const std::string& parent, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return parent + "/" + escaped;
}

std::string pointer(const std::string& parent, std::size_t index) { return parent + "/" + std::to_string(index); }

Rat rat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rat(Int(j.get<std::uint64_t>())) : Rat(Int(j.get<std::int64_t>()));
  }
  if (j.is_number_float()) {
    throw InputError(where, "floating-point number " + j.dump() + " is not accepted; write it as a \"p/q\" string");
  }
  if (!j.is_string()) throw InputError(where, "expected a rational string, got " + j.dump());
  const auto r = try_parse_rat(j.get<std::string>());
  if (!r) throw InputError(where, "malformed rational \"" + j.get<std::string>() + "\"");
  return *r;
}

Vec vec_from_json(const Json& j, const std::string& where, std::optional<std::size_t> dim) {
  if (!j.is_array()) throw InputError(where, "expected an array of rationals");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat_from_json(j[i], pointer(where, i)));
  if (dim && v.size() != *dim) {
    throw InputError(where, "dimension mismatch: expected " + std::to_string(*dim) + " coordinates, got " +
                                std::to_string(v.size()));
  }
  if (v.empty()) throw InputError(where, "empty vector");
  return v;
}

Json to_json(const Rat& r) { return to_string(r); }

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(to_string(c));
  return out;
}

Json to_json(const ExtRat& r) { return to_string(r); }

Json to_json(const CircledSet& s) {
  Json pieces = Json::array();
  for (const auto& p : s.pieces()) {
    Json gens = Json::array();
    for (const auto& g : p.generators()) gens.push_back(to_json(g));
    pieces.push_back(std::move(gens));
  }
  return Json{{"pieces", std::move(pieces)}};
}

namespace {

const Json& member_of(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

std::string name_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where, "expected a name, got " + j.dump());
  return j.get<std::string>();
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InputError(where, "expected a nonempty array of rows");
  Matrix m;
  for (std::size_t i = 0; i < j.size(); ++i) {
    m.push_back(vec_from_json(j[i], pointer(where, i), i == 0 ? std::nullopt : std::optional(m.front().size())));
  }
  return m;
}

template <class Map>
auto find_named(const Map& map, const std::string& name, const std::string& where, const char* what) {
  const auto it = map.find(name);
  if (it == map.end()) throw InputError(where, std::string("unknown ") + what + " \"" + name + "\"");
  return it;
}

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
}

}  // namespace

CircledSet Scene::set_from_json(const Json& j, const std::string& where) const {
  if (j.is_string()) return set(j.get<std::string>(), where);
  require_object(j, where);
  std::size_t dim = dimension_;
  if (j.contains("dimension")) {
    if (!j["dimension"].is_number_unsigned()) throw InputError(pointer(where, "dimension"), "expected a positive integer");
    dim = j["dimension"].get<std::size_t>();
  }
  std::vector<BalancedPolytope> pieces;
  auto read_piece = [&](const Json& gens, const std::string& at) {
    if (!gens.is_array() || gens.empty()) throw InputError(at, "expected a nonempty list of generators");
    std::vector<Vec> vs;
    for (std::size_t k = 0; k < gens.size(); ++k) vs.push_back(vec_from_json(gens[k], pointer(at, k), dim));
    pieces.emplace_back(std::move(vs));
  };
  if (j.contains("generators")) {
    read_piece(j["generators"], pointer(where, "generators"));
  } else {
    const Json& ps = member_of(j, "pieces", where);
    const std::string at = pointer(where, "pieces");
    if (!ps.is_array() || ps.empty()) throw InputError(at, "expected a nonempty list of pieces");
    for (std::size_t i = 0; i < ps.size(); ++i) read_piece(ps[i], pointer(at, i));
  }
  return CircledSet(std::move(pieces));
}

void Scene::build(const Json& doc) {
  require_object(doc, "");
  const Json& dim = member_of(doc, "dimension", "");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) {
    throw InputError("/dimension", "expected a positive integer");
  }
  dimension_ = dim.get<std::size_t>();

  auto section = [&](const char* key) -> const Json& {
    static const Json empty = Json::object();
    if (!doc.contains(key)) return empty;
    require_object(doc[key], pointer("", key));
    return doc[key];
  };

  for (const auto& [name, spec] : section("sets").items()) {
    const std::string at = pointer("/sets", name);
    if (spec.is_string()) throw InputError(at, "a set must be given by its generators");
    sets_.emplace(name, std::make_pair(set_from_json(spec, at), at));
  }
  for (const auto& [name, spec] : section("chains").items()) {
    require_object(spec, pointer("/chains", name));
    chain_specs_.emplace(name, Entry{spec, pointer("/chains", name)});
  }
  for (const auto& [name, spec] : section("gauges").items()) {
    require_object(spec, pointer("/gauges", name));
    gauge_specs_.emplace(name, Entry{spec, pointer("/gauges", name)});
  }
  for (const auto& [name, spec] : section("structures").items()) {
    require_object(spec, pointer("/structures", name));
    structure_specs_.emplace(name, Entry{spec, pointer("/structures", name)});
  }
  for (const auto& [name, spec] : section("maps").items()) {
    const std::string at = pointer("/maps", name);
    require_object(spec, at);
    try {
      if (spec.contains("linear")) {
        Matrix m = matrix_from_json(spec["linear"], pointer(at, "linear"));
        if (spec.contains("shift")) {
          Vec shift = vec_from_json(spec["shift"], pointer(at, "shift"), m.size());
          maps_.emplace(name, MapSpec::affine(std::move(m), std::move(shift), name));
        } else {
          maps_.emplace(name, MapSpec::linear(std::move(m), name));
        }
      } else if (spec.contains("addition") || spec.contains("scalar_mult")) {
        const char* key = spec.contains("addition") ? "addition" : "scalar_mult";
        if (!spec[key].is_number_unsigned() || spec[key].get<std::size_t>() == 0) {
          throw InputError(pointer(at, key), "expected the dimension of the space");
        }
        const std::size_t d = spec[key].get<std::size_t>();
        maps_.emplace(name, key[0] == 'a' ? MapSpec::addition(d, name) : MapSpec::scalar_mult(d, name));
      } else if (spec.contains("blackbox")) {
        const Json& table = spec["blackbox"];
        const std::string tat = pointer(at, "blackbox");
        if (!table.is_array() || table.empty()) throw InputError(tat, "expected a nonempty list of [x, f(x)] pairs");
        std::vector<std::pair<Vec, Vec>> rows;
        for (std::size_t i = 0; i < table.size(); ++i) {
          const std::string rat = pointer(tat, i);
          if (!table[i].is_array() || table[i].size() != 2) throw InputError(rat, "expected a pair [x, f(x)]");
          rows.emplace_back(
              vec_from_json(table[i][0], pointer(rat, 0), i == 0 ? std::nullopt : std::optional(rows[0].first.size())),
              vec_from_json(table[i][1], pointer(rat, 1),
                            i == 0 ? std::nullopt : std::optional(rows[0].second.size())));
        }
        maps_.emplace(name, MapSpec::blackbox(std::move(rows), name));
      } else {
        throw InputError(at, "expected one of \"linear\", \"addition\", \"scalar_mult\", \"blackbox\"");
      }
    } catch (const Error& e) {
      throw InputError(at, e.what());
    }
  }
  for (const auto& [name, spec] : section("disks").items()) {
    const std::string at = pointer("/disks", name);
    CircledSet s = spec.is_object() && spec.contains("set")
                       ? set(name_from_json(spec["set"], pointer(at, "set")), pointer(at, "set"))
                       : set_from_json(spec, at);
    if (s.pieces().size() != 1) throw InputError(at, "a disk must be a single convex piece");
    disks_.emplace(name, BoundedDisk(s.pieces().front(), name));
  }
}

Scene Scene::parse(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("byte " + std::to_string(e.byte), std::string("invalid JSON: ") + e.what());
  }
  Scene scene;
  scene.build(doc);
  return scene;
}

Scene Scene::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("--scene", "cannot read scene file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + "#" + e.location(), e.message());
  }
}

const CircledSet& Scene::set(const std::string& name, const std::string& where) const {
  return find_named(sets_, name, where, "set")->second.first;
}

const CircledChain& Scene::build_chain(const std::string& name, const std::string& where, int depth) const {
  if (const auto it = chains_.find(name); it != chains_.end()) return it->second;
  const auto& [spec, at] = find_named(chain_specs_, name, where, "chain")->second;
  if (depth > 32) throw InputError(at, "chain definitions are cyclic");
  try {
    std::optional<CircledChain> chain;
    if (spec.contains("from_convex")) {
      const std::string sat = pointer(at, "from_convex");
      const CircledSet& u = set(name_from_json(spec["from_convex"], sat), sat);
      if (u.pieces().size() != 1) throw InputError(sat, "from_convex needs a single convex piece");
      std::size_t n = default_depth;
      if (spec.contains("depth")) {
        if (!spec["depth"].is_number_unsigned()) throw InputError(pointer(at, "depth"), "expected a positive integer");
        n = spec["depth"].get<std::size_t>();
      }
      if (n == 0 || n > kMaxDepth) {
        throw InputError(pointer(at, "depth"), "depth must lie in [1, " + std::to_string(kMaxDepth) + "]");
      }
      chain = chain_from_convex(u.pieces().front(), n);
    } else if (spec.contains("levels")) {
      const Json& levels = spec["levels"];
      const std::string lat = pointer(at, "levels");
      if (!levels.is_array() || levels.empty()) throw InputError(lat, "expected a nonempty list of levels");
      if (levels.size() > kMaxDepth) throw InputError(lat, "at most " + std::to_string(kMaxDepth) + " levels");
      std::vector<CircledSet> sets;
      for (std::size_t i = 0; i < levels.size(); ++i) sets.push_back(set_from_json(levels[i], pointer(lat, i)));
      chain = CircledChain(std::move(sets));
    } else if (spec.contains("scale")) {
      const std::string sat = pointer(at, "scale");
      const CircledChain& base = build_chain(name_from_json(spec["scale"], sat), sat, depth + 1);
      const Rat s = rat_from_json(member_of(spec, "by", at), pointer(at, "by"));
      if (s <= 0) throw InputError(pointer(at, "by"), "scale factor must be positive");
      chain = scale_chain(base, s);
    } else {
      throw InputError(at, "expected one of \"from_convex\", \"levels\", \"scale\"");
    }
    if (chain->dimension() != dimension_) {
      throw InputError(at, "dimension mismatch: chain lives in dimension " + std::to_string(chain->dimension()));
    }
    return chains_.emplace(name, std::move(*chain)).first->second;
  } catch (const Error& e) {
    throw InputError(at, e.what());
  }
}

const CircledChain& Scene::chain(const std::string& name, const std::string& where) const {
  return build_chain(name, where, 0);
}

GaugeFunctional Scene::gauge(const std::string& name, const std::string& where) const {
  if (const auto it = gauge_specs_.find(name); it != gauge_specs_.end()) {
    const auto& [spec, at] = it->second;
    const std::string sat = pointer(at, "set");
    const CircledSet& s = set(name_from_json(member_of(spec, "set", at), sat), sat);
    const bool on_span = spec.contains("on_span") && spec["on_span"].is_boolean() && spec["on_span"].get<bool>();
    if (!on_span) return GaugeFunctional::of_set(s);
    if (s.pieces().size() != 1) throw InputError(sat, "a gauge on the span needs a single convex piece");
    return GaugeFunctional::on_span(s.pieces().front());
  }
  if (sets_.count(name)) return GaugeFunctional::of_set(set(name, where));
  throw InputError(where, "unknown gauge \"" + name + "\"");
}

PseudoMetric Scene::metric(const std::string& name, const std::string& where) const {
  if (const auto it = metrics_.find(name); it != metrics_.end()) return it->second;
  std::optional<PseudoMetric> m;
  if (gauge_specs_.count(name) || sets_.count(name)) {
    m = PseudoMetric::from_gauge(name, gauge(name, where));
  } else if (chain_specs_.count(name)) {
    const CircledChain c = validated(chain(name, where), validation);
    if (!c.status().valid()) {
      std::string detail = "chain \"" + name + "\" fails the chain condition";
      if (c.status().failing_level) detail += " at level " + std::to_string(*c.status().failing_level);
      if (c.status().witness) detail += ", witness " + to_string(*c.status().witness);
      throw InputError(where, detail);
    }
    m = PseudoMetric::from_chain(name, DyadicPseudoSeminorm(c, EvalStrategy::fast_path, validation.sets));
  } else {
    throw InputError(where, "unknown metric \"" + name + "\" (not a gauge, chain or set)");
  }
  return metrics_.emplace(name, *m).first->second;
}

LipschitzStructure Scene::structure(const std::string& name, const std::string& where) const {
  if (!structure_specs_.count(name) &&
      (gauge_specs_.count(name) || chain_specs_.count(name) || sets_.count(name))) {
    return generate_structure({metric(name, where)}, name);
  }
  const auto& [spec, at] = find_named(structure_specs_, name, where, "structure")->second;
  auto names = [&](const char* key) {
    const std::string kat = pointer(at, key);
    const Json& list = spec[key];
    if (!list.is_array() || list.empty()) throw InputError(kat, "expected a nonempty list of names");
    std::vector<PseudoMetric> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
      out.push_back(metric(name_from_json(list[i], pointer(kat, i)), pointer(kat, i)));
    }
    return out;
  };
  try {
    if (spec.contains("generated_by")) {
      auto family = names("generated_by");
      if (family.size() > kMaxGenerators) {
        throw InputError(pointer(at, "generated_by"),
                         "at most " + std::to_string(kMaxGenerators) + " generating metrics");
      }
      return generate_structure(family, name);
    }
    if (spec.contains("base")) return LipschitzStructure(names("base"), name);
    if (spec.contains("product")) {
      const Json& pair = spec["product"];
      const std::string pat = pointer(at, "product");
      if (!pair.is_array() || pair.size() != 2) throw InputError(pat, "expected two structure names");
      const auto lx = structure(name_from_json(pair[0], pointer(pat, 0)), pointer(pat, 0));
      const auto ly = structure(name_from_json(pair[1], pointer(pat, 1)), pointer(pat, 1));
      return product_structure(lx, ly);
    }
  } catch (const Error& e) {
    throw InputError(at, e.what());
  }
  throw InputError(at, "expected one of \"generated_by\", \"base\", \"product\"");
}

const MapSpec& Scene::map(const std::string& name, const std::string& where) const {
  return find_named(maps_, name, where, "map")->second;
}

const BoundedDisk& Scene::disk(const std::string& name, const std::string& where) const {
  return find_named(disks_, name, where, "disk")->second;
}

Json Scene::to_json() const {
  Json doc;
  doc["dimension"] = dimension_;
  Json sets = Json::object();
  for (const auto& [name, entry] : sets_) sets[name] = cli::to_json(entry.first);
  doc["sets"] = std::move(sets);

  Json chains = Json::object();
  for (const auto& [name, entry] : chain_specs_) {
    Json levels = Json::array();
    for (const auto& level : chain(name, entry.where).levels()) levels.push_back(cli::to_json(level));
    chains[name] = Json{{"levels", std::move(levels)}};
  }
  doc["chains"] = std::move(chains);

  Json gauges = Json::object();
  for (const auto& [name, entry] : gauge_specs_) gauges[name] = entry.spec;
  doc["gauges"] = std::move(gauges);
  Json structures = Json::object();
  for (const auto& [name, entry] : structure_specs_) structures[name] = entry.spec;
  doc["structures"] = std::move(structures);

  Json maps = Json::object();
  for (const auto& [name, f] : maps_) {
    Json spec;
    switch (f.kind()) {
      case MapSpec::Kind::linear:
      case MapSpec::Kind::affine: {
        Json rows = Json::array();
        for (const auto& row : *f.difference_matrix()) rows.push_back(cli::to_json(row));
        spec["linear"] = std::move(rows);
        if (f.kind() == MapSpec::Kind::affine) spec["shift"] = cli::to_json(f.shift());
        break;
      }
      case MapSpec::Kind::addition:
        spec["addition"] = f.output_dim();
        break;
      case MapSpec::Kind::scalar_mult:
        spec["scalar_mult"] = f.output_dim();
        break;
      case MapSpec::Kind::blackbox: {
        Json table = Json::array();
        for (const auto& [x, y] : f.table()) table.push_back(Json::array({cli::to_json(x), cli::to_json(y)}));
        spec["blackbox"] = std::move(table);
        break;
      }
    }
    maps[name] = std::move(spec);
  }
  doc["maps"] = std::move(maps);

  Json disks = Json::object();
  for (const auto& [name, a] : disks_) disks[name] = cli::to_json(CircledSet(a.disk()));
  doc["disks"] = std::move(disks);
  return doc;
}

}  // namespace lipvec::cli
