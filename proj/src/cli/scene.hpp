#pragma once

#include "lipvec/bornology.hpp"
#include "lipvec/lipstruct.hpp"
#include "lipvec/metrization.hpp"
#include "lipvec/veccheck.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lipvec::cli {

using Json = nlohmann::ordered_json;

/// Bad input, with where it happened: a JSON pointer into the scene or the
/// command-line flag.
class InputError : public std::runtime_error {
 public:
  InputError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)), message_(message) {}
  const std::string& location() const { return location_; }
  const std::string& message() const { return message_; }

 private:
  std::string location_;
  std::string message_;
};

/// "p/q" strings or JSON integers; floats are rejected.
Rat rat_from_json(const Json& j, const std::string& where);
Vec vec_from_json(const Json& j, const std::string& where, std::optional<std::size_t> dim = std::nullopt);
Json to_json(const Rat& r);
Json to_json(const Vec& v);
Json to_json(const ExtRat& r);
Json to_json(const CircledSet& s);

std::string pointer(const std::string& parent, const std::string& key);
std::string pointer(const std::string& parent, std::size_t index);

/// Named objects of a scene file. Chains built from the scene start
/// unvalidated; metrics over chains validate on first use with `validation`.
class Scene {
 public:
  static Scene parse(std::string_view text);
  static Scene load(const std::string& path);

  std::size_t dimension() const { return dimension_; }

  const CircledSet& set(const std::string& name, const std::string& where) const;
  const CircledChain& chain(const std::string& name, const std::string& where) const;
  /// Named gauges first, then the gauge of a named set.
  GaugeFunctional gauge(const std::string& name, const std::string& where) const;
  /// Gauge, chain or set by name. The same name always yields the same
  /// metric object.
  PseudoMetric metric(const std::string& name, const std::string& where) const;
  /// A bare metric name stands for the structure it generates.
  LipschitzStructure structure(const std::string& name, const std::string& where) const;
  const MapSpec& map(const std::string& name, const std::string& where) const;
  const BoundedDisk& disk(const std::string& name, const std::string& where) const;

  ValidationOptions validation;
  std::size_t default_depth = kDefaultDepth;

  /// Normalized document: every rational as a canonical string, chains as
  /// explicit level lists.
  Json to_json() const;

 private:
  struct Entry {
    Json spec;
    std::string where;
  };

  void build(const Json& doc);
  const CircledChain& build_chain(const std::string& name, const std::string& where, int depth) const;
  CircledSet set_from_json(const Json& j, const std::string& where) const;

  std::size_t dimension_ = 0;
  std::map<std::string, std::pair<CircledSet, std::string>> sets_;
  std::map<std::string, Entry> chain_specs_;
  std::map<std::string, Entry> gauge_specs_;
  std::map<std::string, Entry> structure_specs_;
  std::map<std::string, MapSpec> maps_;
  std::map<std::string, BoundedDisk> disks_;
  mutable std::map<std::string, CircledChain> chains_;
  mutable std::map<std::string, PseudoMetric> metrics_;
};

}  // namespace lipvec::cli
