#include "cli.hpp"

#include "lipvec/bornology.hpp"
#include "lipvec/errors.hpp"
#include "lipvec/gauge.hpp"
#include "lipvec/lipstruct.hpp"
#include "lipvec/metrization.hpp"
#include "lipvec/veccheck.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <sstream>

namespace py = pybind11;
using namespace lipvec;

namespace {

// Rationals cross the boundary as fractions.Fraction; ints and "p/q" strings
// are accepted on the way in, floats are not.
Rat to_rat(const py::handle& obj) {
  if (py::isinstance<py::float_>(obj)) throw py::type_error("floats are not accepted; use Fraction or \"p/q\"");
  if (py::isinstance<py::bool_>(obj)) throw py::type_error("expected a rational, got bool");
  const auto r = try_parse_rat(py::str(obj).cast<std::string>());
  if (!r) throw py::value_error("not a rational: " + py::repr(obj).cast<std::string>());
  return *r;
}

py::object from_rat(const Rat& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(r));
}

py::object from_ext(const ExtRat& r) {
  return r.is_finite() ? from_rat(r.value()) : py::object(py::float_(std::numeric_limits<double>::infinity()));
}

Vec to_vec(const py::iterable& xs) {
  Vec v;
  for (const auto& x : xs) v.push_back(to_rat(x));
  return v;
}

py::list from_vec(const Vec& v) {
  py::list out;
  for (const auto& c : v) out.append(from_rat(c));
  return out;
}

std::vector<Vec> to_vecs(const py::iterable& xs) {
  std::vector<Vec> out;
  for (const auto& x : xs) out.push_back(to_vec(py::reinterpret_borrow<py::iterable>(x)));
  return out;
}

py::object maybe_vec(const std::optional<Vec>& v) { return v ? py::object(from_vec(*v)) : py::none(); }

py::object maybe_pair(const std::optional<std::pair<Vec, Vec>>& p) {
  return p ? py::object(py::make_tuple(from_vec(p->first), from_vec(p->second))) : py::none();
}

py::dict certificate_dict(const LipschitzCertificate& c) {
  py::dict d;
  d["target"] = c.target;
  d["source"] = c.source;
  d["passed"] = c.passed;
  d["kind"] = to_string(c.kind);
  d["constant"] = c.constant ? from_rat(*c.constant) : py::none();
  d["grid"] = c.grid ? from_rat(*c.grid) : py::none();
  d["witness"] = maybe_pair(c.witness);
  d["worst_ratio"] = c.worst_ratio ? from_ext(*c.worst_ratio) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact gauges, dyadic pseudo-seminorms and Lipschitz structures.";

  py::register_exception<Error>(m, "LipvecError", PyExc_ValueError);

  py::class_<BalancedPolytope>(m, "BalancedPolytope")
      .def(py::init([](const py::iterable& gens) { return BalancedPolytope(to_vecs(gens)); }), py::arg("generators"))
      .def_property_readonly("dimension", &BalancedPolytope::dimension)
      .def_property_readonly("generators", [](const BalancedPolytope& p) {
        py::list out;
        for (const auto& g : p.generators()) out.append(from_vec(g));
        return out;
      })
      .def("scaled", [](const BalancedPolytope& p, const py::object& s) { return p.scaled(to_rat(s)); })
      .def("__contains__", [](const BalancedPolytope& p, const py::iterable& x) { return member(p, to_vec(x)); });

  py::class_<CircledSet>(m, "CircledSet")
      .def(py::init<std::vector<BalancedPolytope>>(), py::arg("pieces"))
      .def(py::init<BalancedPolytope>(), py::arg("piece"))
      .def_property_readonly("dimension", &CircledSet::dimension)
      .def_property_readonly("pieces", &CircledSet::pieces)
      .def("__contains__", [](const CircledSet& s, const py::iterable& x) { return member(s, to_vec(x)); });
  py::implicitly_convertible<BalancedPolytope, CircledSet>();

  py::class_<GaugeFunctional>(m, "Gauge")
      .def_static("of_set", &GaugeFunctional::of_set, py::arg("base"))
      .def_static("on_span", &GaugeFunctional::on_span, py::arg("disk"))
      .def_property_readonly("dimension", &GaugeFunctional::dimension)
      .def("__call__", [](const GaugeFunctional& g, const py::iterable& x) { return from_ext(gauge_eval(g, to_vec(x))); });

  m.def(
      "sup_over",
      [](const BalancedPolytope& disk, const GaugeFunctional& p) { return from_ext(sup_over(disk, p).value); },
      py::arg("disk"), py::arg("p"));

  py::class_<CircledChain>(m, "Chain")
      .def(py::init<std::vector<CircledSet>>(), py::arg("levels"))
      .def_property_readonly("depth", &CircledChain::depth)
      .def_property_readonly("status", [](const CircledChain& c) { return to_string(c.status().kind); })
      .def("level", &CircledChain::level, py::arg("n"));

  m.def("chain_from_convex", &chain_from_convex, py::arg("unit"), py::arg("depth"));
  m.def("scale_chain", [](const CircledChain& c, const py::object& s) { return scale_chain(c, to_rat(s)); });
  m.def("validated", [](const CircledChain& c) { return validated(c); }, py::arg("chain"));
  m.def(
      "validate_chain",
      [](const CircledChain& c) {
        const auto st = validate_chain(c);
        py::dict d;
        d["status"] = to_string(st.kind);
        d["failing_level"] = st.failing_level ? py::object(py::int_(*st.failing_level)) : py::none();
        d["witness"] = maybe_vec(st.witness);
        return d;
      },
      py::arg("chain"));

  py::class_<DyadicPseudoSeminorm>(m, "DyadicPseudoSeminorm")
      .def(py::init([](const CircledChain& c, const std::string& strategy) {
             return DyadicPseudoSeminorm(c, strategy == "brute" ? EvalStrategy::brute_force : EvalStrategy::fast_path);
           }),
           py::arg("chain"), py::arg("strategy") = "fast")
      .def_property_readonly("depth", &DyadicPseudoSeminorm::depth)
      .def("__call__", [](const DyadicPseudoSeminorm& p, const py::iterable& x) { return from_rat(p(to_vec(x)).value); })
      .def("evaluate", [](const DyadicPseudoSeminorm& p, const py::iterable& x) {
        const auto v = p(to_vec(x));
        return py::make_tuple(from_rat(v.value), v.indices ? py::object(py::cast(*v.indices)) : py::none());
      });

  m.def(
      "check_axioms",
      [](const DyadicPseudoSeminorm& p, std::size_t samples, std::uint64_t seed) {
        const auto r = check_axioms(p, samples, seed);
        py::dict d;
        d["passed"] = r.passed();
        d["violations"] = r.violations.size();
        d["zero_value"] = from_rat(r.zero_value);
        return d;
      },
      py::arg("psn"), py::arg("samples") = 256, py::arg("seed") = 0);
  m.def(
      "check_sandwich",
      [](const DyadicPseudoSeminorm& p, std::size_t level, std::size_t samples, std::uint64_t seed) {
        return check_sandwich(p, level, samples, seed).passed();
      },
      py::arg("psn"), py::arg("level"), py::arg("samples") = 256, py::arg("seed") = 0);

  py::class_<PseudoMetric>(m, "PseudoMetric")
      .def_static("from_gauge", &PseudoMetric::from_gauge, py::arg("name"), py::arg("gauge"))
      .def_static("from_chain", &PseudoMetric::from_chain, py::arg("name"), py::arg("psn"))
      .def_static("sup", &PseudoMetric::sup, py::arg("parts"))
      .def_static("sum", &PseudoMetric::sum, py::arg("parts"))
      .def_static(
          "scaled", [](const py::object& c, const PseudoMetric& d) { return PseudoMetric::scaled(to_rat(c), d); },
          py::arg("factor"), py::arg("d"))
      .def_property_readonly("name", &PseudoMetric::name)
      .def("__call__", [](const PseudoMetric& d, const py::iterable& x1, const py::iterable& x2) {
        return from_ext(d(to_vec(x1), to_vec(x2)));
      });

  py::class_<LipschitzStructure>(m, "LipschitzStructure")
      .def(py::init<std::vector<PseudoMetric>, std::string>(), py::arg("base"), py::arg("name") = "")
      .def_property_readonly("base", &LipschitzStructure::base)
      .def_property_readonly("name", &LipschitzStructure::name);
  m.def("generate_structure", &generate_structure, py::arg("family"), py::arg("name") = "");
  m.def("product_structure", &product_structure, py::arg("lx"), py::arg("ly"));
  m.def(
      "structure_contains",
      [](const LipschitzStructure& l, const PseudoMetric& d, const std::string& mode, std::size_t samples,
         std::uint64_t seed) {
        const auto v = structure_contains(l, d, mode == "sampled" ? ContainmentMode::sampled : ContainmentMode::exact,
                                          {samples, seed});
        py::dict out;
        out["contained"] = v.contained;
        out["kind"] = to_string(v.kind);
        out["alpha"] = v.alpha ? from_rat(*v.alpha) : py::none();
        out["base_index"] = v.base_index ? py::object(py::int_(*v.base_index)) : py::none();
        out["witness"] = maybe_vec(v.witness);
        return out;
      },
      py::arg("structure"), py::arg("d"), py::arg("mode") = "exact", py::arg("samples") = 256, py::arg("seed") = 0);

  py::class_<MapSpec>(m, "MapSpec")
      .def_static(
          "linear", [](const py::iterable& rows, const std::string& name) { return MapSpec::linear(to_vecs(rows), name); },
          py::arg("matrix"), py::arg("name") = "")
      .def_static("addition", &MapSpec::addition, py::arg("dim"), py::arg("name") = "")
      .def_static(
          "blackbox",
          [](const py::iterable& table, const std::string& name) {
            std::vector<std::pair<Vec, Vec>> rows;
            for (const auto& row : table) {
              const auto pair = row.cast<py::tuple>();
              rows.emplace_back(to_vec(pair[0]), to_vec(pair[1]));
            }
            return MapSpec::blackbox(std::move(rows), name);
          },
          py::arg("table"), py::arg("name") = "")
      .def("__call__", [](const MapSpec& f, const py::iterable& x) { return from_vec(f(to_vec(x))); });

  m.def(
      "check_map",
      [](const MapSpec& f, const LipschitzStructure& lx, const LipschitzStructure& ly, const std::string& mode,
         std::size_t samples, std::uint64_t seed) {
        MapCheckOptions opts;
        opts.mode = mode == "sampled" ? CheckMode::sampled : CheckMode::exact;
        opts.samples = samples;
        opts.seed = seed;
        py::list out;
        for (const auto& c : check_map(f, lx, ly, opts).certificates) out.append(certificate_dict(c));
        return out;
      },
      py::arg("f"), py::arg("lx"), py::arg("ly"), py::arg("mode") = "exact", py::arg("samples") = 256,
      py::arg("seed") = 0);

  m.def(
      "local_constants",
      [](const py::object& lambda, const py::iterable& x, const GaugeFunctional& p) {
        const auto c = local_constants(to_rat(lambda), to_vec(x), p);
        return py::make_tuple(from_rat(c.c1), from_rat(c.c2));
      },
      py::arg("lambda_bar"), py::arg("x_bar"), py::arg("p"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one CLI command in-process; returns (exit code, stdout, stderr).");
}
