#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "agewise/ageing.hpp"
#include "agewise/bounds.hpp"
#include "agewise/convergence.hpp"
#include "agewise/distributions.hpp"
#include "agewise/errors.hpp"
#include "agewise/report.hpp"
#include "agewise/spec_file.hpp"

namespace py = pybind11;
using namespace agewise;

namespace {

double to_bound(const py::handle& h) {
  if (py::isinstance<py::str>(h)) {
    const auto s = h.cast<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    throw InvalidArgument("segment bound must be a number or \"inf\", got \"" + s + "\"");
  }
  return h.cast<double>();
}

SegmentKind to_kind(const std::string& s) {
  if (s == "affine") return SegmentKind::Affine;
  if (s == "reciprocal") return SegmentKind::Reciprocal;
  throw InvalidArgument("segment kind must be \"affine\" or \"reciprocal\", got \"" + s + "\"");
}

// Segments as dicts {"from", "to", "kind", "a", "b"} or tuples (from, to, kind, a, b).
MrlSpec to_spec(const py::sequence& segments) {
  MrlSpec spec;
  for (const auto& item : segments) {
    MrlSegment s;
    if (py::isinstance<py::dict>(item)) {
      const auto d = item.cast<py::dict>();
      s.from = to_bound(d["from"]);
      s.to = to_bound(d["to"]);
      s.kind = to_kind(d["kind"].cast<std::string>());
      s.a = d["a"].cast<double>();
      s.b = d["b"].cast<double>();
    } else {
      const auto t = item.cast<py::sequence>();
      if (t.size() != 5) throw InvalidArgument("segment tuples are (from, to, kind, a, b)");
      s.from = to_bound(t[0]);
      s.to = to_bound(t[1]);
      s.kind = to_kind(t[2].cast<std::string>());
      s.a = t[3].cast<double>();
      s.b = t[4].cast<double>();
    }
    spec.segments.push_back(s);
  }
  return spec;
}

py::list from_spec(const MrlSpec& spec) {
  py::list out;
  for (const auto& s : spec.segments) {
    py::dict d;
    d["from"] = s.from;
    d["to"] = s.to;
    d["kind"] = s.kind == SegmentKind::Affine ? "affine" : "reciprocal";
    d["a"] = s.a;
    d["b"] = s.b;
    out.append(d);
  }
  return out;
}

ScanOptions scan(double horizon, std::size_t grid, double tol) { return {horizon, grid, tol}; }

}  // namespace

PYBIND11_MODULE(_agewise, m) {
  m.doc() = "Mean-residual-life ageing classes: classification, moment bounds, MRL inversion";
  m.attr("__version__") = version();

  auto base = py::register_exception<Error>(m, "AgewiseError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
  py::register_exception<NoSignChange>(m, "NoSignChange", base.ptr());
  py::register_exception<SupportExceeded>(m, "SupportExceeded", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<HypothesisViolation>(m, "HypothesisViolation", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<LifeDistribution>(m, "LifeDistribution")
      .def("survival", &LifeDistribution::survival, py::arg("x"))
      .def("survival", [](const LifeDistribution& d, const std::vector<double>& xs) {
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(d.survival(x));
        return out;
      }, py::arg("xs"))
      .def("mrl", [](const LifeDistribution& d, double x) { return mrl_of(d, x); }, py::arg("x"))
      .def_property_readonly("mean", &LifeDistribution::mean)
      .def_property_readonly("tail_rate", &LifeDistribution::tail_rate)
      .def_property_readonly("knots", &LifeDistribution::knots)
      .def_property_readonly("support_end", &LifeDistribution::support_end)
      .def("scaled", &LifeDistribution::scaled, py::arg("c"))
      .def("describe", &LifeDistribution::describe)
      .def("__repr__", [](const LifeDistribution& d) { return "<LifeDistribution " + d.describe() + ">"; });

  m.def("exponential", &exponential, py::arg("mean"));
  m.def("weibull", &weibull, py::arg("shape"), py::arg("scale") = 1.0);
  m.def("catalog", &catalog, py::arg("name"), py::arg("params") = std::map<std::string, double>{});
  m.def("catalog_names", &catalog_names);
  m.def("example_mrl_spec", [](const std::string& name) { return from_spec(example_mrl_spec(name)); },
        py::arg("name"));
  m.def("from_mrl", [](const py::sequence& segments, double tol) {
    return from_mrl(to_spec(segments), tol);
  }, py::arg("segments"), py::arg("tol") = kQuadTol);
  m.def("mrl_of", &mrl_of, py::arg("d"), py::arg("x"));
  m.def("moment", &moment, py::arg("d"), py::arg("r"), py::arg("tol") = kQuadTol);
  m.def("mean_of", &mean_of, py::arg("d"), py::arg("tol") = kQuadTol);
  m.def("gamma_fn", &gamma_fn, py::arg("x"));
  m.def("parse_spec", [](const std::filesystem::path& p) { return parse_spec(p); }, py::arg("path"));

  m.def("validate_mrl", [](const py::sequence& segments) {
    const MrlValidityReport r = validate_mrl(to_spec(segments));
    py::list violations;
    for (const auto& v : r.violations) {
      py::dict d;
      d["condition"] = v.condition;
      d["location"] = v.location;
      d["detail"] = v.detail;
      violations.append(d);
    }
    py::dict out;
    out["valid"] = r.valid;
    out["violations"] = violations;
    out["summary"] = r.summary();
    return out;
  }, py::arg("segments"));

  py::class_<ClassVerdict>(m, "ClassVerdict")
      .def_property_readonly("label", [](const ClassVerdict& v) { return to_string(v.label); })
      .def_readonly("change_point", &ClassVerdict::change_point)
      .def_readonly("mu", &ClassVerdict::mu)
      .def_readonly("horizon", &ClassVerdict::horizon)
      .def_readonly("crossings", &ClassVerdict::crossings)
      .def_readonly("signature", &ClassVerdict::signature)
      .def("__repr__", [](const ClassVerdict& v) {
        return "<ClassVerdict " + to_string(v.label) +
               (v.change_point ? " x0=" + std::to_string(*v.change_point) : std::string()) + ">";
      });

  py::class_<MrlShapeVerdict>(m, "MrlShapeVerdict")
      .def_property_readonly("label", [](const MrlShapeVerdict& v) { return to_string(v.label); })
      .def_readonly("turning_point", &MrlShapeVerdict::turning_point)
      .def_readonly("horizon", &MrlShapeVerdict::horizon)
      .def_readonly("signature", &MrlShapeVerdict::signature)
      .def("__repr__", [](const MrlShapeVerdict& v) {
        return "<MrlShapeVerdict " + to_string(v.label) +
               (v.turning_point ? " tau0=" + std::to_string(*v.turning_point) : std::string()) + ">";
      });

  m.def("classify_crossing", [](const LifeDistribution& d, double horizon, std::size_t grid, double tol) {
    return classify_crossing(d, scan(horizon, grid, tol));
  }, py::arg("d"), py::arg("horizon") = 0.0, py::arg("grid") = kDefaultGrid, py::arg("tol") = kSignTol);
  m.def("classify_mrl_shape", [](const LifeDistribution& d, double horizon, std::size_t grid, double tol) {
    return classify_mrl_shape(d, scan(horizon, grid, tol));
  }, py::arg("d"), py::arg("horizon") = 0.0, py::arg("grid") = kDefaultGrid, py::arg("tol") = kSignTol);
  m.def("resolve_idmrl", [](const LifeDistribution& d, const MrlShapeVerdict& shape) {
    return resolve_idmrl(d, shape);
  }, py::arg("d"), py::arg("shape"));

  py::class_<BoundEntry>(m, "BoundEntry")
      .def_property_readonly("id", [](const BoundEntry& b) { return to_string(b.id); })
      .def_readonly("lhs", &BoundEntry::lhs)
      .def_readonly("value", &BoundEntry::value)
      .def_property_readonly("direction", [](const BoundEntry& b) { return to_string(b.direction); })
      .def_readonly("satisfied", &BoundEntry::satisfied)
      .def_readonly("margin", &BoundEntry::margin)
      .def_readonly("at", &BoundEntry::at);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("quantity", &BoundReport::quantity)
      .def_readonly("bounds", &BoundReport::bounds)
      .def_property_readonly("all_satisfied", &BoundReport::all_satisfied)
      .def("find", [](const BoundReport& r, const std::string& id) -> std::optional<BoundEntry> {
        for (const auto& b : r.bounds) {
          if (to_string(b.id) == id) return b;
        }
        return std::nullopt;
      }, py::arg("id"));

  m.def("nbue_moment_bound", &nbue_moment_bound, py::arg("mu"), py::arg("r"));
  m.def("nbue_moment_check", &nbue_moment_check, py::arg("d"), py::arg("r"));
  m.def("tail_bound_check", [](const LifeDistribution& d, const std::vector<double>& xs) {
    return tail_bound_check(d, xs);
  }, py::arg("d"), py::arg("xs"));
  m.def("check_phi_inequality", [](const LifeDistribution& d, const std::function<double(double)>& phi,
                                   double tol) { return check_phi_inequality(d, phi, tol); },
        py::arg("d"), py::arg("phi"), py::arg("tol") = kQuadTol);
  m.def("nwbue_bounds", [](const LifeDistribution& d, double x0, double r, bool literal_b) {
    return nwbue_bounds(d, x0, r, literal_b ? BoundBForm::Literal : BoundBForm::PoissonPartialSum);
  }, py::arg("d"), py::arg("x0"), py::arg("r"), py::arg("literal_b") = false);
  m.def("deficiency", [](const LifeDistribution& d, double t) { return deficiency(d, t).value; },
        py::arg("d"), py::arg("t"));

  m.def("run_convergence", [](const std::string& family, const std::vector<int>& index_set,
                              const std::vector<double>& orders) {
    SequenceSpec spec = family == "weibull-shape" ? weibull_shape_sequence(index_set)
                        : family == "exp-mean"
                            ? exponential_mean_sequence(index_set)
                            : throw InvalidArgument("family must be weibull-shape or exp-mean");
    const ConvergenceReport r = run_convergence(spec, orders);
    py::list rows;
    for (const auto& row : r.rows) {
      py::dict d;
      d["n"] = row.n;
      d["mu_n"] = row.mu_n;
      d["moment_errors"] = row.moment_errors;
      d["cdf_sup_distance"] = row.cdf_sup_distance;
      rows.append(d);
    }
    py::dict out;
    out["rows"] = rows;
    out["limit_moments"] = r.limit_moments;
    out["limit_mean"] = r.limit_mean;
    out["limit_class"] = to_string(r.limit_verdict.label);
    return out;
  }, py::arg("family"), py::arg("index_set"), py::arg("orders"));

  m.def("reproduce", [](bool json) {
    const CommandResult r = cmd_reproduce(json);
    return py::make_tuple(r.text, r.exit_code);
  }, py::arg("json") = false);
}
