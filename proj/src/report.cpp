#include "agewise/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "agewise/ageing.hpp"
#include "agewise/bounds.hpp"
#include "agewise/convergence.hpp"
#include "agewise/distributions.hpp"
#include "agewise/errors.hpp"
#include "agewise/spec_file.hpp"

namespace agewise {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string header(const std::string& command, std::string_view digest_source) {
  return "agewise " + version() + "\ncommand: " + command +
         "\ninput-digest: " + input_digest(digest_source) + "\n";
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (double x : xs) out += (out.empty() ? "" : ",") + csv_number(x);
  return out;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

bool rel_close(double x, double target, double rel) {
  return std::abs(x - target) <= rel * std::abs(target);
}

std::vector<double> uniform_points(double a, double b, std::size_t n) {
  // n points on [a, b), excluding b
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / n;
  return out;
}

std::string class_summary(const ClassVerdict& crossing, const std::optional<MrlShapeVerdict>& shape) {
  const std::string label = to_string(crossing.label);
  if (crossing.change_point) return label + ", x0 = " + fixed6(*crossing.change_point);
  if (shape && shape->turning_point) {
    const bool idmrl = shape->label == MrlShape::Idmrl;
    return to_string(shape->label) + " (tau0 = " + fixed6(*shape->turning_point) + ") and " +
           label + ", not " + (idmrl ? "NWBUE" : "NBWUE");
  }
  return label;
}

// ---- reproduction checks -------------------------------------------------

using Values = std::vector<std::pair<std::string, double>>;

ReproduceCheck make_check(int id, std::string name, bool pass, Values values,
                          std::string detail = {}) {
  return ReproduceCheck{id, std::move(name), pass, std::move(values), std::move(detail)};
}

std::vector<LifeDistribution> nbue_members() {
  return {exponential(0.5), exponential(2.0), weibull(1.5), weibull(2.0), weibull(3.0)};
}

ReproduceCheck check_second_moment() {
  const double m2 = moment(catalog("example_3_1"), 2.0, 1e-8);
  return make_check(1, "example_3_1 second moment", std::abs(m2 - 54.1210) <= 0.06,
                    {{"mu2", m2}, {"quoted", 54.1210}});
}

ReproduceCheck check_counterexample() {
  const auto d = catalog("example_3_1");
  const double m2 = moment(d, 2.0);
  const Deficiency def = deficiency(d, 2.0);
  const BoundReport b = nwbue_bounds(d, 10.0, 2.0);
  const double a = b.find(BoundId::NwbueA)->value;
  const double bb = b.find(BoundId::NwbueB)->value;
  const double c = b.find(BoundId::NwbueC)->value;
  const double c_expected = 50.0 * std::exp(2.0);
  const bool pass = def.value < 0.0 && std::abs(def.value - (50.0 - m2)) <= 1e-6 &&
                    rel_close(a, 150.0, 1e-4) && rel_close(bb, 250.0, 1e-4) &&
                    rel_close(c, c_expected, 1e-4) && b.all_satisfied();
  return make_check(2, "example_3_1 NBUE bound fails while NWBUE bounds hold", pass,
                    {{"D2", def.value}, {"bound_a", a}, {"bound_b", bb}, {"bound_c", c},
                     {"mu2", m2}});
}

ReproduceCheck check_ex31_class() {
  const ClassVerdict v = classify_crossing(catalog("example_3_1"));
  const double cp = v.change_point.value_or(NAN);
  return make_check(3, "example_3_1 classification",
                    v.label == AgeingClass::Nwbue && std::abs(cp - 10.0) <= 1e-6,
                    {{"change_point", cp}}, to_string(v.label));
}

ReproduceCheck check_weibull_example() {
  const auto d = weibull(2.0, 1.0);
  const double m2 = moment(d, 2.0);
  const double bound = nbue_moment_bound(d.mean(), 2.0);
  const BoundReport nw = nwbue_bounds(d, 0.0, 2.0);
  const bool pass = std::abs(m2 - 1.0) <= 1e-6 && std::abs(bound - std::numbers::pi / 2.0) <= 1e-10;
  return make_check(4, "weibull(2,1) moment and NBUE bound", pass,
                    {{"mu2", m2},
                     {"nbue_bound", bound},
                     {"nwbue_a_x0_0", nw.find(BoundId::NwbueA)->value},
                     {"nwbue_b_x0_0", nw.find(BoundId::NwbueB)->value},
                     {"nwbue_c_x0_0", nw.find(BoundId::NwbueC)->value},
                     {"quoted_nwbue_value", 1.392}},
                    "quoted NWBUE value reported, not asserted");
}

ReproduceCheck check_ex33() {
  const auto d = catalog("example_3_3");
  const MrlShapeVerdict shape = classify_mrl_shape(d);
  const ClassVerdict crossing = classify_crossing(d);
  const ClassVerdict resolved = resolve_idmrl(d, shape);
  const double tau = shape.turning_point.value_or(NAN);
  const bool pass = shape.label == MrlShape::Idmrl && std::abs(tau - 2.0) <= 1e-6 &&
                    crossing.label == AgeingClass::Nwue && resolved.label == AgeingClass::Nwue &&
                    !resolved.change_point;
  return make_check(5, "example_3_3 IDMRL but not NWBUE", pass, {{"turning_point", tau}},
                    to_string(shape.label) + "/" + to_string(crossing.label) + "/" +
                        to_string(resolved.label));
}

ReproduceCheck check_ex34() {
  const MrlSpec spec = example_mrl_spec("example_3_4");
  const bool valid = validate_mrl(spec).valid;
  const auto closed = catalog("example_3_4");
  const ClassVerdict v = classify_crossing(closed);
  const auto inverted = from_mrl(spec);
  double worst = 0.0;
  for (double x : uniform_points(0.0, default_horizon(closed), 200)) {
    worst = std::max(worst, std::abs(inverted.survival(x) - closed.survival(x)));
  }
  const double s2 = inverted.survival(2.0);
  const double cp = v.change_point.value_or(NAN);
  const bool pass = valid && v.label == AgeingClass::Nwbue && std::abs(cp - 3.0) <= 1e-6 &&
                    worst <= 1e-8 && std::abs(s2 - 10.0 / 27.0) <= 1e-12;
  return make_check(6, "example_3_4 valid MRL, NWBUE, inversion", pass,
                    {{"change_point", cp}, {"max_survival_diff", worst}, {"survival_2", s2}},
                    to_string(v.label));
}

ReproduceCheck check_nbue_moment_suite() {
  int failures = 0;
  double worst_equality = 0.0;
  for (const auto& d : nbue_members()) {
    const bool is_exponential = std::get<LifeDistribution::Builtin>(d.origin()).name == "exponential";
    for (double r : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      const BoundReport report = nbue_moment_check(d, r);
      if (!report.all_satisfied()) ++failures;
      if (is_exponential || r == 1.0) {
        const double rel = std::abs(report.quantity - report.bounds.front().value) /
                           report.bounds.front().value;
        worst_equality = std::max(worst_equality, rel);
      }
    }
  }
  return make_check(7, "NBUE moment bounds on exponential/weibull family",
                    failures == 0 && worst_equality <= 1e-6,
                    {{"violations", failures}, {"max_equality_rel_error", worst_equality}});
}

ReproduceCheck check_tail_suite() {
  int failures = 0;
  double worst_origin = 0.0;
  for (const auto& d : nbue_members()) {
    const double h = default_horizon(d);
    const auto xs = uniform_points(0.0, h, 20);
    const BoundReport report = tail_bound_check(d, xs);
    for (const auto& b : report.bounds) failures += b.satisfied ? 0 : 1;
    worst_origin = std::max(worst_origin, std::abs(report.bounds.front().lhs - d.mean()));
  }
  return make_check(8, "NBUE tail bound on exponential/weibull family",
                    failures == 0 && worst_origin <= 1e-8,
                    {{"violations", failures}, {"max_origin_gap", worst_origin}});
}

ReproduceCheck check_phi_consistency() {
  std::vector<LifeDistribution> members = nbue_members();
  for (const auto& name : {"example_3_1", "example_3_3", "example_3_4"}) members.push_back(catalog(name));
  double worst = 0.0;
  for (const auto& d : members) {
    for (double r : {1.0, 2.0, 3.0}) {
      const BoundReport phi =
          check_phi_inequality(d, [r](double x) { return std::pow(x, r - 1.0); });
      const double via_phi = r * phi.quantity;
      const double direct = moment(d, r);
      worst = std::max(worst, std::abs(via_phi - direct) / direct);
    }
  }
  return make_check(9, "phi-inequality route reproduces moments", worst <= 1e-6,
                    {{"max_rel_error", worst}});
}

ReproduceCheck check_round_trip() {
  std::vector<MrlSpec> specs;
  for (const auto& name : {"example_3_1", "example_3_3", "example_3_4"}) {
    specs.push_back(example_mrl_spec(name));
  }
  specs.push_back(constant_mrl(1.5));
  double worst = 0.0;
  for (const auto& spec : specs) {
    const auto d = from_mrl(spec);
    for (double x : uniform_points(0.0, default_horizon(d), 200)) {
      worst = std::max(worst, std::abs(mrl_of(d, x) - spec(x)));
    }
  }
  return make_check(10, "MRL inversion round trip", worst <= 1e-7, {{"max_abs_error", worst}});
}

ReproduceCheck check_convergence() {
  const ConvergenceReport report = run_convergence(weibull_shape_sequence(doublings(1024)), {2.0});
  const auto& rows = report.rows;
  bool decreasing = rows.size() >= 6;
  for (std::size_t k = rows.size() - 5; decreasing && k < rows.size(); ++k) {
    decreasing = rows[k].moment_errors.at(2.0) < rows[k - 1].moment_errors.at(2.0);
  }
  const double final_error = std::abs(moment(weibull(1.0 + 1.0 / 1024.0), 2.0) - 2.0);
  const auto label = report.limit_verdict.label;
  const bool pass = final_error < 0.02 && decreasing &&
                    (label == AgeingClass::Exponential || label == AgeingClass::Nbue);
  return make_check(11, "weibull shape sequence moment convergence", pass,
                    {{"final_error_r2", final_error}, {"final_cdf_sup", rows.back().cdf_sup_distance}},
                    "limit " + to_string(label));
}

ReproduceCheck check_invalid_mrl() {
  const MrlSpec bad{{{0.0, 1.0, SegmentKind::Affine, 2.0, -1.5},
                     {1.0, std::numeric_limits<double>::infinity(), SegmentKind::Affine, 0.5, 0.0}}};
  const MrlValidityReport report = validate_mrl(bad);
  return make_check(12, "slope -1.5 MRL rejected by V2", !report.valid && report.violates("V2"), {},
                    report.summary());
}

}  // namespace

std::string version() { return "0.1.0"; }

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return std::string("fnv1a64:") + buf;
}

CommandResult cmd_classify(const std::filesystem::path& spec, const ClassifyOptions& opts) {
  const std::string bytes = read_text_file(spec);
  const LifeDistribution d = to_distribution(parse_spec_text(bytes, spec.string()));
  ScanOptions scan;
  std::string echo = "classify " + spec.string();
  if (opts.horizon) {
    scan.horizon = *opts.horizon;
    echo += " --horizon " + csv_number(*opts.horizon);
  }
  if (opts.grid) {
    scan.grid_n = *opts.grid;
    echo += " --grid " + std::to_string(*opts.grid);
  }
  if (opts.tol) {
    scan.tol = *opts.tol;
    echo += " --tol " + csv_number(*opts.tol);
  }

  const ClassVerdict crossing = classify_crossing(d, scan);
  const MrlShapeVerdict shape = classify_mrl_shape(d, scan);

  std::ostringstream out;
  out << header(echo, bytes);
  out << "distribution: " << d.describe() << "\n";
  out << "mean: " << fixed6(crossing.mu) << "\n";
  out << "horizon: " << fixed6(crossing.horizon) << "\n";
  out << "crossing: " << to_string(crossing.label) << " (pattern " << crossing.signature << ")\n";
  if (crossing.change_point) out << "change_point: " << fixed6(*crossing.change_point) << "\n";
  out << "crossings:";
  for (double x : crossing.crossings) out << ' ' << fixed6(x);
  out << "\nshape: " << to_string(shape.label) << " (pattern " << shape.signature << ")\n";
  if (shape.turning_point) out << "turning_point: " << fixed6(*shape.turning_point) << "\n";

  int exit_code = kExitOk;
  if (shape.label == MrlShape::Idmrl || shape.label == MrlShape::Dimrl) {
    const ClassVerdict resolved = resolve_idmrl(d, shape, scan);
    bool consistent = resolved.label == crossing.label;
    if (consistent && resolved.change_point && crossing.change_point) {
      consistent = std::abs(*resolved.change_point - *crossing.change_point) <= 1e-6;
    }
    out << "resolved: " << to_string(resolved.label);
    if (resolved.change_point) out << " (x* = " << fixed6(*resolved.change_point) << ")";
    out << (consistent ? ", consistent" : ", INCONSISTENT with crossing verdict") << "\n";
    if (!consistent) exit_code = kExitCheckFailure;
  }
  out << "summary: " << class_summary(crossing, shape) << "\n";
  return {out.str(), exit_code};
}

CommandResult cmd_bounds(const std::filesystem::path& spec, double order,
                         std::optional<double> x0) {
  if (!(order > 0.0)) throw InvalidArgument("--order must be positive");
  const std::string bytes = read_text_file(spec);
  const LifeDistribution d = to_distribution(parse_spec_text(bytes, spec.string()));
  std::string echo = "bounds " + spec.string() + " --order " + csv_number(order);
  if (x0) echo += " --x0 " + csv_number(*x0);

  const ClassVerdict verdict = classify_crossing(d);
  const bool nbue_class =
      verdict.label == AgeingClass::Nbue || verdict.label == AgeingClass::Exponential;
  const bool nwbue_class = verdict.label == AgeingClass::Nwbue || nbue_class;
  std::optional<double> used_x0 = x0;
  std::string x0_source = "given";
  if (!used_x0) {
    x0_source = "from classification";
    if (verdict.label == AgeingClass::Nwbue) used_x0 = verdict.change_point;
    if (nbue_class) used_x0 = 0.0;
  }

  BoundReport report = nbue_moment_check(d, order);
  std::optional<BoundReport> nwbue;
  if (used_x0) nwbue = nwbue_bounds(d, *used_x0, order);
  const Deficiency def = deficiency(d, order);

  std::ostringstream out;
  out << header(echo, bytes);
  out << "distribution: " << d.describe() << "\n";
  out << "class: " << to_string(verdict.label) << "\n";
  out << "mean: " << fixed6(d.mean()) << "\n";
  out << "moment: r = " << fixed6(order) << ", mu_r = " << fixed6(report.quantity) << "\n";
  if (used_x0) {
    out << "x0: " << fixed6(*used_x0) << " (" << x0_source << ")\n";
  } else {
    out << "x0: n/a (" << to_string(verdict.label) << " has no NWBUE change point)\n";
  }
  out << pad("bound", 12) << pad("dir", 5) << pad("value", 16) << pad("satisfied", 11)
      << "margin\n";
  int exit_code = kExitOk;
  const auto row = [&](const BoundEntry& b, bool guaranteed) {
    out << pad(to_string(b.id), 12) << pad(to_string(b.direction), 5) << pad(fixed6(b.value), 16)
        << pad(b.satisfied ? "yes" : "no", 11) << fixed6(b.margin)
        << (guaranteed ? "" : "  (not implied by class)") << "\n";
    if (guaranteed && !b.satisfied) exit_code = kExitCheckFailure;
  };
  for (const auto& b : report.bounds) row(b, nbue_class);
  if (nwbue) {
    for (const auto& b : nwbue->bounds) row(b, nwbue_class);
  }
  out << "deficiency: D(" << fixed6(order) << ") = " << fixed6(def.value) << "\n";
  return {out.str(), exit_code};
}

CommandResult cmd_moments(const std::filesystem::path& spec, const std::vector<double>& orders) {
  if (orders.empty()) throw InvalidArgument("--orders needs at least one value");
  const std::string bytes = read_text_file(spec);
  const LifeDistribution d = to_distribution(parse_spec_text(bytes, spec.string()));
  std::ostringstream out;
  out << header("moments " + spec.string() + " --orders " + join_numbers(orders), bytes);
  out << "distribution: " << d.describe() << "\n";
  out << "mean: " << fixed6(d.mean()) << "\n";
  out << pad("r", 12) << pad("mu_r", 18) << pad("gamma(r+1)mu^r", 18) << "D(r)\n";
  for (double r : orders) {
    if (!(r > 0.0)) throw InvalidArgument("moment orders must be positive");
    const double m = moment(d, r);
    const double bound = nbue_moment_bound(d.mean(), r);
    out << pad(fixed6(r), 12) << pad(fixed6(m), 18) << pad(fixed6(bound), 18)
        << fixed6(bound - m) << "\n";
  }
  return {out.str(), kExitOk};
}

CommandResult cmd_verify_mrl(const std::filesystem::path& spec) {
  const std::string bytes = read_text_file(spec);
  const DistSpecFile file = parse_spec_text(bytes, spec.string());
  if (file.kind != DistSpecFile::Kind::MrlPiecewise) {
    throw InvalidArgument("verify-mrl needs an mrl_piecewise spec");
  }
  const MrlValidityReport report = validate_mrl(file.mrl);
  std::ostringstream out;
  out << header("verify-mrl " + spec.string(), bytes);
  out << "segments: " << file.mrl.segments.size() << "\n";
  out << "valid: " << (report.valid ? "yes" : "no") << "\n";
  for (const auto& v : report.violations) {
    out << "violation: " << v.condition << " at x = " << fixed6(v.location) << ": " << v.detail
        << "\n";
  }
  return {out.str(), report.valid ? kExitOk : kExitCheckFailure};
}

CommandResult cmd_invert_mrl(const std::filesystem::path& spec, const std::filesystem::path& csv,
                             std::size_t points) {
  if (points < 2) throw InvalidArgument("--points must be >= 2");
  const std::string bytes = read_text_file(spec);
  const DistSpecFile file = parse_spec_text(bytes, spec.string());
  if (file.kind != DistSpecFile::Kind::MrlPiecewise) {
    throw InvalidArgument("invert-mrl needs an mrl_piecewise spec");
  }
  const LifeDistribution d = to_distribution(file);
  const double horizon = default_horizon(d);

  std::ostringstream table;
  table << "x,mrl,survival,mrl_recomputed\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = horizon * static_cast<double>(i) / static_cast<double>(points - 1);
    const double e = file.mrl(x);
    const double back = mrl_of(d, x);
    worst = std::max(worst, std::abs(back - e));
    table << csv_number(x) << ',' << csv_number(e) << ',' << csv_number(d.survival(x)) << ','
          << csv_number(back) << '\n';
  }
  std::ofstream os(csv, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write " + csv.string());
  os << table.str();

  std::ostringstream out;
  out << header("invert-mrl " + spec.string() + " --out " + csv.string() + " --points " +
                    std::to_string(points),
                bytes);
  out << "mean: " << fixed6(d.mean()) << "\n";
  out << "horizon: " << fixed6(horizon) << "\n";
  out << "points: " << points << "\n";
  out << "max |mrl_recomputed - mrl|: " << csv_number(worst) << "\n";
  out << "wrote: " << csv.string() << "\n";
  return {out.str(), kExitOk};
}

CommandResult cmd_converge(const std::string& family, int n_max, const std::vector<double>& orders,
                           const std::optional<std::filesystem::path>& csv) {
  if (orders.empty()) throw InvalidArgument("--orders needs at least one value");
  std::vector<int> index = doublings(n_max);
  std::optional<SequenceSpec> seq;
  if (family == "weibull-shape") {
    seq.emplace(weibull_shape_sequence(index));
  } else if (family == "exp-mean") {
    seq.emplace(exponential_mean_sequence(index));
  } else {
    throw InvalidArgument("--family must be weibull-shape or exp-mean");
  }
  const ConvergenceReport report = run_convergence(*seq, orders);

  std::ostringstream table;
  table << "n,mu_n";
  for (double r : orders) table << ",err_r" << csv_number(r);
  table << ",cdf_sup_distance\n";
  for (const auto& row : report.rows) {
    table << row.n << ',' << csv_number(row.mu_n);
    for (double r : orders) table << ',' << csv_number(row.moment_errors.at(r));
    table << ',' << csv_number(row.cdf_sup_distance) << '\n';
  }

  std::string echo = "converge --family " + family + " --n-max " + std::to_string(n_max) +
                     " --orders " + join_numbers(orders);
  if (csv) echo += " --out " + csv->string();
  std::ostringstream out;
  out << header(echo, echo);
  out << "limit mean: " << fixed6(report.limit_mean) << "\n";
  out << "limit class: " << to_string(report.limit_verdict.label) << "\n";
  for (double r : orders) {
    out << "limit moment r=" << fixed6(r) << ": " << fixed6(report.limit_moments.at(r)) << "\n";
  }
  out << pad("n", 8) << pad("mu_n", 12);
  for (double r : orders) out << pad("err_r" + csv_number(r), 14);
  out << "cdf_sup\n";
  for (const auto& row : report.rows) {
    out << pad(std::to_string(row.n), 8) << pad(fixed6(row.mu_n), 12);
    for (double r : orders) out << pad(fixed6(row.moment_errors.at(r)), 14);
    out << fixed6(row.cdf_sup_distance) << "\n";
  }
  if (csv) {
    std::ofstream os(*csv, std::ios::binary);
    if (!os) throw InvalidArgument("cannot write " + csv->string());
    os << table.str();
    out << "wrote: " << csv->string() << "\n";
  }
  return {out.str(), kExitOk};
}

std::vector<ReproduceCheck> reproduce_checks() {
  return {check_second_moment(), check_counterexample(), check_ex31_class(),
          check_weibull_example(), check_ex33(),          check_ex34(),
          check_nbue_moment_suite(), check_tail_suite(),  check_phi_consistency(),
          check_round_trip(),      check_convergence(),   check_invalid_mrl()};
}

std::vector<Erratum> reproduce_errata() {
  const double mu = 5.0;
  const double x0 = 10.0;
  const double poisson = nwbue_bound_b(mu, x0, 2, BoundBForm::PoissonPartialSum);
  const double literal = nwbue_bound_b(mu, x0, 2, BoundBForm::Literal);
  const double w_mu = weibull(2.0).mean();
  const double m2 = moment(catalog("example_3_1"), 2.0);
  return {
      Erratum{"bound-b-partial-sum",
              "NWBUE bound (b) is printed with summand (x0/mu)^r/r! and an unused index j; "
              "computed with the Poisson partial sum (x0/mu)^j/j!. Both forms hold for "
              "example_3_1 at r = 2.",
              {{"poisson_form", poisson}, {"literal_form", literal}, {"mu2", m2}}},
      Erratum{"weibull-nwbue-quoted-value",
              "The NWBUE bound quoted for weibull(2,1) is pi^(3/2)/4 = 1.392; bounds (a), (b), "
              "(c) with x0 = 0 all equal pi/2, and mu2 = 1 lies below both, so no violation "
              "is asserted.",
              {{"quoted", std::pow(std::numbers::pi, 1.5) / 4.0},
               {"bound_a_x0_0", nwbue_bound_a(w_mu, 0.0, 2.0)},
               {"bound_b_x0_0", nwbue_bound_b(w_mu, 0.0, 2)},
               {"bound_c_x0_0", nwbue_bound_c(w_mu, 0.0, 2.0)}}},
  };
}

int reproduce_exit_code(const std::vector<ReproduceCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return kExitCheckFailure;
  }
  return kExitOk;
}

std::string render_reproduce(const std::vector<ReproduceCheck>& checks,
                             const std::vector<Erratum>& errata, bool json) {
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.pass ? 1 : 0;
  const std::string echo = json ? "reproduce --json" : "reproduce";

  if (json) {
    ordered_json doc;
    doc["tool"] = "agewise";
    doc["version"] = version();
    doc["command"] = echo;
    doc["input_digest"] = input_digest(echo);
    doc["checks"] = ordered_json::array();
    for (const auto& c : checks) {
      ordered_json entry;
      entry["id"] = c.id;
      entry["name"] = c.name;
      entry["status"] = c.pass ? "PASS" : "FAIL";
      entry["values"] = ordered_json::object();
      for (const auto& [key, value] : c.values) entry["values"][key] = value;
      entry["detail"] = c.detail;
      doc["checks"].push_back(entry);
    }
    doc["errata"] = ordered_json::array();
    for (const auto& e : errata) {
      ordered_json entry;
      entry["id"] = e.id;
      entry["text"] = e.text;
      entry["values"] = ordered_json::object();
      for (const auto& [key, value] : e.values) entry["values"][key] = value;
      doc["errata"].push_back(entry);
    }
    doc["passed"] = passed;
    doc["total"] = checks.size();
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  out << header(echo, echo);
  for (const auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.name;
    for (const auto& [key, value] : c.values) out << ' ' << key << '=' << fixed6(value);
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  out << "errata:\n";
  for (const auto& e : errata) {
    out << "  " << e.id << ": " << e.text << "\n   ";
    for (const auto& [key, value] : e.values) out << ' ' << key << '=' << fixed6(value);
    out << "\n";
  }
  out << "summary: " << passed << "/" << checks.size() << " PASS\n";
  return out.str();
}

CommandResult cmd_reproduce(bool json) {
  const auto checks = reproduce_checks();
  return {render_reproduce(checks, reproduce_errata(), json), reproduce_exit_code(checks)};
}

}  // namespace agewise
