#include "agewise/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "agewise/ageing.hpp"
#include "agewise/errors.hpp"

namespace agewise {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSurvivalFloor = 1e-300;

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

double MrlSegment::value(double x) const {
  return kind == SegmentKind::Affine ? a + b * x : a + b / x;
}

double MrlSegment::derivative(double x) const {
  return kind == SegmentKind::Affine ? b : -b / (x * x);
}

double MrlSegment::reciprocal_integral(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  if (kind == SegmentKind::Affine) {
    if (b == 0.0) return (hi - lo) / a;
    return std::log1p(b * (hi - lo) / (a + b * lo)) / b;
  }
  // 1/(a + b/u) = u/(a u + b)
  if (a == 0.0) return (hi * hi - lo * lo) / (2.0 * b);
  return (hi - lo) / a - (b / (a * a)) * std::log((a * hi + b) / (a * lo + b));
}

double MrlSpec::operator()(double x) const {
  if (segments.empty()) throw InvalidArgument("MrlSpec: no segments");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (x < s.to || i + 1 == segments.size()) return s.value(x);
  }
  return segments.back().value(x);
}

std::vector<double> MrlSpec::knots() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments.size(); ++i) out.push_back(segments[i].from);
  if (auto end = support_end()) out.push_back(*end);
  return out;
}

std::optional<double> MrlSpec::support_end() const {
  if (segments.empty()) return std::nullopt;
  const auto& last = segments.back();
  if (std::isfinite(last.to)) return last.to;
  return std::nullopt;
}

MrlSpec constant_mrl(double mean) {
  return MrlSpec{{MrlSegment{0.0, kInf, SegmentKind::Affine, mean, 0.0}}};
}

LifeDistribution::LifeDistribution(RealFn survival, std::vector<double> knots,
                                   double tail_rate, std::optional<double> mean,
                                   Origin origin, std::optional<double> support_end)
    : survival_(std::make_shared<const RealFn>(std::move(survival))),
      knots_(std::move(knots)),
      tail_rate_(tail_rate),
      mean_(0.0),
      origin_(std::move(origin)),
      support_end_(support_end) {
  if (!(tail_rate_ > 0.0) || !std::isfinite(tail_rate_)) {
    throw InvalidArgument("LifeDistribution: tail_rate must be positive and finite");
  }
  if (support_end_ && !(*support_end_ > 0.0)) {
    throw InvalidArgument("LifeDistribution: support end must be positive");
  }
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
  mean_ = mean ? *mean : mean_of(*this);
  if (!(mean_ > 0.0) || !std::isfinite(mean_)) {
    throw InvalidArgument("LifeDistribution: mean must be positive and finite");
  }
}

double LifeDistribution::survival(double x) const {
  if (x <= 0.0) return 1.0;
  if (support_end_ && x >= *support_end_) return 0.0;
  return std::clamp((*survival_)(x), 0.0, 1.0);
}

std::string LifeDistribution::describe() const {
  std::ostringstream out;
  if (const auto* builtin = std::get_if<Builtin>(&origin_)) {
    out << builtin->name;
    for (const auto& [key, value] : builtin->params) out << ' ' << key << '=' << value;
  } else if (const auto* from = std::get_if<FromMrl>(&origin_)) {
    out << "mrl_piecewise(" << from->spec.segments.size() << " segments)";
  } else {
    out << "survival";
  }
  return out.str();
}

LifeDistribution LifeDistribution::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scaled: factor must be positive");
  auto base = survival_;
  RealFn survival = [base, c](double x) { return (*base)(x / c); };
  std::vector<double> knots;
  for (double k : knots_) knots.push_back(k * c);
  std::optional<double> end;
  if (support_end_) end = *support_end_ * c;

  Origin origin = FromSurvival{};
  if (const auto* from = std::get_if<FromMrl>(&origin_)) {
    // e_c(x) = c e(x/c)
    MrlSpec spec = from->spec;
    for (auto& s : spec.segments) {
      s.from *= c;
      s.to *= c;
      s.a *= c;
      if (s.kind == SegmentKind::Reciprocal) s.b *= c * c;
    }
    origin = FromMrl{std::move(spec)};
  } else if (const auto* builtin = std::get_if<Builtin>(&origin_)) {
    Builtin b = *builtin;
    b.params["time_scale"] = param_or(b.params, "time_scale", 1.0) * c;
    origin = std::move(b);
  }
  return LifeDistribution(std::move(survival), std::move(knots), tail_rate_ * c,
                          mean_ * c, std::move(origin), end);
}

double EquilibriumDensity::total_mass(double tol) const {
  const double mean = base_.mean();
  return integrate_against_survival(base_, [mean](double) { return 1.0 / mean; }, 0.0, tol)
      .value;
}

QuadResult integrate_against_survival(const LifeDistribution& d, const RealFn& weight,
                                      double from, double tol) {
  const RealFn integrand = [&](double x) {
    const double s = d.survival(x);
    return s == 0.0 ? 0.0 : weight(x) * s;
  };
  if (auto end = d.support_end()) {
    if (from >= *end) return {0.0, 0.0, 1};
    return integrate(integrand, from, *end, tol, d.knots());
  }
  return integrate_semi_infinite(integrand, from, d.tail_rate(), tol, d.knots());
}

LifeDistribution from_mrl(const MrlSpec& spec, double /*tol*/) {
  const MrlValidityReport report = validate_mrl(spec);
  if (!report.valid) throw ValidationError(report.summary());

  const auto& last = spec.segments.back();
  if (last.kind == SegmentKind::Affine && last.b > 0.0 && !std::isfinite(last.to)) {
    throw InvalidArgument(
        "from_mrl: an unbounded increasing final MRL segment has no exponential tail");
  }

  // Cumulative int_0^{from_i} du/e(u) at every segment start.
  std::vector<double> cumulative(spec.segments.size(), 0.0);
  for (std::size_t i = 1; i < spec.segments.size(); ++i) {
    const auto& prev = spec.segments[i - 1];
    cumulative[i] = cumulative[i - 1] + prev.reciprocal_integral(prev.from, prev.to);
  }

  const double e0 = spec.mean();
  RealFn survival = [spec, cumulative, e0](double x) {
    std::size_t i = 0;
    while (i + 1 < spec.segments.size() && x >= spec.segments[i].to) ++i;
    const auto& s = spec.segments[i];
    const double e = s.value(x);
    if (!(e > 0.0)) return 0.0;
    const double h = cumulative[i] + s.reciprocal_integral(s.from, x);
    return e0 / e * std::exp(-h);
  };

  const std::optional<double> end = spec.support_end();
  double tail_rate = e0;
  if (end) {
    tail_rate = *end;
  } else {
    tail_rate = last.value(last.from);
    if (last.kind == SegmentKind::Reciprocal && last.a > tail_rate) tail_rate = last.a;
  }
  return LifeDistribution(std::move(survival), spec.knots(), tail_rate, e0,
                          LifeDistribution::FromMrl{spec}, end);
}

double mrl_of(const LifeDistribution& d, double x) {
  if (x < 0.0) throw InvalidArgument("mrl_of: age must be nonnegative");
  if (x == 0.0) return d.mean();
  const double s = d.survival(x);
  if (!(s > kSurvivalFloor)) {
    throw SupportExceeded("mrl_of: survival vanishes at x = " + std::to_string(x));
  }
  const double tol = std::max(1e-12 * s * std::max(1.0, d.tail_rate()), 1e-300);
  const QuadResult tail = integrate_against_survival(d, [](double) { return 1.0; }, x, tol);
  return tail.value / s;
}

double moment(const LifeDistribution& d, double r, double tol) {
  if (!(r > 0.0)) throw InvalidArgument("moment: order must be positive");
  if (r == 1.0) return integrate_against_survival(d, [](double) { return 1.0; }, 0.0, tol).value;
  const QuadResult q = integrate_against_survival(
      d, [r](double x) { return std::pow(x, r - 1.0); }, 0.0, tol / r);
  return r * q.value;
}

double mean_of(const LifeDistribution& d, double tol) {
  return integrate_against_survival(d, [](double) { return 1.0; }, 0.0, tol).value;
}

LifeDistribution exponential(double mean) {
  if (!(mean > 0.0)) throw InvalidArgument("exponential: mean must be positive");
  return LifeDistribution([mean](double x) { return std::exp(-x / mean); }, {}, mean, mean,
                          LifeDistribution::Builtin{"exponential", {{"mean", mean}}});
}

LifeDistribution weibull(double shape, double scale) {
  if (!(shape >= 1.0)) {
    throw InvalidArgument("weibull: shape must be >= 1 (exponentially dominated tail)");
  }
  if (!(scale > 0.0)) throw InvalidArgument("weibull: scale must be positive");
  return LifeDistribution(
      [shape, scale](double x) { return std::exp(-std::pow(x / scale, shape)); }, {}, scale,
      scale * gamma_fn(1.0 + 1.0 / shape),
      LifeDistribution::Builtin{"weibull", {{"shape", shape}, {"scale", scale}}});
}

LifeDistribution catalog(const std::string& name,
                         const std::map<std::string, double>& params) {
  if (name == "exponential") return exponential(param_or(params, "mean", 1.0));
  if (name == "weibull") {
    return weibull(param_or(params, "shape", 2.0), param_or(params, "scale", 1.0));
  }
  if (name == "example_3_1") {
    RealFn s = [](double x) {
      if (x <= 1.0) return 25.0 / ((5.0 + x) * (5.0 + x));
      if (x <= 28.0) return 75.0 / 2.0 * std::pow((55.0 - x) / 54.0, 8.0) / 54.0;
      return 25.0 / (9.0 * 1024.0) * std::exp((28.0 - x) / 3.0);
    };
    return LifeDistribution(std::move(s), {1.0, 28.0}, 3.0, 5.0,
                            LifeDistribution::Builtin{name, {}});
  }
  if (name == "example_3_3") {
    RealFn s = [](double x) {
      if (x <= 2.0) return 4.0 / ((x + 2.0) * (x + 2.0));
      if (x <= 4.0) return (10.0 - x) / 32.0;
      return 3.0 / 16.0 * std::exp((4.0 - x) / 3.0);
    };
    return LifeDistribution(std::move(s), {2.0, 4.0}, 3.0, 2.0,
                            LifeDistribution::Builtin{name, {}});
  }
  if (name == "example_3_4") {
    RealFn s = [](double x) {
      if (x < 1.0) return 4.0 / ((2.0 + x) * (2.0 + x));
      if (x < 3.0) return 2.0 / 27.0 * (7.0 - x);
      return 2.0 * x * (3.0 + x) * (3.0 + x) / 729.0 * std::exp(3.0 - x);
    };
    return LifeDistribution(std::move(s), {1.0, 3.0}, 1.5, 2.0,
                            LifeDistribution::Builtin{name, {}});
  }
  std::string known;
  for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidArgument("catalog: unknown distribution '" + name + "' (known: " + known + ")");
}

std::vector<std::string> catalog_names() {
  return {"exponential", "weibull", "example_3_1", "example_3_3", "example_3_4"};
}

MrlSpec example_mrl_spec(const std::string& name) {
  using K = SegmentKind;
  if (name == "example_3_1") {
    return MrlSpec{{{0.0, 1.0, K::Affine, 5.0, 1.0},
                    {1.0, 28.0, K::Affine, 55.0 / 9.0, -1.0 / 9.0},
                    {28.0, kInf, K::Affine, 3.0, 0.0}}};
  }
  if (name == "example_3_3") {
    return MrlSpec{{{0.0, 2.0, K::Affine, 2.0, 1.0},
                    {2.0, 4.0, K::Affine, 5.0, -0.5},
                    {4.0, kInf, K::Affine, 3.0, 0.0}}};
  }
  if (name == "example_3_4") {
    return MrlSpec{{{0.0, 1.0, K::Affine, 2.0, 1.0},
                    {1.0, 3.0, K::Affine, 3.5, -0.5},
                    {3.0, kInf, K::Reciprocal, 1.0, 3.0}}};
  }
  throw InvalidArgument("example_mrl_spec: no MRL display for '" + name + "'");
}

}  // namespace agewise
