#include "agewise/ageing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "agewise/errors.hpp"

namespace agewise {

namespace {

constexpr double kContinuityTol = 1e-9;
constexpr double kSlopeTol = 1e-9;
constexpr double kHorizonSurvival = 1e-9;
constexpr double kCrossingRootTol = 1e-12;
constexpr std::size_t kSlopeGrid = 64;

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(9);
  out << x;
  return out.str();
}

bool near(double x, double y) {
  return std::abs(x - y) <= kContinuityTol * std::max(1.0, std::abs(x));
}

Sign classify(double v, double threshold) {
  if (std::abs(v) <= threshold) return Sign::Zero;
  return v > 0.0 ? Sign::Positive : Sign::Negative;
}

double resolve_horizon(const LifeDistribution& d, const ScanOptions& opts) {
  const double automatic = default_horizon(d);
  double horizon = std::max(opts.horizon, automatic);
  if (auto end = d.support_end(); end && horizon >= *end) horizon = automatic;
  return horizon;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + step * static_cast<double>(i);
  out.back() = b;
  return out;
}

// Root of g in a transition bracket. A strict sign change goes to find_root;
// across a zero plateau the leftmost point leaving the `from` class is taken.
double locate_transition(const RealFn& g, const SignCrossing& crossing, double threshold) {
  if (crossing.strict) {
    return find_root(g, crossing.bracket, kCrossingRootTol);
  }
  double lo = crossing.bracket.lo;
  double hi = crossing.bracket.hi;
  for (int i = 0; i < 200 && hi - lo > kCrossingRootTol * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (classify(g(mid), threshold) == crossing.from) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

AgeingClass crossing_label(const std::string& signature) {
  if (signature == "0") return AgeingClass::Exponential;
  if (signature == "-") return AgeingClass::Nbue;
  if (signature == "+") return AgeingClass::Nwue;
  if (signature == "+-") return AgeingClass::Nwbue;
  if (signature == "-+") return AgeingClass::Nbwue;
  return AgeingClass::Other;
}

MrlShape shape_label(const std::string& signature) {
  if (signature == "0") return MrlShape::Constant;
  if (signature == "+") return MrlShape::Increasing;
  if (signature == "-") return MrlShape::Decreasing;
  if (signature == "+-") return MrlShape::Idmrl;
  if (signature == "-+") return MrlShape::Dimrl;
  return MrlShape::Other;
}

// Golden-section search for the extremum of f on [lo, hi]; `sense` +1
// maximises, -1 minimises.
double golden_extremum(const RealFn& f, double lo, double hi, double sense) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = sense * f(x1);
  double f2 = sense * f(x2);
  for (int i = 0; i < 100 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = sense * f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = sense * f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool MrlValidityReport::violates(const std::string& condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const MrlViolation& v) { return v.condition == condition; });
}

std::string MrlValidityReport::summary() const {
  if (valid) return "valid";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.condition + " at x=" + fmt(v.location) + ": " + v.detail;
  }
  return out;
}

MrlValidityReport validate_mrl(const MrlSpec& spec) {
  MrlValidityReport report;
  const auto fail = [&](std::string condition, double location, std::string detail) {
    report.violations.push_back({std::move(condition), location, std::move(detail)});
  };

  const auto& segs = spec.segments;
  if (segs.empty()) {
    fail("STRUCTURE", 0.0, "no segments");
    report.valid = false;
    return report;
  }
  bool structural = false;
  if (segs.front().from != 0.0) {
    fail("STRUCTURE", segs.front().from, "first segment must start at 0");
    structural = true;
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (!std::isfinite(s.a) || !std::isfinite(s.b) || !std::isfinite(s.from) ||
        std::isnan(s.to)) {
      fail("STRUCTURE", s.from, "non-finite segment coefficients");
      structural = true;
    } else if (!(s.from < s.to)) {
      fail("STRUCTURE", s.from, "segment requires from < to");
      structural = true;
    } else if (!std::isfinite(s.to) && i + 1 != segs.size()) {
      fail("STRUCTURE", s.from, "only the final segment may be unbounded");
      structural = true;
    }
    if (i > 0 && !near(segs[i - 1].to, s.from)) {
      fail("STRUCTURE", s.from, "segments are not contiguous");
      structural = true;
    }
  }
  if (structural) {
    report.valid = false;
    return report;
  }

  const auto& last = segs.back();
  const bool terminating = std::isfinite(last.to);

  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const bool final_segment = i + 1 == segs.size();
    const std::string range = "[" + fmt(s.from) + ", " + fmt(s.to) + "]";

    // V1: both kinds are monotone on a segment, so the end values decide.
    if (s.kind == SegmentKind::Reciprocal && s.from == 0.0) {
      fail("V1", 0.0, "a + b/x segment is unbounded or undefined at 0");
    } else {
      const double left = s.value(s.from);
      if (!(left > 0.0)) fail("V1", s.from, "e = " + fmt(left) + " <= 0");
      double right;
      if (std::isfinite(s.to)) {
        right = s.value(s.to);
      } else if (s.kind == SegmentKind::Affine) {
        right = s.b < 0.0 ? -std::numeric_limits<double>::infinity()
                          : (s.b > 0.0 ? std::numeric_limits<double>::infinity() : s.a);
      } else {
        right = s.a;
      }
      const bool end_may_vanish = final_segment && terminating;
      const bool limit_may_vanish =
          final_segment && !terminating && s.kind == SegmentKind::Reciprocal && s.a == 0.0 &&
          s.b > 0.0;
      if (end_may_vanish) {
        if (right < -kContinuityTol) fail("V1", s.to, "e = " + fmt(right) + " < 0");
      } else if (!(right > 0.0) && !limit_may_vanish) {
        fail("V1", std::isfinite(s.to) ? s.to : s.from,
             "e becomes nonpositive on " + range);
      }
    }

    // V2: e' >= -1 on a grid (knots included).
    const double span_end = std::isfinite(s.to) ? s.to : s.from + std::max(1.0, s.from);
    for (std::size_t k = 0; k <= kSlopeGrid; ++k) {
      const double x = s.from + (span_end - s.from) * static_cast<double>(k) / kSlopeGrid;
      if (s.kind == SegmentKind::Reciprocal && x == 0.0) continue;
      const double slope = s.derivative(x);
      if (slope < -1.0 - kSlopeTol) {
        fail("V2", x,
             "e'(x) = " + fmt(slope) + " < -1 on " + range +
                 " (survival would increase)");
        break;
      }
    }

    // V3
    if (!final_segment) {
      const double left = s.value(s.to);
      const double right = segs[i + 1].value(segs[i + 1].from);
      if (!near(left, right)) {
        fail("V3", s.to, "jump from " + fmt(left) + " to " + fmt(right));
      }
    }
  }

  // V4
  if (terminating) {
    const double end_value = last.value(last.to);
    if (!(last.kind == SegmentKind::Affine && last.b < 0.0 &&
          std::abs(end_value) <= kContinuityTol * std::max(1.0, std::abs(last.a)))) {
      fail("V4", last.to,
           "bounded final segment must end where e reaches 0 (e = " + fmt(end_value) + ")");
    }
  } else {
    const bool diverges = (last.kind == SegmentKind::Affine && last.b >= 0.0) ||
                          (last.kind == SegmentKind::Reciprocal && last.a > 0.0);
    if (!diverges) {
      fail("V4", last.from, "int du/e(u) does not diverge on the unbounded final segment");
    }
  }

  report.valid = report.violations.empty();
  return report;
}

std::string to_string(AgeingClass label) {
  switch (label) {
    case AgeingClass::Exponential:
      return "EXPONENTIAL";
    case AgeingClass::Nbue:
      return "NBUE";
    case AgeingClass::Nwue:
      return "NWUE";
    case AgeingClass::Nwbue:
      return "NWBUE";
    case AgeingClass::Nbwue:
      return "NBWUE";
    case AgeingClass::Other:
      return "OTHER";
  }
  return "OTHER";
}

std::string to_string(MrlShape label) {
  switch (label) {
    case MrlShape::Increasing:
      return "INCREASING";
    case MrlShape::Decreasing:
      return "DECREASING";
    case MrlShape::Idmrl:
      return "IDMRL";
    case MrlShape::Dimrl:
      return "DIMRL";
    case MrlShape::Constant:
      return "CONSTANT";
    case MrlShape::Other:
      return "OTHER";
  }
  return "OTHER";
}

double default_horizon(const LifeDistribution& d) {
  double lo = 0.0;
  double hi = d.mean();
  for (int i = 0; i < 1100 && !(d.survival(hi) < kHorizonSurvival); ++i) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-6 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (d.survival(mid) < kHorizonSurvival) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ClassVerdict classify_crossing(const LifeDistribution& d, const ScanOptions& opts) {
  ClassVerdict verdict;
  verdict.mu = d.mean();
  verdict.horizon = resolve_horizon(d, opts);
  const double mu = verdict.mu;
  const RealFn g = [&d, mu](double x) { return (mrl_of(d, x) - mu) / mu; };

  const SignPattern pattern = scan_sign_pattern(g, 0.0, verdict.horizon, opts.grid_n, opts.tol);
  verdict.signature = pattern.signature();
  verdict.label = crossing_label(verdict.signature);
  for (const auto& crossing : pattern.crossings) {
    verdict.crossings.push_back(locate_transition(g, crossing, pattern.zero_threshold));
  }
  std::sort(verdict.crossings.begin(), verdict.crossings.end());
  if (verdict.label == AgeingClass::Nwbue || verdict.label == AgeingClass::Nbwue) {
    verdict.change_point = verdict.crossings.front();
  }
  return verdict;
}

MrlShapeVerdict classify_mrl_shape(const LifeDistribution& d, const ScanOptions& opts) {
  if (opts.grid_n < 3) throw InvalidArgument("classify_mrl_shape: grid_n must be >= 3");
  MrlShapeVerdict verdict;
  verdict.horizon = resolve_horizon(d, opts);
  const double mu = d.mean();

  const std::vector<double> grid = linspace(0.0, verdict.horizon, opts.grid_n);
  std::vector<double> e(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) e[i] = mrl_of(d, grid[i]);

  std::vector<double> left(grid.begin(), grid.end() - 1);
  std::vector<double> steps(left.size());
  for (std::size_t i = 0; i < steps.size(); ++i) steps[i] = (e[i + 1] - e[i]) / mu;
  const SignPattern pattern = sign_pattern_from_samples(left, steps, opts.tol);
  verdict.signature = pattern.signature();
  verdict.label = shape_label(verdict.signature);
  if (verdict.label != MrlShape::Idmrl && verdict.label != MrlShape::Dimrl) return verdict;

  const double sense = verdict.label == MrlShape::Idmrl ? 1.0 : -1.0;
  const SignCrossing& turn = pattern.crossings.front();
  // Step i spans [grid[i], grid[i+1]]; the extremum of e lies on the grid
  // points between the last rising and first falling step.
  std::size_t first = 0;
  while (grid[first] < turn.bracket.lo) ++first;
  std::size_t last = first;
  while (grid[last] < turn.bracket.hi) ++last;
  ++last;
  std::size_t best = first;
  for (std::size_t i = first; i <= last; ++i) {
    if (sense * e[i] > sense * e[best]) best = i;
  }

  double turning = grid[best];
  if (turn.strict) {
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    const RealFn mrl = [&d](double x) { return mrl_of(d, x); };
    turning = golden_extremum(mrl, lo, hi, sense);
  }
  const double step = grid[1] - grid[0];
  double nearest = std::numeric_limits<double>::infinity();
  for (double knot : d.knots()) {
    if (std::abs(knot - turning) <= step && std::abs(knot - turning) < std::abs(nearest - turning)) {
      nearest = knot;
    }
  }
  if (std::isfinite(nearest)) turning = nearest;
  verdict.turning_point = turning;
  return verdict;
}

ClassVerdict resolve_idmrl(const LifeDistribution& d, const MrlShapeVerdict& shape,
                           const ScanOptions& opts) {
  if ((shape.label != MrlShape::Idmrl && shape.label != MrlShape::Dimrl) ||
      !shape.turning_point) {
    throw InvalidArgument("resolve_idmrl: shape must be IDMRL or DIMRL with a turning point, got " +
                          to_string(shape.label));
  }
  const bool idmrl = shape.label == MrlShape::Idmrl;
  ClassVerdict verdict;
  verdict.mu = d.mean();
  verdict.horizon = resolve_horizon(d, opts);
  const double mu = verdict.mu;
  const double tau = *shape.turning_point;
  const RealFn g = [&d, mu](double x) { return (mrl_of(d, x) - mu) / mu; };

  // Before the turning point g keeps the sign of the rising (falling) branch.
  const Sign early = idmrl ? Sign::Positive : Sign::Negative;
  const Sign late = idmrl ? Sign::Negative : Sign::Positive;
  const AgeingClass crossed = idmrl ? AgeingClass::Nwbue : AgeingClass::Nbwue;
  const AgeingClass uncrossed = idmrl ? AgeingClass::Nwue : AgeingClass::Nbue;
  const AgeingClass reversed = idmrl ? AgeingClass::Nbue : AgeingClass::Nwue;

  if (!(tau < verdict.horizon)) {
    verdict.label = uncrossed;
    verdict.signature = std::string(1, sign_char(early));
    return verdict;
  }

  const SignPattern pattern = scan_sign_pattern(g, tau, verdict.horizon, opts.grid_n, opts.tol);
  verdict.signature = pattern.signature();
  if (pattern.runs.front().sign == late) {
    verdict.label = reversed;
    return verdict;
  }
  for (const auto& crossing : pattern.crossings) {
    if (crossing.from == early && crossing.to == late) {
      const double x_star = locate_transition(g, crossing, pattern.zero_threshold);
      verdict.label = crossed;
      verdict.change_point = x_star;
      verdict.crossings.push_back(x_star);
      return verdict;
    }
  }
  verdict.label = pattern.runs.front().sign == Sign::Zero ? AgeingClass::Exponential : uncrossed;
  return verdict;
}

}  // namespace agewise
