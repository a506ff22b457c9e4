#include "agewise/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "agewise/errors.hpp"

namespace agewise {

namespace {

constexpr std::size_t kMaxPanels = 4000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod abscissae; odd indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;

  bool operator<(const Panel& other) const { return error < other.error; }
};

// One G7K15 panel with the QUADPACK error heuristic.
Panel gk15(const RealFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);

  double result_gauss = f_center * kWg[3];
  double result_kronrod = f_center * kWgk[7];
  double result_abs = std::abs(result_kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double pair = f1[j] + f2[j];
    result_kronrod += kWgk[j] * pair;
    result_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * pair;
  }

  const double mean = 0.5 * result_kronrod;
  double result_asc = kWgk[7] * std::abs(f_center - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    result_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double value = result_kronrod * half;
  result_abs *= std::abs(half);
  result_asc *= std::abs(half);
  double error = std::abs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  if (result_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * result_abs, error);
  }
  if (!std::isfinite(value) || !std::isfinite(error)) {
    throw NonConvergence("integrand not finite on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]",
                         value, error);
  }
  return {a, b, value, error};
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, double tol,
                     std::span<const double> breakpoints) {
  if (!(tol > 0.0)) throw InvalidArgument("integrate: tol must be positive");
  if (!(a <= b)) throw InvalidArgument("integrate: requires a <= b");
  if (a == b) {
    (void)f(a);
    return {0.0, 0.0, 1};
  }

  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double total_error = 0.0;
  std::size_t evaluations = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gk15(f, cuts[i], cuts[i + 1]);
    evaluations += 15;
    total += p.value;
    total_error += p.error;
    panels.push(p);
  }

  const auto converged = [&] {
    return total_error <= std::max(tol, 200.0 * kEps * std::abs(total));
  };

  while (!converged()) {
    if (panels.size() >= kMaxPanels) {
      throw NonConvergence("integrate: panel budget exhausted on [" +
                               std::to_string(a) + ", " + std::to_string(b) + "]",
                           total, total_error);
    }
    Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NonConvergence("integrate: panel width underflow near " +
                               std::to_string(worst.a),
                           total, total_error);
    }
    panels.pop();
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Recompute from the panels to drop the drift of the running sums.
  total = 0.0;
  total_error = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    total_error += panels.top().error;
    panels.pop();
  }
  return {total, total_error, evaluations};
}

QuadResult integrate_semi_infinite(const RealFn& f, double a, double tail_rate,
                                   double tol, std::span<const double> breakpoints) {
  if (!(tail_rate > 0.0) || !std::isfinite(tail_rate)) {
    throw InvalidArgument("integrate_semi_infinite: tail_rate must be positive");
  }
  if (!(tol > 0.0)) throw InvalidArgument("integrate_semi_infinite: tol must be positive");

  double last_knot = a;
  for (double x : breakpoints) {
    if (x > last_knot && std::isfinite(x)) last_knot = x;
  }

  // Exponential majorant C*exp(-x/rate) fitted on [T, T + 2 rate]; its tail
  // integral from T is rate * max f(x) exp((x - T)/rate).
  const auto tail_estimate = [&](double t) {
    double worst = 0.0;
    for (double step : {0.0, 0.5, 1.0, 2.0}) {
      const double x = t + step * tail_rate;
      worst = std::max(worst, std::abs(f(x)) * std::exp(step));
    }
    return tail_rate * worst;
  };

  const double cap = a + kMaxHorizonRates * tail_rate;
  double horizon = std::max(a + 4.0 * tail_rate, last_knot);
  while (horizon < cap && !(tail_estimate(horizon) < tol / 10.0)) {
    horizon = std::min(cap, horizon + tail_rate);
  }

  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  for (double x = a + 4.0 * tail_rate; x < horizon; x += 4.0 * tail_rate) {
    cuts.push_back(x);
  }
  QuadResult result = integrate(f, a, horizon, tol, cuts);
  result.evaluations += 4;
  return result;
}

double find_root(const RealFn& f, Bracket bracket, double tol) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo < hi)) throw InvalidArgument("find_root: bracket requires lo < hi");
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NoSignChange("find_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }

  double x = 0.5 * (lo + hi);
  double previous_width = hi - lo;
  for (int iter = 0; iter < 400; ++iter) {
    const double width = hi - lo;
    // Secant (regula falsi) candidate, rejected near the ends or when the
    // bracket stalled on the previous step.
    double candidate = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    const double guard = 0.05 * width;
    if (!(candidate > lo + guard && candidate < hi - guard) ||
        width > 0.5 * previous_width) {
      candidate = 0.5 * (lo + hi);
    }
    previous_width = width;
    x = candidate;
    const double fx = f(x);
    if (fx == 0.0 || std::abs(fx) <= tol) return x;
    if (std::signbit(fx) == std::signbit(f_lo)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    if (hi - lo <= tol) break;
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

char sign_char(Sign s) {
  switch (s) {
    case Sign::Negative:
      return '-';
    case Sign::Zero:
      return '0';
    case Sign::Positive:
      return '+';
  }
  return '?';
}

std::string SignPattern::signature() const {
  std::string out;
  for (const auto& run : runs) out.push_back(sign_char(run.sign));
  return out;
}

SignPattern sign_pattern_from_samples(std::vector<double> grid,
                                      std::vector<double> values, double tol) {
  if (grid.size() != values.size() || grid.size() < 2) {
    throw InvalidArgument("sign pattern: need at least two samples");
  }
  SignPattern out;
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  out.zero_threshold = tol * scale;

  std::vector<Sign> signs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    signs[i] = std::abs(v) <= out.zero_threshold ? Sign::Zero
               : v > 0.0                        ? Sign::Positive
                                                : Sign::Negative;
  }

  // Raw runs, then zero runs folded into a nonzero neighbour (preferring the
  // left one) so plateaus never count as a pattern element of their own.
  std::vector<SignRun> raw;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (raw.empty() || raw.back().sign != signs[i]) {
      raw.push_back({signs[i], i, i, grid[i], grid[i]});
    } else {
      raw.back().last = i;
      raw.back().to = grid[i];
    }
  }
  std::vector<SignRun> merged;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    SignRun run = raw[k];
    if (run.sign == Sign::Zero) {
      if (!merged.empty()) {
        merged.back().last = run.last;
        merged.back().to = run.to;
        continue;
      }
      if (k + 1 < raw.size()) {
        run.sign = raw[k + 1].sign;
      }
    }
    if (!merged.empty() && merged.back().sign == run.sign) {
      merged.back().last = run.last;
      merged.back().to = run.to;
    } else {
      merged.push_back(run);
    }
  }
  out.runs = std::move(merged);

  for (std::size_t k = 0; k + 1 < out.runs.size(); ++k) {
    const SignRun& left = out.runs[k];
    const SignRun& right = out.runs[k + 1];
    std::size_t lo = left.last;
    while (lo > left.first && signs[lo] == Sign::Zero) --lo;
    std::size_t hi = right.first;
    while (hi < right.last && signs[hi] == Sign::Zero) ++hi;
    SignCrossing crossing;
    crossing.from = left.sign;
    crossing.to = right.sign;
    crossing.bracket = {grid[lo], grid[hi]};
    crossing.strict = (hi == lo + 1);
    out.crossings.push_back(crossing);
  }

  out.grid = std::move(grid);
  out.values = std::move(values);
  return out;
}

SignPattern scan_sign_pattern(const RealFn& f, double a, double b,
                              std::size_t grid_n, double tol) {
  if (grid_n < 2) throw InvalidArgument("scan_sign_pattern: grid_n must be >= 2");
  if (!(a < b)) throw InvalidArgument("scan_sign_pattern: requires a < b");
  std::vector<double> grid(grid_n);
  std::vector<double> values(grid_n);
  const double step = (b - a) / static_cast<double>(grid_n - 1);
  for (std::size_t i = 0; i < grid_n; ++i) {
    grid[i] = (i + 1 == grid_n) ? b : a + step * static_cast<double>(i);
    values[i] = f(grid[i]);
  }
  return sign_pattern_from_samples(std::move(grid), std::move(values), tol);
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw InvalidArgument("gamma_fn: requires x > 0");
  if (x < 0.5) return gamma_fn(x + 1.0) / x;

  static constexpr double kG = 7.0;
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

  const double z = x - 1.0;
  double series = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) {
    series += kCoef[i] / (z + static_cast<double>(i));
  }
  const double t = z + kG + 0.5;
  // t^(z+0.5) split in two halves so large x does not overflow before exp(-t).
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) *
         series;
}

}  // namespace agewise
