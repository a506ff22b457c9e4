#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace agewise {

using RealFn = std::function<double(double)>;

inline constexpr double kQuadTol = 1e-10;
inline constexpr double kRootTol = 1e-10;
inline constexpr double kSignTol = 1e-9;
// Semi-infinite integrals are never truncated beyond a + kMaxHorizonRates * tail_rate.
inline constexpr double kMaxHorizonRates = 400.0;

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// The interval is pre-split at every breakpoint strictly inside (a, b), so
/// derivative kinks at known knots never sit inside a panel. Refinement
/// bisects the panel with the largest error estimate until the summed
/// estimate drops below `tol` (or below the roundoff floor of the result).
/// Throws NonConvergence carrying the best estimate when the panel budget is
/// exhausted.
QuadResult integrate(const RealFn& f, double a, double b, double tol = kQuadTol,
                     std::span<const double> breakpoints = {});

/// Integral of f over [a, inf) for f eventually dominated by C*exp(-x/tail_rate).
///
/// The horizon T is advanced in steps of tail_rate until an exponential
/// majorant fitted to f just past T bounds the neglected tail by tol/10,
/// then [a, T] is handed to integrate(). T never exceeds
/// a + kMaxHorizonRates * tail_rate.
QuadResult integrate_semi_infinite(const RealFn& f, double a, double tail_rate,
                                   double tol = kQuadTol,
                                   std::span<const double> breakpoints = {});

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Root of f inside a sign-change bracket: secant steps, safeguarded by
/// bisection whenever the secant iterate is poor. Returns once |f(x)| <= tol
/// or the bracket is narrower than tol. The result always lies in `bracket`.
double find_root(const RealFn& f, Bracket bracket, double tol = kRootTol);

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

char sign_char(Sign s);

// A maximal run of grid points sharing one sign class. `first`/`last` index
// the scan grid, `from`/`to` are the corresponding abscissae.
struct SignRun {
  Sign sign = Sign::Zero;
  std::size_t first = 0;
  std::size_t last = 0;
  double from = 0.0;
  double to = 0.0;
};

// Transition between two adjacent nonzero runs. `bracket.lo` is the last grid
// point classified `from`, `bracket.hi` the first classified `to`; when zero
// points sit between them `strict` is false and f may not change sign on the
// endpoints themselves.
struct SignCrossing {
  Sign from = Sign::Zero;
  Sign to = Sign::Zero;
  Bracket bracket;
  bool strict = true;
};

struct SignPattern {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<SignRun> runs;
  std::vector<SignCrossing> crossings;
  double zero_threshold = 0.0;

  // Compressed run signature, e.g. "+-" or "0".
  std::string signature() const;
};

/// Classify pre-sampled values into +/0/- runs. Values with |v| <= tol*scale,
/// scale = max(1, max|v|), are zero; zero runs adjacent to a nonzero run are
/// absorbed into it, so only an all-zero input yields a "0" run.
SignPattern sign_pattern_from_samples(std::vector<double> grid,
                                      std::vector<double> values, double tol);

/// Sample f on grid_n equally spaced points of [a, b] and classify the signs.
SignPattern scan_sign_pattern(const RealFn& f, double a, double b,
                              std::size_t grid_n, double tol = kSignTol);

/// Gamma function for real x > 0 (Lanczos, g = 7, 9 terms).
double gamma_fn(double x);

}  // namespace agewise
