#include "agewise/bounds.hpp"

#include <cmath>

#include "agewise/errors.hpp"

namespace agewise {

namespace {

bool is_integer(double r) { return std::floor(r) == r; }

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  }
}

// sum_{j=0}^{n-1} z^j / j!
double poisson_partial_sum(double z, int n) {
  double term = 1.0;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    sum += term;
    term *= z / static_cast<double>(j + 1);
  }
  return sum;
}

double factorial(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= static_cast<double>(k);
  return out;
}

}  // namespace

std::string to_string(BoundId id) {
  switch (id) {
    case BoundId::NbueUpper:
      return "NBUE_UPPER";
    case BoundId::NbueLower:
      return "NBUE_LOWER";
    case BoundId::NwbueA:
      return "NWBUE_A";
    case BoundId::NwbueB:
      return "NWBUE_B";
    case BoundId::NwbueC:
      return "NWBUE_C";
    case BoundId::Tail:
      return "TAIL";
    case BoundId::Phi:
      return "PHI";
  }
  return "?";
}

std::string to_string(Direction direction) {
  return direction == Direction::AtMost ? "<=" : ">=";
}

bool BoundReport::all_satisfied() const {
  for (const auto& b : bounds) {
    if (!b.satisfied) return false;
  }
  return true;
}

const BoundEntry* BoundReport::find(BoundId id) const {
  for (const auto& b : bounds) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

bool bound_satisfied(double quantity, double value, Direction direction) {
  if (direction == Direction::AtMost) return quantity <= value * (1.0 + 1e-8) + 1e-10;
  return quantity >= value * (1.0 - 1e-8) - 1e-10;
}

BoundEntry make_entry(BoundId id, double lhs, double value, Direction direction) {
  BoundEntry entry;
  entry.id = id;
  entry.lhs = lhs;
  entry.value = value;
  entry.direction = direction;
  entry.satisfied = bound_satisfied(lhs, value, direction);
  entry.margin = direction == Direction::AtMost ? value - lhs : lhs - value;
  return entry;
}

BoundReport tail_bound_check(const LifeDistribution& d, std::span<const double> xs) {
  BoundReport report;
  const double mu = d.mean();
  report.quantity = mu;
  for (double x : xs) {
    if (x < 0.0) throw InvalidArgument("tail_bound_check: ages must be nonnegative");
    const double lhs =
        x == 0.0 ? mean_of(d)
                 : integrate_against_survival(d, [](double) { return 1.0; }, x).value;
    BoundEntry entry = make_entry(BoundId::Tail, lhs, mu * std::exp(-x / mu), Direction::AtMost);
    entry.at = x;
    report.bounds.push_back(entry);
  }
  return report;
}

double nbue_moment_bound(double mu, double r) {
  require_positive(mu, "nbue_moment_bound: mu");
  require_positive(r, "nbue_moment_bound: r");
  return gamma_fn(r + 1.0) * std::pow(mu, r);
}

BoundReport nbue_moment_check(const LifeDistribution& d, double r) {
  BoundReport report;
  report.quantity = moment(d, r);
  const bool upper = r >= 1.0;
  report.bounds.push_back(make_entry(upper ? BoundId::NbueUpper : BoundId::NbueLower,
                                     report.quantity, nbue_moment_bound(d.mean(), r),
                                     upper ? Direction::AtMost : Direction::AtLeast));
  return report;
}

BoundReport check_phi_inequality(const LifeDistribution& d, const RealFn& phi, double tol) {
  const double mu = d.mean();
  const double lhs = integrate_against_survival(d, phi, 0.0, tol).value;
  const RealFn weighted = [&](double y) { return phi(y) * std::exp(-y / mu); };
  const double rhs = integrate_semi_infinite(weighted, 0.0, mu, tol, d.knots()).value;
  BoundReport report;
  report.quantity = lhs;
  report.bounds.push_back(make_entry(BoundId::Phi, lhs, rhs, Direction::AtMost));
  return report;
}

double nwbue_bound_a(double mu, double x0, double r) {
  require_positive(mu, "nwbue_bound_a: mu");
  require_positive(r, "nwbue_bound_a: r");
  if (!(x0 >= 0.0)) throw InvalidArgument("nwbue_bound_a: x0 must be nonnegative");
  if (is_integer(r)) {
    // r e^{x0/mu} int_{x0}^inf x^{r-1} e^{-x/mu} dx = mu^r r! sum_{j<r} (x0/mu)^j / j!
    const int n = static_cast<int>(r);
    return std::pow(mu, r) * factorial(n) * poisson_partial_sum(x0 / mu, n);
  }
  // Substituting x = x0 + u keeps the exp(x0/mu) factor out of the integrand.
  const RealFn shifted = [mu, x0, r](double u) {
    return std::pow(x0 + u, r - 1.0) * std::exp(-u / mu);
  };
  const double scale = std::pow(mu, r);
  return r * integrate_semi_infinite(shifted, 0.0, mu, 1e-12 * scale).value;
}

double nwbue_bound_b(double mu, double x0, int r, BoundBForm form) {
  require_positive(mu, "nwbue_bound_b: mu");
  if (r < 1) throw InvalidArgument("nwbue_bound_b: order must be an integer >= 1");
  if (!(x0 >= 0.0)) throw InvalidArgument("nwbue_bound_b: x0 must be nonnegative");
  const double z = x0 / mu;
  const double sum = form == BoundBForm::PoissonPartialSum
                         ? poisson_partial_sum(z, r)
                         : r * std::pow(z, r) / factorial(r);
  return std::pow(x0, r) + std::pow(mu, r) * factorial(r) * sum;
}

double nwbue_bound_c(double mu, double x0, double r) {
  require_positive(mu, "nwbue_bound_c: mu");
  if (!(r >= 1.0)) throw InvalidArgument("nwbue_bound_c: order must be >= 1");
  return std::pow(mu, r) * gamma_fn(r + 1.0) * std::exp(x0 / mu);
}

BoundReport nwbue_bounds(const LifeDistribution& d, double x0, double r, BoundBForm form) {
  require_positive(r, "nwbue_bounds: r");
  if (!(x0 >= 0.0) || !std::isfinite(x0)) {
    throw InvalidArgument("nwbue_bounds: x0 must be finite and nonnegative");
  }
  const double mu = d.mean();
  BoundReport report;
  report.quantity = moment(d, r);
  const double q = report.quantity;
  report.bounds.push_back(make_entry(BoundId::NwbueA, q, nwbue_bound_a(mu, x0, r),
                                     r >= 1.0 ? Direction::AtMost : Direction::AtLeast));
  if (r >= 1.0 && is_integer(r)) {
    report.bounds.push_back(make_entry(BoundId::NwbueB, q,
                                       nwbue_bound_b(mu, x0, static_cast<int>(r), form),
                                       Direction::AtMost));
  }
  if (r >= 1.0) {
    report.bounds.push_back(
        make_entry(BoundId::NwbueC, q, nwbue_bound_c(mu, x0, r), Direction::AtMost));
  }
  return report;
}

Deficiency deficiency(const LifeDistribution& d, double t) {
  require_positive(t, "deficiency: t");
  return {t, nbue_moment_bound(d.mean(), t) - moment(d, t)};
}

}  // namespace agewise
