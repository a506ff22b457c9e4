#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agewise/distributions.hpp"

namespace agewise {

enum class BoundId { NbueUpper, NbueLower, NwbueA, NwbueB, NwbueC, Tail, Phi };
enum class Direction { AtMost, AtLeast };

std::string to_string(BoundId id);
std::string to_string(Direction direction);

struct BoundEntry {
  BoundId id = BoundId::NbueUpper;
  double lhs = 0.0;  // the bounded quantity for this entry
  double value = 0.0;
  Direction direction = Direction::AtMost;
  bool satisfied = false;
  double margin = 0.0;  // value - lhs for AtMost, lhs - value for AtLeast
  std::optional<double> at;  // evaluation age for TAIL entries
};

struct BoundReport {
  double quantity = 0.0;
  std::vector<BoundEntry> bounds;

  bool all_satisfied() const;
  const BoundEntry* find(BoundId id) const;
};

// quantity <= value*(1+1e-8) + 1e-10 (and dually), so quadrature noise never
// flips an equality case.
bool bound_satisfied(double quantity, double value, Direction direction);
BoundEntry make_entry(BoundId id, double lhs, double value, Direction direction);

/// int_x^inf S(t) dt against mu*exp(-x/mu) at every x. `quantity` is the mean.
BoundReport tail_bound_check(const LifeDistribution& d, std::span<const double> xs);

/// Gamma(r+1) * mu^r.
double nbue_moment_bound(double mu, double r);

/// mu_r against Gamma(r+1) mu^r: an upper bound for r >= 1, lower for r < 1.
BoundReport nbue_moment_check(const LifeDistribution& d, double r);

/// int phi(y) S(y) dy against int phi(y) exp(-y/mu) dy for a caller-certified
/// nonnegative nondecreasing phi.
BoundReport check_phi_inequality(const LifeDistribution& d, const RealFn& phi,
                                 double tol = kQuadTol);

// Form of the partial sum in bound (b): the Poisson partial sum
// sum_{j<r} (x0/mu)^j / j!, or the literal sum_{j<r} (x0/mu)^r / r!.
enum class BoundBForm { PoissonPartialSum, Literal };

/// r * exp(x0/mu) * int_{x0}^inf x^(r-1) exp(-x/mu) dx. Integer r uses the
/// closed-form incomplete gamma; other orders go through quadrature.
double nwbue_bound_a(double mu, double x0, double r);
/// x0^r + mu^r r! * partial sum; integer r >= 1 only.
double nwbue_bound_b(double mu, double x0, int r, BoundBForm form = BoundBForm::PoissonPartialSum);
/// mu^r Gamma(r+1) exp(x0/mu), r >= 1.
double nwbue_bound_c(double mu, double x0, double r);

/// Moment bounds for an NWBUE(x0) distribution: (a) always, with direction
/// flipped for r < 1; (b) for integer r >= 1; (c) for r >= 1.
BoundReport nwbue_bounds(const LifeDistribution& d, double x0, double r,
                         BoundBForm form = BoundBForm::PoissonPartialSum);

struct Deficiency {
  double t = 0.0;
  double value = 0.0;
};

/// D(t) = mu^t Gamma(t+1) - E X^t; negative values break the NBUE upper bound.
Deficiency deficiency(const LifeDistribution& d, double t);

}  // namespace agewise
