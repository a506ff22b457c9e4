#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "agewise/numerics.hpp"

namespace agewise {

enum class SegmentKind { Affine, Reciprocal };

// One piece of a piecewise MRL: a + b*x (Affine) or a + b/x (Reciprocal) on
// [from, to]. `to` may be +inf on the final segment.
struct MrlSegment {
  double from = 0.0;
  double to = 0.0;
  SegmentKind kind = SegmentKind::Affine;
  double a = 0.0;
  double b = 0.0;

  double value(double x) const;
  double derivative(double x) const;
  // Closed-form integral of 1/e(u) over [lo, hi] inside this segment.
  double reciprocal_integral(double lo, double hi) const;
};

// Piecewise analytic mean-residual-life function starting at age 0.
struct MrlSpec {
  std::vector<MrlSegment> segments;

  // e(x); evaluates the segment containing x (right-continuous at knots).
  double operator()(double x) const;
  double mean() const { return (*this)(0.0); }
  std::vector<double> knots() const;
  // Right end of the support when the final affine segment runs down to 0.
  std::optional<double> support_end() const;
};

MrlSpec constant_mrl(double mean);

/// Immutable life distribution on [0, inf), defined by its survival function.
class LifeDistribution {
 public:
  struct FromSurvival {};
  struct FromMrl {
    MrlSpec spec;
  };
  struct Builtin {
    std::string name;
    std::map<std::string, double> params;
  };
  using Origin = std::variant<FromSurvival, FromMrl, Builtin>;

  /// `tail_rate` certifies survival(x) <= C exp(-x/tail_rate) eventually. A
  /// missing `mean` is derived by quadrature; a finite `support_end` means
  /// survival vanishes from there on.
  LifeDistribution(RealFn survival, std::vector<double> knots, double tail_rate,
                   std::optional<double> mean = std::nullopt,
                   Origin origin = FromSurvival{},
                   std::optional<double> support_end = std::nullopt);

  double survival(double x) const;
  const std::vector<double>& knots() const { return knots_; }
  double mean() const { return mean_; }
  double tail_rate() const { return tail_rate_; }
  std::optional<double> support_end() const { return support_end_; }
  const Origin& origin() const { return origin_; }
  std::string describe() const;

  /// Distribution of c*X: survival x -> survival(x / c).
  LifeDistribution scaled(double c) const;

 private:
  std::shared_ptr<const RealFn> survival_;
  std::vector<double> knots_;
  double tail_rate_;
  double mean_;
  Origin origin_;
  std::optional<double> support_end_;
};

/// Density survival(x)/mean of the first derived (equilibrium) distribution.
class EquilibriumDensity {
 public:
  explicit EquilibriumDensity(LifeDistribution base) : base_(std::move(base)) {}
  double operator()(double x) const { return base_.survival(x) / base_.mean(); }
  const LifeDistribution& base() const { return base_; }
  double total_mass(double tol = kQuadTol) const;

 private:
  LifeDistribution base_;
};

/// Integral of weight(x) * survival(x) over [from, inf), split at the knots and
/// truncated at the support end or by the certified exponential tail.
QuadResult integrate_against_survival(const LifeDistribution& d, const RealFn& weight,
                                      double from, double tol = kQuadTol);

/// Survival from a piecewise MRL via
///   S(x) = e(0)/e(x) * exp(-int_0^x du / e(u)),
/// with the integral in closed form on every segment. The spec must pass
/// validate_mrl; a failing spec raises ValidationError naming the conditions.
LifeDistribution from_mrl(const MrlSpec& spec, double tol = kQuadTol);

/// e(x) = (1/S(x)) * int_x^inf S(t) dt, computed from the survival function.
double mrl_of(const LifeDistribution& d, double x);

/// r-th raw moment r * int_0^inf x^(r-1) S(x) dx.
double moment(const LifeDistribution& d, double r, double tol = kQuadTol);

/// Mean by quadrature of the survival function.
double mean_of(const LifeDistribution& d, double tol = kQuadTol);

// Catalog: "exponential" {mean}, "weibull" {shape >= 1, scale}, and the
// closed-form piecewise models "example_3_1", "example_3_3", "example_3_4".
LifeDistribution catalog(const std::string& name,
                         const std::map<std::string, double>& params = {});
std::vector<std::string> catalog_names();

LifeDistribution exponential(double mean);
LifeDistribution weibull(double shape, double scale = 1.0);

/// MRL displays matching the piecewise catalog models.
MrlSpec example_mrl_spec(const std::string& name);

}  // namespace agewise
