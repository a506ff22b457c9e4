#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "agewise/distributions.hpp"

namespace agewise {

// Necessary conditions for a piecewise function to be a mean residual life.
//   STRUCTURE  segments contiguous from 0, ordered, finite coefficients
//   V1         e > 0 on the interior of the support
//   V2         x + e(x) nondecreasing, i.e. e' >= -1 (else survival increases)
//   V3         continuity at the knots
//   V4         int du/e(u) diverges at the right end of the support
struct MrlViolation {
  std::string condition;
  double location = 0.0;
  std::string detail;
};

struct MrlValidityReport {
  bool valid = true;
  std::vector<MrlViolation> violations;

  bool violates(const std::string& condition) const;
  // One line: "V2 at x=0: ...; V1 at ...".
  std::string summary() const;
};

MrlValidityReport validate_mrl(const MrlSpec& spec);

enum class AgeingClass { Exponential, Nbue, Nwue, Nwbue, Nbwue, Other };
enum class MrlShape { Increasing, Decreasing, Idmrl, Dimrl, Constant, Other };

std::string to_string(AgeingClass label);
std::string to_string(MrlShape label);

struct ClassVerdict {
  AgeingClass label = AgeingClass::Other;
  std::optional<double> change_point;
  double mu = 0.0;
  double horizon = 0.0;
  std::vector<double> crossings;
  std::string signature;
};

struct MrlShapeVerdict {
  MrlShape label = MrlShape::Other;
  std::optional<double> turning_point;
  double horizon = 0.0;
  std::string signature;
};

inline constexpr std::size_t kDefaultGrid = 4096;

struct ScanOptions {
  // <= 0 selects the default horizon (smallest x with survival(x) < 1e-9).
  double horizon = 0.0;
  std::size_t grid_n = kDefaultGrid;
  double tol = kSignTol;
};

/// Smallest x (to a relative 1e-6) with survival(x) < 1e-9, by doubling then
/// bisection; clipped to the support end when that comes first.
double default_horizon(const LifeDistribution& d);

/// Ageing class from the sign pattern of g(x) = e(x) - mu on [0, horizon].
/// The change point of an NWBUE/NBWUE verdict is the root of g inside the
/// transition bracket; on an equality plateau the leftmost point is reported.
ClassVerdict classify_crossing(const LifeDistribution& d, const ScanOptions& opts = {});

/// Monotonicity pattern of e on [0, horizon] from grid differences. The
/// turning point of an IDMRL/DIMRL verdict is refined by golden-section search
/// and snapped to a knot when one lies within a grid step.
MrlShapeVerdict classify_mrl_shape(const LifeDistribution& d, const ScanOptions& opts = {});

/// Resolves an IDMRL (DIMRL) shape: an x* > turning point with e(x*) = mu
/// makes the distribution NWBUE (NBWUE) with change point x*; otherwise it is
/// NWUE (NBUE). Throws InvalidArgument for any other shape.
ClassVerdict resolve_idmrl(const LifeDistribution& d, const MrlShapeVerdict& shape,
                           const ScanOptions& opts = {});

}  // namespace agewise
