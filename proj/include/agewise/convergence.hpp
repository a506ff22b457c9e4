#pragma once

#include <map>
#include <variant>
#include <vector>

#include "agewise/ageing.hpp"
#include "agewise/distributions.hpp"

namespace agewise {

// Weibull(shape 1 + 1/n, scale 1), converging to exponential(1).
struct WeibullShapeSeq {};
// exponential(mean 1 + 1/n), converging to exponential(1).
struct ExponentialMeanSeq {};
// Caller-supplied members, one per entry of the index set.
struct CustomSeq {
  std::vector<LifeDistribution> members;
};

using SequenceFamily = std::variant<WeibullShapeSeq, ExponentialMeanSeq, CustomSeq>;

struct SequenceSpec {
  SequenceFamily family;
  std::vector<int> index_set;
  LifeDistribution limit;
  // Grid used for each member's NBUE hypothesis check.
  std::size_t member_grid = 1024;
};

SequenceSpec weibull_shape_sequence(std::vector<int> index_set);
SequenceSpec exponential_mean_sequence(std::vector<int> index_set);
std::vector<int> doublings(int n_max);

struct ConvergenceRow {
  int n = 0;
  double mu_n = 0.0;
  std::map<double, double> moment_errors;  // r -> |mu_{n;r} - mu_r(limit)|
  double cdf_sup_distance = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::map<double, double> limit_moments;
  double limit_mean = 0.0;
  ClassVerdict limit_verdict;
};

inline constexpr std::size_t kCdfGrid = 512;

/// Tabulates means, moment errors and the sup-distance of survival functions
/// (512-point grid over the limit's horizon) along the sequence. Every member
/// must classify as NBUE or EXPONENTIAL, else HypothesisViolation naming n.
ConvergenceReport run_convergence(const SequenceSpec& spec, const std::vector<double>& orders);

}  // namespace agewise
