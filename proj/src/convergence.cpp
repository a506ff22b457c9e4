#include "agewise/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agewise/errors.hpp"

namespace agewise {

namespace {

LifeDistribution member(const SequenceSpec& spec, std::size_t k) {
  const int n = spec.index_set[k];
  if (std::holds_alternative<WeibullShapeSeq>(spec.family)) {
    return weibull(1.0 + 1.0 / n, 1.0);
  }
  if (std::holds_alternative<ExponentialMeanSeq>(spec.family)) {
    return exponential(1.0 + 1.0 / n);
  }
  return std::get<CustomSeq>(spec.family).members.at(k);
}

}  // namespace

SequenceSpec weibull_shape_sequence(std::vector<int> index_set) {
  return SequenceSpec{WeibullShapeSeq{}, std::move(index_set), exponential(1.0)};
}

SequenceSpec exponential_mean_sequence(std::vector<int> index_set) {
  return SequenceSpec{ExponentialMeanSeq{}, std::move(index_set), exponential(1.0)};
}

std::vector<int> doublings(int n_max) {
  if (n_max < 1) throw InvalidArgument("doublings: n_max must be >= 1");
  std::vector<int> out;
  for (long n = 1; n <= n_max; n *= 2) out.push_back(static_cast<int>(n));
  return out;
}

ConvergenceReport run_convergence(const SequenceSpec& spec, const std::vector<double>& orders) {
  if (spec.index_set.empty()) throw InvalidArgument("run_convergence: empty index set");
  for (std::size_t k = 1; k < spec.index_set.size(); ++k) {
    if (spec.index_set[k] <= spec.index_set[k - 1]) {
      throw InvalidArgument("run_convergence: index set must be increasing");
    }
  }
  if (spec.index_set.front() < 1) throw InvalidArgument("run_convergence: indices start at 1");
  if (const auto* custom = std::get_if<CustomSeq>(&spec.family);
      custom && custom->members.size() != spec.index_set.size()) {
    throw InvalidArgument("run_convergence: one custom member per index required");
  }
  for (double r : orders) {
    if (!(r > 0.0)) throw InvalidArgument("run_convergence: orders must be positive");
  }

  ConvergenceReport report;
  report.limit_mean = spec.limit.mean();
  for (double r : orders) report.limit_moments[r] = moment(spec.limit, r);
  report.limit_verdict = classify_crossing(spec.limit);

  const double horizon = report.limit_verdict.horizon;
  std::vector<double> grid(kCdfGrid);
  for (std::size_t i = 0; i < kCdfGrid; ++i) {
    grid[i] = horizon * static_cast<double>(i) / static_cast<double>(kCdfGrid - 1);
  }
  std::vector<double> limit_survival(kCdfGrid);
  for (std::size_t i = 0; i < kCdfGrid; ++i) limit_survival[i] = spec.limit.survival(grid[i]);

  for (std::size_t k = 0; k < spec.index_set.size(); ++k) {
    const int n = spec.index_set[k];
    const LifeDistribution d = member(spec, k);

    ScanOptions check;
    check.grid_n = spec.member_grid;
    const ClassVerdict verdict = classify_crossing(d, check);
    if (verdict.label != AgeingClass::Nbue && verdict.label != AgeingClass::Exponential) {
      throw HypothesisViolation("sequence member n=" + std::to_string(n) + " is " +
                                to_string(verdict.label) + ", not NBUE");
    }

    ConvergenceRow row;
    row.n = n;
    row.mu_n = d.mean();
    for (double r : orders) {
      row.moment_errors[r] = std::abs(moment(d, r) - report.limit_moments[r]);
    }
    for (std::size_t i = 0; i < kCdfGrid; ++i) {
      row.cdf_sup_distance =
          std::max(row.cdf_sup_distance, std::abs(d.survival(grid[i]) - limit_survival[i]));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace agewise
