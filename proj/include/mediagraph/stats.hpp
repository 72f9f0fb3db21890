#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mediagraph/types.hpp"

namespace mediagraph {

/// One per-channel row entering a macro-average. Missing values (nullopt or
/// NaN) are skipped column by column.
struct GroupedRow {
  GroupKey key;
  std::vector<std::optional<double>> values;
};

struct GroupAverage {
  GroupKey key;
  std::size_t rows = 0;
  /// Mean per column, nullopt when no row of the group had a value.
  std::vector<std::optional<double>> means;
  std::vector<std::size_t> counts;
};

/// Unweighted mean of per-channel values within each group, ordered by
/// GroupKey. Groups without rows do not appear.
std::vector<GroupAverage> group_average(std::span<const GroupedRow> rows);

/// Empirical CCDF with the survival convention s_i = P(X >= x_i).
struct CcdfSeries {
  std::vector<double> values;    // distinct, ascending
  std::vector<double> survival;  // non-increasing, survival.front() == 1
};

/// Throws UndefinedMetric on empty input.
CcdfSeries ccdf(std::span<const double> values);

struct Correlation {
  double r = 0.0;
  /// Two-sided p-value from Student's t with n - 2 degrees of freedom.
  double p = 1.0;
  std::size_t n = 0;
};

/// Sample Pearson correlation. Needs |x| == |y| >= 3 and non-zero variance
/// in both; throws UndefinedMetric otherwise.
Correlation pearson(std::span<const double> x, std::span<const double> y);

}  // namespace mediagraph
