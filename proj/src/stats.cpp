#include "mediagraph/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "mediagraph/error.hpp"

namespace mediagraph {

std::vector<GroupAverage> group_average(std::span<const GroupedRow> rows) {
  std::map<GroupKey, GroupAverage> groups;
  for (const auto& row : rows) {
    auto& g = groups[row.key];
    g.key = row.key;
    ++g.rows;
    if (g.means.size() < row.values.size()) {
      g.means.resize(row.values.size());
      g.counts.resize(row.values.size(), 0);
    }
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      const auto& v = row.values[i];
      if (!v || std::isnan(*v)) continue;
      g.means[i] = g.means[i].value_or(0.0) + *v;
      ++g.counts[i];
    }
  }
  std::vector<GroupAverage> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) {
    for (std::size_t i = 0; i < g.means.size(); ++i) {
      if (g.means[i]) *g.means[i] /= static_cast<double>(g.counts[i]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

CcdfSeries ccdf(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::UndefinedMetric, "CCDF of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  CcdfSeries series;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    series.values.push_back(sorted[i]);
    // Every element from position i onwards is >= sorted[i].
    series.survival.push_back(static_cast<double>(sorted.size() - i) / n);
  }
  return series;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::Mismatch,
                fmt::format("pearson needs equal lengths ({} vs {})", x.size(),
                            y.size()));
  }
  const auto n = x.size();
  if (n < 3) {
    throw Error(ErrorCode::UndefinedMetric,
                fmt::format("pearson needs at least 3 points, got {}", n));
  }
  // Two-pass centred sums; numerically steadier than the raw-moment form.
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::UndefinedMetric,
                "pearson correlation is undefined for zero variance");
  }
  Correlation c;
  c.n = n;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  if (std::abs(c.r) >= 1.0) {
    c.p = 0.0;
  } else {
    const double t = c.r * std::sqrt(df / (1.0 - c.r * c.r));
    boost::math::students_t dist(df);
    c.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  }
  return c;
}

}  // namespace mediagraph
