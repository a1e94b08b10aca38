#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spot/error.hpp"
#include "spot/tables.hpp"

namespace spot {

/// Observations for model fitting: rows of X are points in original units.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::vector<long long> config_ids;  // optional, empty when not tracked

  std::size_t size() const { return static_cast<std::size_t>(X.rows()); }
};

namespace detail {

inline void check_dataset(const Dataset& data) {
  if (data.X.rows() != data.y.size())
    throw Error("dataset row count mismatch between X and y");
  if (!data.X.allFinite() || !data.y.allFinite())
    throw Error("dataset contains non-finite values");
}

inline double merge_values(std::vector<double>& values, bool median) {
  if (!median) {
    double s = 0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  return m % 2 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

inline Dataset merge_results(const ResultTable& results, bool median) {
  if (results.rows.empty()) throw Error("no results to merge");
  std::vector<long long> order;
  std::vector<std::vector<double>> grouped;
  std::vector<std::vector<double>> points;
  for (const auto& rec : results.rows) {
    const auto it = std::find(order.begin(), order.end(), rec.config);
    if (it == order.end()) {
      order.push_back(rec.config);
      grouped.push_back({rec.y});
      points.push_back(rec.values);
    } else {
      grouped[static_cast<std::size_t>(it - order.begin())].push_back(rec.y);
    }
  }
  Dataset out;
  const auto n = static_cast<Eigen::Index>(results.roi.size());
  out.X.resize(static_cast<Eigen::Index>(order.size()), n);
  out.y.resize(static_cast<Eigen::Index>(order.size()));
  out.config_ids = order;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      out.X(static_cast<Eigen::Index>(i), j) =
          points[i][static_cast<std::size_t>(j)];
    out.y(static_cast<Eigen::Index>(i)) = merge_values(grouped[i], median);
  }
  check_dataset(out);
  return out;
}

}  // namespace detail

/// One row per configuration, y aggregated by the arithmetic mean.
inline Dataset merge_mean(const ResultTable& results) {
  return detail::merge_results(results, false);
}

inline Dataset merge_median(const ResultTable& results) {
  return detail::merge_results(results, true);
}

/// One row per result record, no aggregation.
inline Dataset raw_dataset(const ResultTable& results) {
  if (results.rows.empty()) throw Error("no results");
  Dataset out;
  const auto m = static_cast<Eigen::Index>(results.rows.size());
  const auto n = static_cast<Eigen::Index>(results.roi.size());
  out.X.resize(m, n);
  out.y.resize(m);
  out.config_ids.reserve(results.rows.size());
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& rec = results.rows[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j)
      out.X(i, j) = rec.values[static_cast<std::size_t>(j)];
    out.y(i) = rec.y;
    out.config_ids.push_back(rec.config);
  }
  detail::check_dataset(out);
  return out;
}

}  // namespace spot
