#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "spot/error.hpp"
#include "spot/param_space.hpp"
#include "spot/rng.hpp"
#include "spot/tables.hpp"

namespace spot {

namespace detail {

inline bool rows_equal(const std::vector<double>& a,
                       const std::vector<double>& b) {
  return a == b;
}

inline bool is_duplicate(const std::vector<std::vector<double>>& rows,
                         std::size_t upto, const std::vector<double>& row) {
  for (std::size_t i = 0; i < upto; ++i)
    if (rows_equal(rows[i], row)) return true;
  return false;
}

inline void require_nondegenerate(const RegionOfInterest& roi) {
  for (const auto& p : roi.params())
    if (!(p.low < p.high))
      throw Error("design: degenerate range for parameter '" + p.name + "'");
}

/**
 * Two-level resolution-III fraction in 2^k runs for n factors, where k is
 * the smallest integer with 2^k - 1 >= n. Each factor is assigned a distinct
 * nonzero k-bit word; its column at run m is the product of the base columns
 * selected by the word, so no main effect is aliased with another.
 * Returns rows of +-1, run-major.
 */
inline std::vector<std::vector<int>> two_level_fraction(std::size_t n) {
  std::size_t k = 1;
  while (((std::size_t{1} << k) - 1) < n) ++k;
  std::vector<std::uint64_t> words;
  words.reserve(n);
  for (std::size_t b = 0; b < k && words.size() < n; ++b)
    words.push_back(std::uint64_t{1} << b);
  for (std::uint64_t w = 3; words.size() < n; ++w)
    if (!std::has_single_bit(w)) words.push_back(w);

  const std::size_t runs = std::size_t{1} << k;
  std::vector<std::vector<int>> rows(runs, std::vector<int>(n));
  for (std::size_t m = 0; m < runs; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto w = words[j];
      const int parity =
          (std::popcount(w & static_cast<std::uint64_t>(m)) ^ std::popcount(w)) & 1;
      rows[m][j] = parity ? -1 : +1;
    }
  }
  return rows;
}

inline std::vector<std::vector<int>> full_factorial(std::size_t n) {
  const std::size_t runs = std::size_t{1} << n;
  std::vector<std::vector<int>> rows(runs, std::vector<int>(n));
  for (std::size_t m = 0; m < runs; ++m)
    for (std::size_t j = 0; j < n; ++j)
      rows[m][j] = (m >> j & 1) ? +1 : -1;
  return rows;
}

inline DesignTable from_coded_rows(const RegionOfInterest& roi,
                                   const std::vector<std::vector<double>>& coded) {
  const CodedTransform t(roi);
  DesignTable table{roi, {}};
  std::vector<std::vector<double>> seen;
  for (const auto& z : coded) {
    auto x = conform(t.from_coded(z), roi);
    if (is_duplicate(seen, seen.size(), x)) continue;  // INT rounding collision
    seen.push_back(x);
    DesignPoint pt;
    pt.values = std::move(x);
    table.rows.push_back(std::move(pt));
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    table.rows[i].config = static_cast<long long>(i + 1);
  return table;
}

}  // namespace detail

/**
 * Latin hypercube design: for every dimension the `size` samples occupy the
 * `size` equal-width strata of [low, high] exactly once, sampled uniformly
 * within the stratum; the stratum-to-row assignment is an independent random
 * permutation per dimension. INT/FACTOR rows that collide after rounding are
 * re-sampled within their strata up to 100 times, then kept as duplicates.
 */
inline DesignTable lhs_design(const RegionOfInterest& roi, std::size_t size,
                              Rng rng) {
  if (size == 0) throw Error("lhs_design: size must be >= 1");
  const std::size_t n = roi.size();

  std::vector<std::vector<std::size_t>> strata(n);
  for (std::size_t j = 0; j < n; ++j) strata[j] = rng.permutation(size);

  auto sample_row = [&](std::size_t i) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& p = roi[j];
      const double width = (p.high - p.low) / static_cast<double>(size);
      x[j] = p.low + (static_cast<double>(strata[j][i]) + rng.uniform()) * width;
    }
    return conform(x, roi);
  };

  std::vector<std::vector<double>> rows(size);
  for (std::size_t i = 0; i < size; ++i) {
    rows[i] = sample_row(i);
    for (int attempt = 0;
         attempt < 100 && detail::is_duplicate(rows, i, rows[i]); ++attempt)
      rows[i] = sample_row(i);
  }

  DesignTable table{roi, {}};
  table.rows.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    DesignPoint pt;
    pt.values = std::move(rows[i]);
    pt.config = static_cast<long long>(i + 1);
    table.rows.push_back(std::move(pt));
  }
  return table;
}

/**
 * Face-centered central composite design (axial distance 1, so star points
 * stay inside the region): 2^n corner points (a resolution-III fraction for
 * n > 5), 2n axial points, and one center point.
 */
inline DesignTable ccd_design(const RegionOfInterest& roi) {
  const std::size_t n = roi.size();
  detail::require_nondegenerate(roi);

  const auto corners =
      n <= 5 ? detail::full_factorial(n) : detail::two_level_fraction(n);

  std::vector<std::vector<double>> coded;
  coded.reserve(corners.size() + 2 * n + 1);
  for (const auto& c : corners) coded.emplace_back(c.begin(), c.end());
  for (std::size_t j = 0; j < n; ++j) {
    for (const double s : {-1.0, +1.0}) {
      std::vector<double> z(n, 0.0);
      z[j] = s;
      coded.push_back(std::move(z));
    }
  }
  coded.emplace_back(n, 0.0);  // center
  return detail::from_coded_rows(roi, coded);
}

/**
 * Two-level fractional factorial at coded +-1 plus one center point.
 * The full 2^n factorial is kept for n <= 4; larger n use a resolution-III
 * generator set.
 */
inline DesignTable fractional_factorial_res3(const RegionOfInterest& roi) {
  const std::size_t n = roi.size();
  detail::require_nondegenerate(roi);

  const auto corners =
      n <= 4 ? detail::full_factorial(n) : detail::two_level_fraction(n);

  std::vector<std::vector<double>> coded;
  coded.reserve(corners.size() + 1);
  for (const auto& c : corners) coded.emplace_back(c.begin(), c.end());
  coded.emplace_back(n, 0.0);
  return detail::from_coded_rows(roi, coded);
}

/**
 * Number configurations consecutively starting at `first_config` (the engine
 * passes one past the largest id already issued in the project) and stamp
 * every row with the given repeats, step, and base seed.
 */
inline DesignTable assign_metadata(DesignTable table, long long repeats,
                                   long long step, long long base_seed,
                                   long long first_config = 1) {
  if (repeats < 1) throw Error("assign_metadata: repeats must be >= 1");
  long long id = first_config;
  for (auto& row : table.rows) {
    row.config = id++;
    row.repeats = repeats;
    row.step = step;
    row.seed = base_seed;
  }
  return table;
}

}  // namespace spot
