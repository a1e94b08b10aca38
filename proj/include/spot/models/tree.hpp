#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "spot/dataset.hpp"
#include "spot/error.hpp"
#include "spot/rng.hpp"

namespace spot {

/**
 * CART regression tree: greedy axis-aligned splits minimizing the total
 * within-node sum of squared errors. Points with x < threshold go left.
 */
class RegressionTree {
 public:
  struct Options {
    long long min_node = 5;
    long long max_depth = 30;
    long long mtry = 0;  // 0: consider every feature at every split
  };

  struct Node {
    bool is_leaf = true;
    double prediction = 0.0;  // mean of the node's y values
    std::size_t n_obs = 0;
    int feature = -1;
    double threshold = 0.0;
    int left = -1, right = -1;
    int depth = 0;
  };

  static RegressionTree fit(const Dataset& data, const Options& options,
                            Rng* rng = nullptr) {
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), 0);
    return fit(data, rows, options, rng);
  }

  /// Fits on a row subset (forest bootstrap hook); rows may repeat.
  static RegressionTree fit(const Dataset& data,
                            const std::vector<std::size_t>& rows,
                            const Options& options, Rng* rng = nullptr) {
    detail::check_dataset(data);
    if (rows.size() < 2) throw Error("tree fit needs at least 2 observations");
    if (options.mtry > data.X.cols())
      throw Error("mtry exceeds the number of features");
    RegressionTree tree;
    tree.n_features_ = static_cast<int>(data.X.cols());
    tree.grow(data, rows, 0, options, rng);
    return tree;
  }

  double predict(const std::vector<double>& x) const {
    return nodes_[leaf_index(x)].prediction;
  }

  double predict(const Eigen::RowVectorXd& x) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf)
      i = static_cast<std::size_t>(x(nodes_[i].feature) < nodes_[i].threshold
                                       ? nodes_[i].left
                                       : nodes_[i].right);
    return nodes_[i].prediction;
  }

  std::size_t leaf_index(const std::vector<double>& x) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf)
      i = static_cast<std::size_t>(
          x[static_cast<std::size_t>(nodes_[i].feature)] < nodes_[i].threshold
              ? nodes_[i].left
              : nodes_[i].right);
    return i;
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  int n_features() const { return n_features_; }

 private:
  int grow(const Dataset& data, const std::vector<std::size_t>& rows,
           int depth, const Options& options, Rng* rng) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    double sum = 0, sq = 0;
    for (std::size_t r : rows) {
      const double v = data.y(static_cast<Eigen::Index>(r));
      sum += v;
      sq += v * v;
    }
    const auto m = static_cast<double>(rows.size());
    const double sse = sq - sum * sum / m;
    nodes_[static_cast<std::size_t>(index)].prediction = sum / m;
    nodes_[static_cast<std::size_t>(index)].n_obs = rows.size();
    nodes_[static_cast<std::size_t>(index)].depth = depth;

    if (static_cast<long long>(rows.size()) < 2 * options.min_node ||
        depth >= options.max_depth)
      return index;

    const auto features = candidate_features(options, rng);
    int best_feature = -1;
    double best_threshold = 0, best_reduction = 0;
    std::vector<std::size_t> sorted(rows);
    for (int f : features) {
      std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        return data.X(static_cast<Eigen::Index>(a), f) <
               data.X(static_cast<Eigen::Index>(b), f);
      });
      double lsum = 0, lsq = 0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const double v = data.y(static_cast<Eigen::Index>(sorted[i]));
        lsum += v;
        lsq += v * v;
        const double xl = data.X(static_cast<Eigen::Index>(sorted[i]), f);
        const double xr = data.X(static_cast<Eigen::Index>(sorted[i + 1]), f);
        if (!(xl < xr)) continue;
        const auto nl = static_cast<double>(i + 1);
        const auto nr = m - nl;
        if (nl < static_cast<double>(options.min_node) ||
            nr < static_cast<double>(options.min_node))
          continue;
        const double rsum = sum - lsum, rsq = sq - lsq;
        const double child_sse =
            (lsq - lsum * lsum / nl) + (rsq - rsum * rsum / nr);
        const double reduction = sse - child_sse;
        if (reduction > best_reduction) {
          best_reduction = reduction;
          best_feature = f;
          best_threshold = 0.5 * (xl + xr);
        }
      }
    }

    if (best_feature < 0 || best_reduction < 1e-12) return index;

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows)
      (data.X(static_cast<Eigen::Index>(r), best_feature) < best_threshold
           ? left
           : right)
          .push_back(r);
    const int left_index = grow(data, left, depth + 1, options, rng);
    const int right_index = grow(data, right, depth + 1, options, rng);
    Node& node = nodes_[static_cast<std::size_t>(index)];
    node.is_leaf = false;
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = left_index;
    node.right = right_index;
    return index;
  }

  std::vector<int> candidate_features(const Options& options, Rng* rng) const {
    std::vector<int> all(static_cast<std::size_t>(n_features_));
    std::iota(all.begin(), all.end(), 0);
    if (options.mtry <= 0 || options.mtry >= n_features_ || !rng) return all;
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(options.mtry));
    for (long long i = 0; i < options.mtry; ++i) {
      const std::size_t pick = rng->index(all.size());
      chosen.push_back(all[pick]);
      all.erase(all.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  std::vector<Node> nodes_;
  int n_features_ = 0;
};

}  // namespace spot
