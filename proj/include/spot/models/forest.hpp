#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "spot/dataset.hpp"
#include "spot/error.hpp"
#include "spot/models/tree.hpp"
#include "spot/rng.hpp"

namespace spot {

/**
 * Bagged ensemble of CART trees. Each tree sees a bootstrap resample and a
 * random feature subset of size mtry at every split; the forest predicts the
 * mean of its trees. Tree RNG streams are derived from the caller's seed, so
 * results do not depend on evaluation order.
 */
class RandomForest {
 public:
  struct Options {
    long long n_trees = 500;
    long long mtry = 0;  // 0: max(1, features / 3)
    long long min_node = 5;
    long long max_depth = 30;
    bool bootstrap = true;  // test hook; disabled makes one tree = fit_tree
  };

  static RandomForest fit(const Dataset& data, const Options& options,
                          const Rng& rng) {
    detail::check_dataset(data);
    if (data.size() < 2) throw Error("forest fit needs at least 2 observations");
    if (options.n_trees < 1) throw Error("forest needs at least one tree");
    if (options.mtry > data.X.cols())
      throw Error("mtry exceeds the number of features");

    RegressionTree::Options tree_options;
    tree_options.min_node = options.min_node;
    tree_options.max_depth = options.max_depth;
    tree_options.mtry = options.mtry > 0
                            ? options.mtry
                            : std::max<long long>(1, data.X.cols() / 3);

    RandomForest forest;
    forest.trees_.reserve(static_cast<std::size_t>(options.n_trees));
    const std::size_t m = data.size();
    for (long long t = 0; t < options.n_trees; ++t) {
      Rng tree_rng = rng.derive(static_cast<std::uint64_t>(t));
      std::vector<std::size_t> rows(m);
      if (options.bootstrap) {
        for (std::size_t i = 0; i < m; ++i) rows[i] = tree_rng.index(m);
      } else {
        std::iota(rows.begin(), rows.end(), 0);
      }
      forest.trees_.push_back(
          RegressionTree::fit(data, rows, tree_options, &tree_rng));
    }
    return forest;
  }

  double predict(const std::vector<double>& x) const {
    double s = 0;
    for (const auto& tree : trees_) s += tree.predict(x);
    return s / static_cast<double>(trees_.size());
  }

  const std::vector<RegressionTree>& trees() const { return trees_; }

 private:
  std::vector<RegressionTree> trees_;
};

}  // namespace spot
