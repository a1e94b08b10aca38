#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "spot/dataset.hpp"
#include "spot/designs.hpp"
#include "spot/error.hpp"
#include "spot/models/forest.hpp"
#include "spot/models/gp.hpp"
#include "spot/models/linear.hpp"
#include "spot/models/tree.hpp"
#include "spot/param_space.hpp"
#include "spot/rng.hpp"

namespace spot {

/// Prediction interface shared by all surrogate models (original units).
class Metamodel {
 public:
  virtual ~Metamodel() = default;
  virtual double predict(const std::vector<double>& x) const = 0;
};

class LinearMetamodel : public Metamodel {
 public:
  explicit LinearMetamodel(LinearFit fit) : fit_(std::move(fit)) {}
  double predict(const std::vector<double>& x) const override {
    return fit_.predict(x);
  }
  const LinearFit& fit() const { return fit_; }

 private:
  LinearFit fit_;
};

class TreeMetamodel : public Metamodel {
 public:
  explicit TreeMetamodel(RegressionTree tree) : tree_(std::move(tree)) {}
  double predict(const std::vector<double>& x) const override {
    return tree_.predict(x);
  }
  const RegressionTree& tree() const { return tree_; }

 private:
  RegressionTree tree_;
};

class ForestMetamodel : public Metamodel {
 public:
  explicit ForestMetamodel(RandomForest forest) : forest_(std::move(forest)) {}
  double predict(const std::vector<double>& x) const override {
    return forest_.predict(x);
  }
  const RandomForest& forest() const { return forest_; }

 private:
  RandomForest forest_;
};

class GpMetamodel : public Metamodel {
 public:
  explicit GpMetamodel(GaussianProcess gp) : gp_(std::move(gp)) {}
  double predict(const std::vector<double>& x) const override {
    return gp_.predict(x);
  }
  const GaussianProcess& gp() const { return gp_; }

 private:
  GaussianProcess gp_;
};

namespace detail {

inline bool contains_row(const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& row) {
  for (const auto& r : rows)
    if (rows_equal(r, row)) return true;
  return false;
}

}  // namespace detail

/**
 * Samples l points uniformly in the region, drops duplicates of already
 * evaluated configurations (and within the sample), and returns the d points
 * with the smallest predicted value, ties broken by sample order. May return
 * fewer than d points when deduplication exhausts the sample.
 */
inline std::vector<std::vector<double>> propose_candidates(
    const Metamodel& model, const RegionOfInterest& roi, long long l,
    long long d, Rng& rng,
    const std::vector<std::vector<double>>& evaluated = {}) {
  if (d > l) throw Error("cannot select more candidates than samples");
  if (d < 1) throw Error("need at least one candidate");

  std::vector<std::vector<double>> samples;
  samples.reserve(static_cast<std::size_t>(l));
  for (long long i = 0; i < l; ++i) {
    std::vector<double> x(roi.size());
    for (std::size_t j = 0; j < roi.size(); ++j)
      x[j] = rng.uniform(roi[j].low, roi[j].high);
    x = conform(x, roi);
    if (detail::contains_row(evaluated, x) || detail::contains_row(samples, x))
      continue;
    samples.push_back(std::move(x));
  }

  std::vector<double> predicted(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    predicted[i] = model.predict(samples[i]);
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return predicted[a] < predicted[b];
  });

  std::vector<std::vector<double>> out;
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(d),
                                          samples.size());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i)
    out.push_back(samples[order[i]]);
  return out;
}

/**
 * Lets every model propose ceil(d / n_models) candidates from its own sample
 * (independent RNG substreams), then merges them round-robin, deduplicated,
 * truncated to d.
 */
inline std::vector<std::vector<double>> combine_proposals(
    const std::vector<const Metamodel*>& models, const RegionOfInterest& roi,
    long long l, long long d, Rng& rng,
    const std::vector<std::vector<double>>& evaluated = {}) {
  if (models.empty()) throw Error("no models to combine");
  const auto n_models = static_cast<long long>(models.size());
  const long long per_model = (d + n_models - 1) / n_models;

  std::vector<std::vector<std::vector<double>>> proposals;
  proposals.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    Rng stream = rng.derive(static_cast<std::uint64_t>(i));
    proposals.push_back(propose_candidates(
        *models[i], roi, l, std::min(per_model, l), stream, evaluated));
  }

  std::vector<std::vector<double>> out;
  for (std::size_t round = 0; static_cast<long long>(out.size()) < d; ++round) {
    bool any = false;
    for (const auto& p : proposals) {
      if (round >= p.size()) continue;
      any = true;
      if (!detail::contains_row(out, p[round])) {
        out.push_back(p[round]);
        if (static_cast<long long>(out.size()) == d) break;
      }
    }
    if (!any) break;
  }
  return out;
}

/// Model plugins selectable through seq.predictionModel.func.
enum class ModelPluginKind {
  kLm,            // quadratic response surface, sampled
  kLmOptim,       // quadratic response surface, descent-path candidates
  kTree,          // single CART tree
  kRandomForest,  // bagged CART ensemble
  kGp,            // Kriging
  kForestGp       // forest and Kriging proposals combined
};

inline ModelPluginKind model_plugin_from_name(const std::string& name) {
  if (name == "spotPredictLm") return ModelPluginKind::kLm;
  if (name == "spotPredictLmOptim") return ModelPluginKind::kLmOptim;
  if (name == "spotPredictTree") return ModelPluginKind::kTree;
  if (name == "spotPredictRandomForest") return ModelPluginKind::kRandomForest;
  if (name == "spotPredictMlegp" || name == "spotPredictTgp")
    return ModelPluginKind::kGp;
  if (name == "spotPredictRandomForestMlegp") return ModelPluginKind::kForestGp;
  throw Error("unknown prediction model plugin '" + name + "'");
}

/// Tree-based plugins fit raw repeats; the others fit merged utilities.
inline bool model_uses_raw_data(ModelPluginKind kind) {
  return kind == ModelPluginKind::kTree ||
         kind == ModelPluginKind::kRandomForest ||
         kind == ModelPluginKind::kForestGp;
}

}  // namespace spot
