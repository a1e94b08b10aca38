#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "spot/dataset.hpp"
#include "spot/error.hpp"
#include "spot/param_space.hpp"
#include "spot/rsm.hpp"

namespace spot {

enum class ModelOrder {
  kFirstOrder,
  kTwoWayInteraction,
  kPureQuadratic,
  kSecondOrder
};

inline const char* model_order_name(ModelOrder order) {
  switch (order) {
    case ModelOrder::kFirstOrder: return "first-order";
    case ModelOrder::kTwoWayInteraction: return "two-way-interaction";
    case ModelOrder::kPureQuadratic: return "pure-quadratic";
    case ModelOrder::kSecondOrder: return "second-order";
  }
  return "first-order";
}

inline std::size_t model_order_terms(ModelOrder order, std::size_t n) {
  const std::size_t pairs = n * (n - 1) / 2;
  switch (order) {
    case ModelOrder::kFirstOrder: return 1 + n;
    case ModelOrder::kTwoWayInteraction: return 1 + n + pairs;
    case ModelOrder::kPureQuadratic: return 1 + 2 * n;
    case ModelOrder::kSecondOrder: return 1 + 2 * n + pairs;
  }
  return 1 + n;
}

/// Least-squares response surface with the order that was actually fitted.
struct LinearFit {
  QuadraticModel model;
  ModelOrder order = ModelOrder::kFirstOrder;
  bool minimum_margin = false;  // fitted with exactly as many rows as terms

  double predict(const std::vector<double>& x) const {
    return model.predict(x);
  }
};

namespace detail {

inline Eigen::MatrixXd model_basis(const Eigen::MatrixXd& Z, ModelOrder order) {
  const Eigen::Index m = Z.rows(), n = Z.cols();
  const bool interactions = order == ModelOrder::kTwoWayInteraction ||
                            order == ModelOrder::kSecondOrder;
  const bool squares = order == ModelOrder::kPureQuadratic ||
                       order == ModelOrder::kSecondOrder;
  Eigen::MatrixXd phi(m, static_cast<Eigen::Index>(model_order_terms(
                             order, static_cast<std::size_t>(n))));
  Eigen::Index c = 0;
  phi.col(c++).setOnes();
  for (Eigen::Index j = 0; j < n; ++j) phi.col(c++) = Z.col(j);
  if (interactions)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        phi.col(c++) = Z.col(i).cwiseProduct(Z.col(j));
  if (squares)
    for (Eigen::Index j = 0; j < n; ++j)
      phi.col(c++) = Z.col(j).cwiseProduct(Z.col(j));
  return phi;
}

inline QuadraticModel coefficients_to_model(const Eigen::VectorXd& beta,
                                            ModelOrder order,
                                            const RegionOfInterest& roi) {
  const auto n = static_cast<Eigen::Index>(roi.size());
  QuadraticModel model;
  model.roi = roi;
  model.b0 = beta(0);
  model.b = beta.segment(1, n);
  model.B = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index c = 1 + n;
  if (order == ModelOrder::kTwoWayInteraction ||
      order == ModelOrder::kSecondOrder)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        model.B(i, j) = model.B(j, i) = 0.5 * beta(c++);
      }
  if (order == ModelOrder::kPureQuadratic ||
      order == ModelOrder::kSecondOrder)
    for (Eigen::Index j = 0; j < n; ++j) model.B(j, j) = beta(c++);
  return model;
}

}  // namespace detail

/**
 * Fits the richest of the four polynomial orders that the data supports,
 * preferring one residual degree of freedom (rows >= terms + 1) and accepting
 * rows == terms only when nothing else fits. Rank-deficient bases fall back
 * to the next simpler order.
 */
inline LinearFit fit_linear(const Dataset& data, const RegionOfInterest& roi) {
  detail::check_dataset(data);
  const std::size_t n = roi.size();
  const std::size_t m = data.size();
  if (data.X.cols() != static_cast<Eigen::Index>(n))
    throw Error("dataset dimension does not match the region of interest");
  if (m < n + 1)
    throw Error("linear fit needs at least " + std::to_string(n + 1) +
                " observations, got " + std::to_string(m));

  Eigen::MatrixXd Z(data.X.rows(), data.X.cols());
  std::vector<double> x(n);
  for (Eigen::Index i = 0; i < data.X.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) x[j] = data.X(i, static_cast<Eigen::Index>(j));
    const auto z = to_coded(x, roi);
    for (std::size_t j = 0; j < n; ++j) Z(i, static_cast<Eigen::Index>(j)) = z[j];
  }

  // Candidate orders, richest (most coefficients) first.
  std::array<ModelOrder, 4> orders{
      ModelOrder::kSecondOrder, ModelOrder::kPureQuadratic,
      ModelOrder::kTwoWayInteraction, ModelOrder::kFirstOrder};
  std::sort(orders.begin(), orders.end(), [&](ModelOrder a, ModelOrder b) {
    const auto pa = model_order_terms(a, n), pb = model_order_terms(b, n);
    if (pa != pb) return pa > pb;
    return static_cast<int>(a) > static_cast<int>(b);
  });

  for (int margin = 1; margin >= 0; --margin) {
    for (ModelOrder order : orders) {
      const std::size_t p = model_order_terms(order, n);
      if (m < p + static_cast<std::size_t>(margin)) continue;
      const Eigen::MatrixXd phi = detail::model_basis(Z, order);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi);
      if (qr.rank() < phi.cols()) continue;
      LinearFit fit;
      fit.model = detail::coefficients_to_model(qr.solve(data.y), order, roi);
      fit.order = order;
      fit.minimum_margin = margin == 0;
      return fit;
    }
  }
  throw Error("linear fit failed: design matrix is rank deficient");
}

}  // namespace spot
