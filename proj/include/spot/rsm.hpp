#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "spot/error.hpp"
#include "spot/param_space.hpp"

namespace spot {

/**
 * Second-order response surface in coded units:
 *   y(z) = b0 + b'z + z'Bz
 * B is symmetric; its diagonal holds the pure quadratic coefficients and each
 * off-diagonal entry is half the corresponding interaction coefficient.
 */
struct QuadraticModel {
  double b0 = 0.0;
  Eigen::VectorXd b;
  Eigen::MatrixXd B;
  RegionOfInterest roi;

  std::size_t dimension() const { return static_cast<std::size_t>(b.size()); }

  double predict_coded(const Eigen::VectorXd& z) const {
    return b0 + b.dot(z) + z.dot(B * z);
  }

  double predict(const std::vector<double>& x) const {
    const auto z = to_coded(x, roi);
    Eigen::VectorXd zv = Eigen::Map<const Eigen::VectorXd>(
        z.data(), static_cast<Eigen::Index>(z.size()));
    return predict_coded(zv);
  }
};

enum class StationaryKind { kMinimum, kMaximum, kSaddle, kDegenerate };

inline const char* stationary_kind_name(StationaryKind kind) {
  switch (kind) {
    case StationaryKind::kMinimum: return "MINIMUM";
    case StationaryKind::kMaximum: return "MAXIMUM";
    case StationaryKind::kSaddle: return "SADDLE";
    case StationaryKind::kDegenerate: return "DEGENERATE";
  }
  return "DEGENERATE";
}

/**
 * Stationary point and curvature summary of a quadratic model. Eigenvalues
 * are sorted descending; eigenvector columns follow that order with each
 * column's first nonzero component made positive.
 */
struct StationaryAnalysis {
  Eigen::VectorXd xs;  // coded; meaningful only when kind != kDegenerate
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  StationaryKind kind = StationaryKind::kDegenerate;
};

namespace detail {

inline void fix_column_sign(Eigen::MatrixXd& m, Eigen::Index col,
                            bool first_nonzero_negative) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double v = m(i, col);
    if (std::abs(v) > 1e-12) {
      if ((v < 0) != first_nonzero_negative) m.col(col) = -m.col(col);
      return;
    }
  }
}

}  // namespace detail

inline StationaryAnalysis stationary_point(const QuadraticModel& model) {
  const Eigen::Index n = model.b.size();
  if (model.B.rows() != n || model.B.cols() != n)
    throw Error("quadratic model has inconsistent dimensions");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(model.B);
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed");

  StationaryAnalysis out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index j = 0; j < n; ++j)
    detail::fix_column_sign(out.eigenvectors, j, false);

  const double scale = std::max(out.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
  const double threshold = 1e-8 * std::max(scale, 1.0);
  bool any_pos = false, any_neg = false, any_zero = false;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lambda = out.eigenvalues(j);
    if (std::abs(lambda) <= threshold) any_zero = true;
    else if (lambda > 0) any_pos = true;
    else any_neg = true;
  }

  if (any_zero) {
    out.kind = StationaryKind::kDegenerate;
    out.xs = Eigen::VectorXd::Constant(
        n, std::numeric_limits<double>::quiet_NaN());
    return out;
  }

  out.kind = any_pos && any_neg ? StationaryKind::kSaddle
             : any_pos          ? StationaryKind::kMinimum
                                : StationaryKind::kMaximum;
  // xs = -1/2 B^{-1} b via the eigendecomposition
  const Eigen::VectorXd w = out.eigenvectors.transpose() * model.b;
  Eigen::VectorXd scaled(n);
  for (Eigen::Index j = 0; j < n; ++j) scaled(j) = w(j) / out.eigenvalues(j);
  out.xs = -0.5 * (out.eigenvectors * scaled);
  return out;
}

/// One step along a descent path, in coded and original units.
struct PathPoint {
  double dist = 0.0;
  std::vector<double> coded;
  std::vector<double> original;
};

namespace detail {

inline PathPoint make_path_point(double dist, const Eigen::VectorXd& z,
                                 const RegionOfInterest& roi) {
  PathPoint p;
  p.dist = dist;
  p.coded.assign(z.data(), z.data() + z.size());
  p.original = conform(from_coded(p.coded, roi), roi);
  return p;
}

}  // namespace detail

/**
 * Ridge-analysis descent path. The i-th point is the minimizer of the model
 * on the coded sphere of radius i*step around the origin, obtained as
 * x(mu) = -1/2 (B - mu I)^{-1} b with mu < lambda_min tuned by bisection so
 * that |x(mu)| matches the target radius.
 */
inline std::vector<PathPoint> steepest_descent_path(const QuadraticModel& model,
                                                    int n_points, double step) {
  if (n_points < 1) throw Error("path needs at least one point");
  if (!(step > 0)) throw Error("path step must be positive");
  const Eigen::Index n = model.b.size();
  if (model.b.norm() == 0)
    throw Error("model has no gradient at the center, path undefined");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(model.B);
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed");
  const Eigen::VectorXd lambda = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd V = solver.eigenvectors();
  const Eigen::VectorXd w = V.transpose() * model.b;
  const double lambda_min = lambda(0);
  const double scale =
      std::max({lambda.cwiseAbs().maxCoeff(), model.b.norm(), 1.0});

  // |x(mu)| as a monotone increasing function of mu on (-inf, lambda_min)
  const auto radius = [&](double mu) {
    double s = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = lambda(j) - mu;
      s += (w(j) * w(j)) / (d * d);
    }
    return 0.5 * std::sqrt(s);
  };
  const auto point_at = [&](double mu) {
    Eigen::VectorXd scaled(n);
    for (Eigen::Index j = 0; j < n; ++j)
      scaled(j) = w(j) / (lambda(j) - mu);
    return Eigen::VectorXd(-0.5 * (V * scaled));
  };

  std::vector<PathPoint> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int i = 1; i <= n_points; ++i) {
    const double target = i * step;

    double delta = 1e-9 * scale;
    while (radius(lambda_min - delta) < target && delta > 1e-15 * scale)
      delta *= 0.1;
    double hi = lambda_min - delta;

    if (radius(hi) < target) {
      // The gradient is orthogonal to the softest eigendirection, so the
      // ridge saturates; extend along that direction to reach the radius.
      Eigen::VectorXd z = point_at(hi);
      const double r = z.norm();
      const double t = std::sqrt(std::max(target * target - r * r, 0.0));
      Eigen::MatrixXd dir = V.col(0);
      detail::fix_column_sign(dir, 0, true);
      z -= t * dir.col(0);
      out.push_back(detail::make_path_point(target, z, model.roi));
      continue;
    }

    double lo = lambda_min - scale;
    while (radius(lo) > target) lo = lambda_min - 2 * (lambda_min - lo);
    for (int it = 0; it < 500 && hi - lo > 0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (radius(mid) < target ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    Eigen::VectorXd z = point_at(mu);
    if (z.norm() > 0) z *= target / z.norm();
    out.push_back(detail::make_path_point(target, z, model.roi));
  }
  return out;
}

/**
 * Canonical descent path: the line through the stationary point along the
 * eigenvector of the most negative eigenvalue, sampled at distances
 * -n*step .. n*step. The direction's first nonzero component is negative.
 */
inline std::vector<PathPoint> canonical_path(const QuadraticModel& model,
                                             int n_points, double step) {
  if (n_points < 1) throw Error("path needs at least one point");
  if (!(step > 0)) throw Error("path step must be positive");

  const StationaryAnalysis analysis = stationary_point(model);
  if (analysis.kind == StationaryKind::kDegenerate)
    throw Error("canonical path undefined: quadratic form is degenerate");
  const Eigen::Index n = analysis.eigenvalues.size();
  const Eigen::Index last = n - 1;
  if (analysis.eigenvalues(last) >= 0)
    throw Error("canonical path undefined: no descending ridge direction");

  Eigen::MatrixXd dir = analysis.eigenvectors.col(last);
  detail::fix_column_sign(dir, 0, true);

  std::vector<PathPoint> out;
  out.reserve(2 * static_cast<std::size_t>(n_points) + 1);
  for (int i = -n_points; i <= n_points; ++i) {
    const double dist = i * step;
    const Eigen::VectorXd z = analysis.xs + dist * dir.col(0);
    out.push_back(detail::make_path_point(dist, z, model.roi));
  }
  return out;
}

}  // namespace spot
