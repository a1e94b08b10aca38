#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "spot/dataset.hpp"
#include "spot/error.hpp"
#include "spot/param_space.hpp"

namespace spot {

/**
 * Kriging with a constant mean and an anisotropic squared-exponential
 * kernel on coded inputs,
 *   k(z, z') = sigma^2 * exp(-sum_i theta_i (z_i - z'_i)^2),
 * plus a relative nugget on the correlation diagonal. The process variance
 * and mean have closed forms given theta; theta is chosen by maximizing the
 * concentrated log marginal likelihood with a multi-start coordinate search
 * over log-spaced grids.
 */
class GaussianProcess {
 public:
  struct Options {
    double nugget = 1e-6;
    std::vector<double> theta;  // fixed length scales; empty: optimize
  };

  static GaussianProcess fit(const Dataset& data, const RegionOfInterest& roi,
                             const Options& options) {
    detail::check_dataset(data);
    if (data.size() < 2) throw Error("GP fit needs at least 2 observations");
    if (data.X.cols() != static_cast<Eigen::Index>(roi.size()))
      throw Error("dataset dimension does not match the region of interest");
    if (!(options.nugget >= 0)) throw Error("nugget must be non-negative");

    GaussianProcess gp;
    gp.roi_ = roi;
    gp.nugget_ = options.nugget;
    const auto m = static_cast<Eigen::Index>(data.size());
    const auto n = static_cast<Eigen::Index>(roi.size());
    gp.Z_.resize(m, n);
    std::vector<double> x(roi.size());
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j)
        x[static_cast<std::size_t>(j)] = data.X(i, j);
      const auto z = to_coded(x, roi);
      for (Eigen::Index j = 0; j < n; ++j)
        gp.Z_(i, j) = z[static_cast<std::size_t>(j)];
    }
    gp.y_ = data.y;

    if (!options.theta.empty()) {
      if (options.theta.size() != roi.size())
        throw Error("theta length does not match the region of interest");
      gp.theta_ = Eigen::Map<const Eigen::VectorXd>(
          options.theta.data(), static_cast<Eigen::Index>(options.theta.size()));
    } else {
      gp.theta_ = gp.optimize_theta();
    }
    if (!gp.factorize(gp.theta_))
      throw Error(
          "GP covariance is not positive definite; increase seq.gp.nugget");
    return gp;
  }

  double predict(const std::vector<double>& x) const {
    const auto z = to_coded(x, roi_);
    const Eigen::Map<const Eigen::VectorXd> zv(
        z.data(), static_cast<Eigen::Index>(z.size()));
    double out = mean_;
    for (Eigen::Index i = 0; i < Z_.rows(); ++i) {
      const double d2 =
          (Z_.row(i).transpose() - zv).cwiseAbs2().dot(theta_);
      out += std::exp(-d2) * alpha_(i);
    }
    return out;
  }

  const Eigen::VectorXd& theta() const { return theta_; }
  double mean() const { return mean_; }

 private:
  // Correlation matrix R + g*I for the current theta.
  Eigen::MatrixXd correlation(const Eigen::VectorXd& theta) const {
    const Eigen::Index m = Z_.rows();
    Eigen::MatrixXd K(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      K(i, i) = 1.0 + nugget_;
      for (Eigen::Index j = i + 1; j < m; ++j) {
        const double d2 =
            (Z_.row(i) - Z_.row(j)).cwiseAbs2().matrix().dot(theta);
        K(i, j) = K(j, i) = std::exp(-d2);
      }
    }
    return K;
  }

  /**
   * Concentrated log marginal likelihood: the GLS mean and the profiled
   * process variance are closed-form, leaving
   *   -m/2 log(sigma^2) - 1/2 log det(R + gI).
   */
  double log_likelihood(const Eigen::VectorXd& theta) const {
    const Eigen::LLT<Eigen::MatrixXd> llt(correlation(theta));
    if (llt.info() != Eigen::Success)
      return -std::numeric_limits<double>::infinity();
    const Eigen::Index m = Z_.rows();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
    const Eigen::VectorXd Kinv_y = llt.solve(y_);
    const Eigen::VectorXd Kinv_1 = llt.solve(ones);
    const double mu = ones.dot(Kinv_y) / ones.dot(Kinv_1);
    const Eigen::VectorXd r = y_ - mu * ones;
    const double sigma2 =
        std::max(r.dot(llt.solve(r)) / static_cast<double>(m), 1e-300);
    double log_det = 0;
    const auto& L = llt.matrixLLT();
    for (Eigen::Index i = 0; i < m; ++i) log_det += 2.0 * std::log(L(i, i));
    return -0.5 * static_cast<double>(m) * std::log(sigma2) - 0.5 * log_det;
  }

  Eigen::VectorXd optimize_theta() const {
    const Eigen::Index n = Z_.cols();
    constexpr double kLow = 1e-3, kHigh = 1e3;
    const double starts[] = {1e-2, 1.0, 1e2};

    Eigen::VectorXd best_theta = Eigen::VectorXd::Ones(n);
    double best_ll = -std::numeric_limits<double>::infinity();
    for (const double start : starts) {
      Eigen::VectorXd theta = Eigen::VectorXd::Constant(n, start);
      double ll = log_likelihood(theta);
      // Pass 0 scans the whole range; two refinements zoom in around the
      // incumbent with shrinking spans (in decades).
      const double spans[] = {3.0, 1.0, 1.0 / 3.0};
      for (int pass = 0; pass < 3; ++pass) {
        for (Eigen::Index i = 0; i < n; ++i) {
          const double center = pass == 0 ? 1.0 : theta(i);
          const double lo =
              std::max(kLow, center * std::pow(10.0, -spans[pass]));
          const double hi =
              std::min(kHigh, center * std::pow(10.0, spans[pass]));
          for (int k = 0; k < 7; ++k) {
            const double value =
                lo * std::pow(hi / lo, static_cast<double>(k) / 6.0);
            Eigen::VectorXd trial = theta;
            trial(i) = value;
            const double trial_ll = log_likelihood(trial);
            if (trial_ll > ll) {
              ll = trial_ll;
              theta = trial;
            }
          }
        }
      }
      if (ll > best_ll) {
        best_ll = ll;
        best_theta = theta;
      }
    }
    if (!std::isfinite(best_ll))
      throw Error(
          "GP covariance is not positive definite; increase seq.gp.nugget");
    return best_theta;
  }

  bool factorize(const Eigen::VectorXd& theta) {
    const Eigen::LLT<Eigen::MatrixXd> llt(correlation(theta));
    if (llt.info() != Eigen::Success) return false;
    const Eigen::Index m = Z_.rows();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
    const Eigen::VectorXd Kinv_y = llt.solve(y_);
    const Eigen::VectorXd Kinv_1 = llt.solve(ones);
    mean_ = ones.dot(Kinv_y) / ones.dot(Kinv_1);
    alpha_ = llt.solve(y_ - mean_ * ones);
    return true;
  }

  RegionOfInterest roi_;
  Eigen::MatrixXd Z_;
  Eigen::VectorXd y_;
  Eigen::VectorXd theta_;
  Eigen::VectorXd alpha_;
  double mean_ = 0.0;
  double nugget_ = 1e-6;
};

}  // namespace spot
