#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

#include "spot/spot.hpp"

namespace {

using spot::Rng;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void announce(int criterion, bool pass, const std::string& detail) {
  std::cout << "[ACCEPT] criterion " << criterion << ": "
            << (pass ? "PASS" : "FAIL") << " — " << detail << std::endl;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("spot_accept_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

spot::RegionOfInterest sann_roi() {
  return spot::parse_roi("TEMP 1 50 FLOAT\nTMAX 1 50 INT\n");
}

spot::Project make_project(const TempDir& dir, const std::string& name,
                           const std::string& conf, const std::string& roi,
                           const std::string& apd) {
  const auto base = dir.path() / name;
  spot::detail::write_text_file(base.string() + ".conf", conf);
  spot::detail::write_text_file(base.string() + ".roi", roi);
  if (!apd.empty())
    spot::detail::write_text_file(base.string() + ".apd", apd);
  return spot::load_project(base.string() + ".conf", {}, nullptr);
}

double sann_branin_mean(double temp, long long tmax,
                        const std::vector<long long>& seeds) {
  const spot::Objective f = spot::objective_from_name("branin");
  double sum = 0;
  for (long long seed : seeds) {
    Rng rng(static_cast<std::uint64_t>(seed));
    sum += spot::sann_optimize(f, {10.0, 10.0}, 250, temp, tmax, {1.0, 1.0},
                               rng)
               .best_y;
  }
  return sum / static_cast<double>(seeds.size());
}

std::vector<long long> fresh_seeds() {
  std::vector<long long> seeds;
  for (long long s = 9001; s <= 9010; ++s) seeds.push_back(s);
  return seeds;
}

}  // namespace

TEST(Acceptance, Criterion1BraninCorrectness) {
  Stopwatch watch;
  const double expected = 0.397887;
  const std::vector<std::vector<double>> minima = {
      {-std::numbers::pi, 12.275},
      {std::numbers::pi, 2.275},
      {9.42478, 2.475}};
  double worst = 0;
  for (const auto& m : minima)
    worst = std::max(worst, std::abs(spot::branin(m) - expected));

  double grid_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) {
      const double x1 = -5.0 + 15.0 * i / 199.0;
      const double x2 = 15.0 * j / 199.0;
      grid_min = std::min(grid_min, spot::branin(x1, x2));
    }
  const double elapsed = watch.seconds();

  const bool pass =
      worst <= 1e-4 && grid_min >= expected - 1e-6 && elapsed < 1.0;
  announce(1, pass,
           "minima error " + fmt(worst) + ", grid min " + fmt(grid_min) +
               ", " + fmt(elapsed) + " s");
  EXPECT_LE(worst, 1e-4);
  EXPECT_GE(grid_min, expected - 1e-6);
  EXPECT_LT(elapsed, 1.0);
}

TEST(Acceptance, Criterion2SannCooling) {
  bool plateau_ok = true, monotone_ok = true;
  double tmax_plus_one_err = 0;
  for (const auto& [temp, tmax] :
       std::vector<std::pair<double, long long>>{
           {10.0, 10}, {1.8, 38}, {50.0, 1}, {3.0, 100}}) {
    for (long long t = 1; t <= tmax; ++t)
      plateau_ok = plateau_ok && spot::sann_cooling(temp, tmax, t) == temp;
    tmax_plus_one_err = std::max(
        tmax_plus_one_err,
        std::abs(spot::sann_cooling(temp, tmax, tmax + 1) -
                 temp / std::log(static_cast<double>(tmax) + std::numbers::e)));
    double previous = spot::sann_cooling(temp, tmax, 1);
    for (long long t = 2; t <= 10000; ++t) {
      const double current = spot::sann_cooling(temp, tmax, t);
      monotone_ok = monotone_ok && current <= previous;
      previous = current;
    }
  }
  const bool pass = plateau_ok && monotone_ok && tmax_plus_one_err <= 1e-12;
  announce(2, pass,
           std::string("plateau ") + (plateau_ok ? "exact" : "broken") +
               ", step error " + fmt(tmax_plus_one_err) + ", monotone over 1e4 " +
               (monotone_ok ? "yes" : "no"));
  EXPECT_TRUE(plateau_ok);
  EXPECT_TRUE(monotone_ok);
  EXPECT_LE(tmax_plus_one_err, 1e-12);
}

TEST(Acceptance, Criterion3ResponseSurfaceOracle) {
  spot::QuadraticModel model;
  model.roi = sann_roi();
  model.b0 = 0.93070;
  model.b.resize(2);
  model.b << 2.29074, -1.98286;
  model.B.resize(2, 2);
  model.B << 1.86950, -2.29498 / 2.0, -2.29498 / 2.0, -0.05832;

  const auto analysis = spot::stationary_point(model);
  const double xs_err =
      std::max(std::abs(analysis.xs(0) - (-0.8447783)),
               std::abs(analysis.xs(1) - (-0.3781626)));
  const double eig_err =
      std::max(std::abs(analysis.eigenvalues(0) - 2.4042085),
               std::abs(analysis.eigenvalues(1) - (-0.5930265)));
  const bool saddle = analysis.kind == spot::StationaryKind::kSaddle;

  const std::vector<std::vector<double>> canonical_expected = {
      {-0.760, -0.197}, {-0.803, -0.288}, {-0.845, -0.378},
      {-0.887, -0.469}, {-0.929, -0.559}};
  const auto canonical = spot::canonical_path(model, 2, 0.1);
  double canonical_err = 0;
  for (std::size_t i = 0; i < canonical_expected.size(); ++i)
    for (int j = 0; j < 2; ++j)
      canonical_err = std::max(
          canonical_err, std::abs(canonical[i].coded[j] -
                                  canonical_expected[i][j]));

  const std::vector<std::vector<double>> descent_original = {
      {23.7605, 27.215}, {22.315, 29.224}, {21.4085, 31.6005},
      {21.139, 34.271}, {21.4085, 37.0395}};
  const auto descent = spot::steepest_descent_path(model, 5, 0.1);
  double descent_err = 0;
  for (std::size_t i = 0; i < descent_original.size(); ++i)
    for (int j = 0; j < 2; ++j) {
      const double coded = (descent_original[i][j] - 25.5) / 24.5;
      descent_err =
          std::max(descent_err, std::abs(descent[i].coded[j] - coded));
    }

  const bool pass = xs_err <= 1e-4 && eig_err <= 1e-4 && saddle &&
                    canonical_err <= 5e-3 && descent_err <= 5e-2;
  announce(3, pass,
           "stationary err " + fmt(xs_err) + ", eigen err " + fmt(eig_err) +
               ", " + spot::stationary_kind_name(analysis.kind) +
               ", canonical err " + fmt(canonical_err) + ", descent err " +
               fmt(descent_err));
  EXPECT_LE(xs_err, 1e-4);
  EXPECT_LE(eig_err, 1e-4);
  EXPECT_TRUE(saddle);
  EXPECT_LE(canonical_err, 5e-3);
  EXPECT_LE(descent_err, 5e-2);
}

TEST(Acceptance, Criterion4QuadraticRecovery) {
  const auto roi = spot::parse_roi("X1 -2 4 FLOAT\nX2 0 10 FLOAT\n");
  const double b0 = 3.0;
  Eigen::Vector2d b(2.0, -1.0);
  Eigen::Matrix2d B;
  B << 1.5, 0.25, 0.25, 2.5;

  const auto design = spot::ccd_design(roi);
  spot::Dataset data;
  data.X.resize(static_cast<Eigen::Index>(design.rows.size()), 2);
  data.y.resize(static_cast<Eigen::Index>(design.rows.size()));
  for (std::size_t i = 0; i < design.rows.size(); ++i) {
    const auto coded = spot::to_coded(design.rows[i].values, roi);
    Eigen::Vector2d z(coded[0], coded[1]);
    data.X.row(static_cast<Eigen::Index>(i)) << design.rows[i].values[0],
        design.rows[i].values[1];
    data.y(static_cast<Eigen::Index>(i)) =
        b0 + b.dot(z) + z.dot(B * z);
  }

  const auto fit = spot::fit_linear(data, roi);
  double coef_err = std::abs(fit.model.b0 - b0);
  coef_err = std::max(coef_err, (fit.model.b - b).cwiseAbs().maxCoeff());
  coef_err = std::max(coef_err, (fit.model.B - B).cwiseAbs().maxCoeff());

  const Eigen::Vector2d xs_expected = -0.5 * B.inverse() * b;
  const auto analysis = spot::stationary_point(fit.model);
  const double xs_err = (analysis.xs - xs_expected).cwiseAbs().maxCoeff();

  const bool pass = design.rows.size() == 9 && coef_err <= 1e-8 &&
                    xs_err <= 1e-8 &&
                    fit.order == spot::ModelOrder::kSecondOrder;
  announce(4, pass,
           std::to_string(design.rows.size()) + "-point design, coefficient err " +
               fmt(coef_err) + ", stationary err " + fmt(xs_err));
  ASSERT_EQ(design.rows.size(), 9u);
  EXPECT_LE(coef_err, 1e-8);
  EXPECT_LE(xs_err, 1e-8);
  EXPECT_EQ(fit.order, spot::ModelOrder::kSecondOrder);
}

TEST(Acceptance, Criterion5LhsStratification) {
  const std::vector<std::pair<double, double>> ranges = {
      {-3.0, 7.0}, {0.0, 1.0}, {10.0, 60.0}, {-100.0, -50.0}, {2.0, 2.5}};
  long long checked = 0;
  bool pass = true;
  for (std::size_t dim : {1u, 2u, 5u}) {
    std::vector<spot::ParamDef> params;
    for (std::size_t j = 0; j < dim; ++j)
      params.push_back(spot::ParamDef{"P" + std::to_string(j + 1),
                                      ranges[j].first, ranges[j].second,
                                      spot::ParamType::kFloat});
    const spot::RegionOfInterest roi(params);
    for (std::size_t size : {1u, 2u, 5u, 10u, 50u}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto design = spot::lhs_design(roi, size, Rng(seed));
        if (design.rows.size() != size) pass = false;
        for (std::size_t j = 0; j < dim && pass; ++j) {
          std::vector<int> strata(size, 0);
          for (const auto& row : design.rows) {
            const double z = (row.values[j] - roi[j].low) /
                             (roi[j].high - roi[j].low);
            int stratum = static_cast<int>(z * static_cast<double>(size));
            stratum = std::clamp<int>(stratum, 0, static_cast<int>(size) - 1);
            ++strata[static_cast<std::size_t>(stratum)];
          }
          for (int count : strata) pass = pass && count == 1;
        }
        ++checked;
      }
    }
  }
  announce(5, pass,
           std::to_string(checked) +
               " designs over sizes {1,2,5,10,50} x dims {1,2,5} x 100 seeds");
  EXPECT_TRUE(pass);
  EXPECT_EQ(checked, 1500);
}

TEST(Acceptance, Criterion6GpInterpolation) {
  const auto roi2 = spot::parse_roi("X1 -2 2 FLOAT\nX2 -2 2 FLOAT\n");
  const auto train = spot::lhs_design(roi2, 12, Rng(42));
  spot::Dataset data;
  data.X.resize(12, 2);
  data.y.resize(12);
  for (std::size_t i = 0; i < 12; ++i) {
    const double x1 = train.rows[i].values[0];
    const double x2 = train.rows[i].values[1];
    data.X.row(static_cast<Eigen::Index>(i)) << x1, x2;
    data.y(static_cast<Eigen::Index>(i)) =
        std::sin(x1) + 0.5 * x2 * x2 + 0.25 * x1 * x2;
  }
  spot::GaussianProcess::Options options;
  options.nugget = 1e-10;
  const auto gp = spot::GaussianProcess::fit(data, roi2, options);
  double train_err = 0;
  for (std::size_t i = 0; i < 12; ++i) {
    const double pred = gp.predict(
        {data.X(static_cast<Eigen::Index>(i), 0),
         data.X(static_cast<Eigen::Index>(i), 1)});
    train_err =
        std::max(train_err, std::abs(pred - data.y(static_cast<Eigen::Index>(i))));
  }

  const auto roi1 = spot::parse_roi("X 0 6.283185307179586 FLOAT\n");
  spot::Dataset sine;
  sine.X.resize(8, 1);
  sine.y.resize(8);
  for (int i = 0; i < 8; ++i) {
    const double x = 2.0 * std::numbers::pi * i / 7.0;
    sine.X(i, 0) = x;
    sine.y(i) = std::sin(x);
  }
  const auto gp1 = spot::GaussianProcess::fit(sine, roi1, options);
  double sine_err = 0;
  for (int i = 0; i < 200; ++i) {
    const double x = 2.0 * std::numbers::pi * i / 199.0;
    sine_err = std::max(sine_err, std::abs(gp1.predict({x}) - std::sin(x)));
  }

  const bool pass = train_err < 1e-6 && sine_err < 0.1;
  announce(6, pass,
           "training-point err " + fmt(train_err) + ", sine reconstruction err " +
               fmt(sine_err));
  EXPECT_LT(train_err, 1e-6);
  EXPECT_LT(sine_err, 0.1);
}

TEST(Acceptance, Criterion7ForestVersusTree) {
  const auto truth = [](double x1, double x2) {
    return x1 * x1 + x2 * x2 + x1 * x2;
  };
  int forest_wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    spot::Dataset data;
    data.X.resize(200, 2);
    data.y.resize(200);
    for (int i = 0; i < 200; ++i) {
      const double x1 = rng.uniform(-1.0, 1.0);
      const double x2 = rng.uniform(-1.0, 1.0);
      data.X.row(i) << x1, x2;
      data.y(i) = truth(x1, x2) + 0.5 * rng.normal();
    }
    const auto tree = spot::RegressionTree::fit(data, {});
    const auto forest = spot::RandomForest::fit(data, {}, rng.derive(1));

    double tree_sse = 0, forest_sse = 0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double x1 = -1.0 + 2.0 * i / 19.0;
        const double x2 = -1.0 + 2.0 * j / 19.0;
        const double y = truth(x1, x2);
        const double dt = tree.predict(std::vector<double>{x1, x2}) - y;
        const double df = forest.predict({x1, x2}) - y;
        tree_sse += dt * dt;
        forest_sse += df * df;
      }
    if (forest_sse <= tree_sse) ++forest_wins;
  }
  const bool pass = forest_wins >= 8;
  announce(7, pass,
           "forest held-out MSE <= tree in " + std::to_string(forest_wins) +
               "/10 seeds");
  EXPECT_GE(forest_wins, 8);
}

TEST(Acceptance, Criterion8EndToEndForestTuning) {
  Stopwatch watch;
  const auto seeds = fresh_seeds();
  const double default_mean = sann_branin_mean(10.0, 10, seeds);

  TempDir dir("c8");
  int successes = 0;
  std::vector<double> means;
  for (int meta_seed = 1; meta_seed <= 10; ++meta_seed) {
    const std::string conf =
        "alg.func = \"spotAlgStartSann\"\n"
        "auto.loop.nevals = 250\n"
        "init.design.size = 10\n"
        "init.design.repeats = 2\n"
        "seq.predictionModel.func = \"spotPredictRandomForest\"\n"
        "spot.seed = " + std::to_string(meta_seed) + "\n";
    auto project = make_project(dir, "t" + std::to_string(meta_seed), conf,
                                "TEMP 1 50 FLOAT\nTMAX 1 50 INT\n",
                                "f = \"branin\"\nmaxit = 250\nx0 = (10, 10)\n");
    const auto result = spot::auto_task(project, nullptr, nullptr);
    const double temp = result.best.values[0];
    const auto tmax = static_cast<long long>(std::llround(result.best.values[1]));
    const double tuned_mean = sann_branin_mean(temp, tmax, seeds);
    means.push_back(tuned_mean);
    if (tuned_mean <= 0.6 && tuned_mean < default_mean) ++successes;
  }
  const double elapsed = watch.seconds();
  double mean_of_means = 0;
  for (double m : means) mean_of_means += m;
  mean_of_means /= static_cast<double>(means.size());

  const bool pass = successes >= 9 && elapsed < 60.0;
  announce(8, pass,
           std::to_string(successes) +
               "/10 meta-seeds tuned mean <= 0.6 and below default " +
               fmt(default_mean) + " (average tuned mean " + fmt(mean_of_means) +
               "), " + fmt(elapsed) + " s");
  EXPECT_GE(successes, 9);
  EXPECT_LT(elapsed, 60.0);
}

TEST(Acceptance, Criterion9AdaptiveRoiTuning) {
  Stopwatch watch;
  const auto seeds = fresh_seeds();

  TempDir dir("c9");
  int successes = 0;
  for (int meta_seed = 1; meta_seed <= 10; ++meta_seed) {
    const std::string conf =
        "alg.func = \"spotAlgStartSann\"\n"
        "auto.loop.nevals = 120\n"
        "init.design.size = 10\n"
        "init.design.repeats = 2\n"
        "seq.predictionModel.func = \"spotPredictLmOptim\"\n"
        "seq.useAdaptiveRoi = TRUE\n"
        "spot.seed = " + std::to_string(meta_seed) + "\n";
    auto project = make_project(dir, "a" + std::to_string(meta_seed), conf,
                                "TEMP 1 50 FLOAT\nTMAX 1 50 INT\n",
                                "f = \"branin\"\nmaxit = 250\nx0 = (10, 10)\n");
    const auto result = spot::auto_task(project, nullptr, nullptr);
    const double temp = result.best.values[0];
    const auto tmax = static_cast<long long>(std::llround(result.best.values[1]));
    if (sann_branin_mean(temp, tmax, seeds) <= 0.6) ++successes;
  }
  const double elapsed = watch.seconds();

  const bool pass = successes >= 8 && elapsed < 60.0;
  announce(9, pass,
           std::to_string(successes) + "/10 meta-seeds reached mean <= 0.6, " +
               fmt(elapsed) + " s");
  EXPECT_GE(successes, 8);
  EXPECT_LT(elapsed, 60.0);
}

TEST(Acceptance, Criterion10EngineInvariants) {
  TempDir dir("c10");
  const std::string conf =
      "alg.func = \"spotAlgStartSann\"\n"
      "auto.loop.nevals = 120\n"
      "init.design.size = 10\n"
      "init.design.repeats = 2\n"
      "seq.predictionModel.func = \"spotPredictRandomForest\"\n"
      "seq.forest.ntree = 100\n"
      "spot.seed = 7\n";
  const std::string roi = "TEMP 1 50 FLOAT\nTMAX 1 50 INT\n";
  const std::string apd = "f = \"branin\"\nmaxit = 250\nx0 = (10, 10)\n";

  auto first = make_project(dir, "one", conf, roi, apd);
  spot::auto_task(first, nullptr, nullptr);
  auto second = make_project(dir, "two", conf, roi, apd);
  spot::auto_task(second, nullptr, nullptr);

  const auto bytes = [](const std::filesystem::path& p) {
    return spot::detail::read_text_file(p);
  };
  const bool deterministic =
      bytes(first.paths.des()) == bytes(second.paths.des()) &&
      bytes(first.paths.res()) == bytes(second.paths.res()) &&
      bytes(first.paths.bst()) == bytes(second.paths.bst());

  const auto res = spot::read_res(first.paths.res(), first.roi);
  const auto bst = spot::read_bst(first.paths.bst(), first.roi);
  const long long budget = 120;
  const bool within_budget =
      static_cast<long long>(res.rows.size()) <= budget;

  const long long steps = spot::max_step(res);
  bool bst_rows_ok =
      static_cast<long long>(bst.rows.size()) == steps + 1;
  for (std::size_t i = 0; i < bst.rows.size(); ++i)
    bst_rows_ok = bst_rows_ok &&
                  bst.rows[i].step == static_cast<long long>(i);

  bool fair = true, k_increments = true;
  for (long long s = 1; s <= steps; ++s) {
    std::vector<long long> configs;
    for (const auto& row : res.rows)
      if (row.step == s &&
          std::find(configs.begin(), configs.end(), row.config) ==
              configs.end())
        configs.push_back(row.config);
    long long expected = 2 + s;
    for (long long config : configs) {
      long long count = 0;
      for (const auto& row : res.rows)
        if (row.config == config && row.step <= s) ++count;
      fair = fair && count == expected;
      if (count != expected) k_increments = false;
    }
  }

  double bst_mean_err = 0;
  for (const auto& row : bst.rows) {
    double sum = 0;
    long long seen = 0;
    for (const auto& rec : res.rows) {
      if (rec.config != row.config || seen >= row.count) continue;
      sum += rec.y;
      ++seen;
    }
    bst_mean_err = std::max(
        bst_mean_err,
        std::abs(sum / static_cast<double>(row.count) - row.y));
  }

  const bool pass = deterministic && within_budget && bst_rows_ok && fair &&
                    k_increments && bst_mean_err <= 1e-12;
  announce(10, pass,
           std::string("byte-identical rerun ") + (deterministic ? "yes" : "no") +
               ", " + std::to_string(res.rows.size()) + "/120 evaluations, " +
               std::to_string(bst.rows.size()) + " best rows for " +
               std::to_string(steps) + " steps, fair repeats " +
               (fair ? "yes" : "no") + ", best-mean err " + fmt(bst_mean_err));
  EXPECT_TRUE(deterministic);
  EXPECT_TRUE(within_budget);
  EXPECT_TRUE(bst_rows_ok);
  EXPECT_TRUE(fair);
  EXPECT_TRUE(k_increments);
  EXPECT_LE(bst_mean_err, 1e-12);
}

TEST(Acceptance, Criterion11FileRoundTrips) {
  TempDir dir("c11");
  bool pass = true;
  std::string failure;
  for (std::uint64_t i = 0; i < 100 && pass; ++i) {
    Rng rng(i);
    const std::size_t dim = 1 + rng.index(5);
    std::vector<spot::ParamDef> params;
    for (std::size_t j = 0; j < dim; ++j) {
      const double low = rng.uniform(-100.0, 100.0);
      const double width = rng.uniform(0.5, 200.0);
      const auto type = rng.uniform() < 0.3 ? spot::ParamType::kInt
                                            : spot::ParamType::kFloat;
      params.push_back(spot::ParamDef{
          "P" + std::to_string(j + 1),
          type == spot::ParamType::kInt ? std::floor(low) : low,
          type == spot::ParamType::kInt ? std::floor(low) + std::ceil(width) + 1
                                        : low + width,
          type});
    }
    const spot::RegionOfInterest roi(params);

    const auto draw_row = [&]() {
      std::vector<double> values;
      for (std::size_t j = 0; j < dim; ++j)
        values.push_back(roi[j].type == spot::ParamType::kInt
                             ? std::round(rng.uniform(roi[j].low, roi[j].high))
                             : rng.uniform(roi[j].low, roi[j].high));
      return spot::conform(values, roi);
    };

    const auto roi_path = dir.path() / ("t" + std::to_string(i) + ".roi");
    spot::write_roi(roi, roi_path);
    const auto roi_back = spot::read_roi(roi_path);
    spot::write_roi(roi_back, roi_path);
    if (spot::format_roi(roi_back) != spot::detail::read_text_file(roi_path) ||
        roi_back.size() != dim) {
      pass = false;
      failure = "ROI table " + std::to_string(i);
      break;
    }
    const auto aroi_path = dir.path() / ("t" + std::to_string(i) + ".aroi");
    spot::write_roi(roi, aroi_path);
    if (spot::format_roi(spot::read_roi(aroi_path)) != spot::format_roi(roi)) {
      pass = false;
      failure = "actual-ROI table " + std::to_string(i);
      break;
    }

    spot::DesignTable des{roi, {}};
    const std::size_t des_rows = rng.index(20) + 1;
    for (std::size_t r = 0; r < des_rows; ++r)
      des.rows.push_back(spot::DesignPoint{
          draw_row(), static_cast<long long>(r + 1),
          static_cast<long long>(1 + rng.index(5)),
          static_cast<long long>(rng.index(10)),
          static_cast<long long>(rng.index(100000))});
    const auto des_path = dir.path() / ("t" + std::to_string(i) + ".des");
    spot::write_des(des, des_path);
    const auto des_bytes = spot::detail::read_text_file(des_path);
    const auto des_back = spot::read_des(des_path, roi);
    spot::write_des(des_back, des_path);
    if (des_bytes != spot::detail::read_text_file(des_path) ||
        des_back.rows.size() != des.rows.size()) {
      pass = false;
      failure = "DES table " + std::to_string(i);
      break;
    }
    for (std::size_t r = 0; r < des.rows.size(); ++r)
      if (des_back.rows[r].values != des.rows[r].values ||
          des_back.rows[r].config != des.rows[r].config ||
          des_back.rows[r].repeats != des.rows[r].repeats ||
          des_back.rows[r].step != des.rows[r].step ||
          des_back.rows[r].seed != des.rows[r].seed) {
        pass = false;
        failure = "DES values " + std::to_string(i);
      }
    if (!pass) break;

    std::vector<spot::ResultRecord> res_rows;
    const std::size_t n_res = rng.index(20) + 1;
    for (std::size_t r = 0; r < n_res; ++r)
      res_rows.push_back(spot::ResultRecord{
          rng.normal() * rng.uniform(0.1, 1000.0), draw_row(),
          static_cast<long long>(rng.index(100000)),
          static_cast<long long>(r + 1),
          static_cast<long long>(rng.index(10))});
    const auto res_path = dir.path() / ("t" + std::to_string(i) + ".res");
    spot::append_res(res_rows, res_path, roi);
    const auto res_bytes = spot::detail::read_text_file(res_path);
    const auto res_back = spot::read_res(res_path, roi);
    std::filesystem::remove(res_path);
    spot::append_res(res_back.rows, res_path, roi);
    if (res_bytes != spot::detail::read_text_file(res_path) ||
        res_back.rows.size() != res_rows.size()) {
      pass = false;
      failure = "RES table " + std::to_string(i);
      break;
    }
    for (std::size_t r = 0; r < res_rows.size(); ++r)
      if (res_back.rows[r].y != res_rows[r].y ||
          res_back.rows[r].values != res_rows[r].values ||
          res_back.rows[r].seed != res_rows[r].seed ||
          res_back.rows[r].config != res_rows[r].config ||
          res_back.rows[r].step != res_rows[r].step) {
        pass = false;
        failure = "RES values " + std::to_string(i);
      }
    if (!pass) break;

    const auto bst_path = dir.path() / ("t" + std::to_string(i) + ".bst");
    std::vector<spot::BestRecord> bst_rows;
    const std::size_t n_bst = rng.index(10) + 1;
    for (std::size_t r = 0; r < n_bst; ++r) {
      bst_rows.push_back(spot::BestRecord{
          rng.normal(), draw_row(), static_cast<long long>(1 + rng.index(9)),
          static_cast<long long>(1 + rng.index(30)),
          static_cast<long long>(r)});
      spot::append_bst(bst_rows.back(), bst_path, roi);
    }
    const auto bst_bytes = spot::detail::read_text_file(bst_path);
    const auto bst_back = spot::read_bst(bst_path, roi);
    std::filesystem::remove(bst_path);
    for (const auto& row : bst_back.rows) spot::append_bst(row, bst_path, roi);
    if (bst_bytes != spot::detail::read_text_file(bst_path) ||
        bst_back.rows.size() != bst_rows.size()) {
      pass = false;
      failure = "BST table " + std::to_string(i);
      break;
    }
    for (std::size_t r = 0; r < bst_rows.size(); ++r)
      if (bst_back.rows[r].y != bst_rows[r].y ||
          bst_back.rows[r].values != bst_rows[r].values ||
          bst_back.rows[r].count != bst_rows[r].count ||
          bst_back.rows[r].config != bst_rows[r].config ||
          bst_back.rows[r].step != bst_rows[r].step) {
        pass = false;
        failure = "BST values " + std::to_string(i);
      }
  }
  announce(11, pass,
           pass ? "100 randomized tables round-tripped byte-identically"
                : "failed at " + failure);
  EXPECT_TRUE(pass) << failure;
}
