#include "spot/targets.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spot/config.hpp"
#include "spot/error.hpp"
#include "spot/rng.hpp"

namespace {

using std::numbers::pi;
using spot::Rng;

TEST(Branin, MatchesClosedFormValues) {
  EXPECT_NEAR(spot::branin(0.0, 0.0), 56.0 - 10.0 / (8.0 * pi), 1e-12);
  const double fmin = 10.0 / (8.0 * pi);
  EXPECT_NEAR(spot::branin(pi, 2.275), fmin, 1e-12);
  EXPECT_NEAR(spot::branin(-pi, 12.275), fmin, 1e-12);
  EXPECT_NEAR(spot::branin(3.0 * pi, 2.475), fmin, 1e-12);
}

TEST(Branin, VectorOverloadValidatesInput) {
  EXPECT_DOUBLE_EQ(spot::branin({1.0, 2.0}), spot::branin(1.0, 2.0));
  EXPECT_THROW(spot::branin(std::vector<double>{1.0}), spot::Error);
  EXPECT_THROW(spot::branin({std::nan(""), 0.0}), spot::Error);
}

TEST(Objectives, LookupByName) {
  const auto f = spot::objective_from_name("branin");
  EXPECT_DOUBLE_EQ(f({1.0, 2.0}), spot::branin(1.0, 2.0));
  const auto g = spot::objective_from_name("sphere");
  EXPECT_DOUBLE_EQ(g({3.0, 4.0}), 25.0);
  EXPECT_THROW(spot::objective_from_name("rosenbrock"), spot::Error);
}

TEST(SannCooling, HoldsTempThenDecaysLogarithmically) {
  for (long long t = 1; t <= 20; ++t)
    EXPECT_EQ(spot::sann_cooling(7.5, 20, t), 7.5);
  EXPECT_NEAR(spot::sann_cooling(7.5, 20, 21),
              7.5 / std::log(20.0 + std::numbers::e), 1e-12);
  double previous = spot::sann_cooling(7.5, 20, 1);
  for (long long t = 2; t <= 200; ++t) {
    const double current = spot::sann_cooling(7.5, 20, t);
    EXPECT_LE(current, previous);
    previous = current;
  }
}

TEST(SannCooling, RejectsBadArguments) {
  EXPECT_THROW(spot::sann_cooling(0.0, 10, 1), spot::Error);
  EXPECT_THROW(spot::sann_cooling(-1.0, 10, 1), spot::Error);
  EXPECT_THROW(spot::sann_cooling(1.0, 0, 1), spot::Error);
  EXPECT_THROW(spot::sann_cooling(1.0, 10, 0), spot::Error);
}

TEST(SannOptimize, SpendsExactlyMaxitEvaluationsAfterTheStart) {
  long long count = 0;
  const spot::Objective f = [&count](const std::vector<double>& x) {
    ++count;
    return spot::sphere(x);
  };
  Rng rng(1);
  const auto result = spot::sann_optimize(f, {4.0, -3.0}, 120, 10.0, 10, {1.0, 1.0}, rng);
  EXPECT_EQ(count, 121);
  EXPECT_LE(result.best_y, spot::sphere({4.0, -3.0}));
  ASSERT_EQ(result.best_x.size(), 2u);
}

TEST(SannOptimize, DeterministicForAFixedSeed) {
  const spot::Objective f = [](const std::vector<double>& x) {
    return spot::branin(x);
  };
  Rng a(99), b(99), c(100);
  const auto ra = spot::sann_optimize(f, {0.0, 0.0}, 200, 10.0, 10, {1.0, 1.0}, a);
  const auto rb = spot::sann_optimize(f, {0.0, 0.0}, 200, 10.0, 10, {1.0, 1.0}, b);
  const auto rc = spot::sann_optimize(f, {0.0, 0.0}, 200, 10.0, 10, {1.0, 1.0}, c);
  EXPECT_DOUBLE_EQ(ra.best_y, rb.best_y);
  EXPECT_EQ(ra.best_x, rb.best_x);
  EXPECT_NE(ra.best_y, rc.best_y);
}

TEST(SannOptimize, ValidatesArguments) {
  const spot::Objective f = [](const std::vector<double>& x) {
    return spot::sphere(x);
  };
  Rng rng(1);
  EXPECT_THROW(spot::sann_optimize(f, {0.0}, 0, 10.0, 10, {1.0}, rng), spot::Error);
  EXPECT_THROW(spot::sann_optimize(f, {0.0}, 10, 10.0, 10, {1.0, 1.0}, rng),
               spot::Error);
}

TEST(EsOptimize, SpendsTheExactBudgetAndImproves) {
  long long count = 0;
  const spot::Objective f = [&count](const std::vector<double>& x) {
    ++count;
    return spot::sphere(x);
  };
  Rng rng(3);
  const auto result = spot::es_optimize(f, {5.0, 5.0}, 400, 1.0, 1.3, 10, rng);
  EXPECT_EQ(count, 400);
  EXPECT_LT(result.best_y, 1e-2);
}

TEST(EsOptimize, DeterministicForAFixedSeed) {
  const spot::Objective f = [](const std::vector<double>& x) {
    return spot::sphere(x);
  };
  Rng a(5), b(5);
  const auto ra = spot::es_optimize(f, {2.0, -1.0}, 100, 0.5, 1.2, 5, a);
  const auto rb = spot::es_optimize(f, {2.0, -1.0}, 100, 0.5, 1.2, 5, b);
  EXPECT_DOUBLE_EQ(ra.best_y, rb.best_y);
  EXPECT_EQ(ra.best_x, rb.best_x);
}

TEST(EsOptimize, ValidatesArguments) {
  const spot::Objective f = [](const std::vector<double>& x) {
    return spot::sphere(x);
  };
  Rng rng(1);
  EXPECT_THROW(spot::es_optimize(f, {0.0}, 0, 1.0, 1.3, 10, rng), spot::Error);
  EXPECT_THROW(spot::es_optimize(f, {0.0}, 10, 0.0, 1.3, 10, rng), spot::Error);
  EXPECT_THROW(spot::es_optimize(f, {0.0}, 10, 1.0, 1.0, 10, rng), spot::Error);
  EXPECT_THROW(spot::es_optimize(f, {0.0}, 10, 1.0, 1.3, 0, rng), spot::Error);
}

spot::RunRequest request_with(std::vector<std::string> names,
                              std::vector<double> values,
                              const spot::ApdSettings* apd = nullptr,
                              long long seed = 0) {
  spot::RunRequest request;
  request.names = std::move(names);
  request.values = std::move(values);
  request.apd = apd;
  request.seed = seed;
  return request;
}

TEST(BuildCommand, SubstitutesParametersApdKeysAndSeed) {
  const auto apd = spot::parse_apd("flags = \"-q\"\nx0 = (1, 2.5)\n");
  const auto request =
      request_with({"TEMP", "TMAX"}, {5.0, 20.0}, &apd, 42);
  EXPECT_EQ(spot::build_command("run {TEMP} {TMAX} {SEED} {flags} {x0}",
                                request),
            "run 5 20 42 -q 1 2.5");
}

TEST(BuildCommand, ParameterNamesAreCaseInsensitive) {
  const auto request = request_with({"Temp"}, {3.5});
  EXPECT_EQ(spot::build_command("x {TEMP}", request), "x 3.5");
  EXPECT_EQ(spot::build_command("x {temp}", request), "x 3.5");
}

TEST(BuildCommand, RejectsBadTemplates) {
  const auto request = request_with({"TEMP"}, {1.0});
  EXPECT_THROW(spot::build_command("run {TEMP", request), spot::Error);
  try {
    spot::build_command("run {NOPE}", request);
    FAIL() << "expected an error";
  } catch (const spot::Error& e) {
    EXPECT_NE(std::string(e.what()).find("NOPE"), std::string::npos);
  }
}

TEST(ExternalRun, ParsesTheLastTokenOfTheLastNonEmptyLine) {
  const auto request = request_with({}, {}, nullptr, 7);
  EXPECT_DOUBLE_EQ(spot::external_run("echo 3.5", request), 3.5);
  EXPECT_DOUBLE_EQ(
      spot::external_run("printf 'log line\\ny = 1.25\\n\\n'", request), 1.25);
  EXPECT_DOUBLE_EQ(spot::external_run("echo {SEED}", request), 7.0);
}

TEST(ExternalRun, RejectsFailuresAndNonNumericOutput) {
  const auto request = request_with({}, {});
  EXPECT_THROW(spot::external_run("exit 3", request), spot::Error);
  EXPECT_THROW(spot::external_run("echo not-a-number", request), spot::Error);
  EXPECT_THROW(spot::external_run("true", request), spot::Error);
}

TEST(RunSubprocess, EnforcesTheTimeout) {
  try {
    spot::run_subprocess("sleep 5", 0.2);
    FAIL() << "expected a timeout";
  } catch (const spot::Error& e) {
    EXPECT_NE(std::string(e.what()).find("timed out"), std::string::npos);
  }
}

TEST(RunAlgorithm, SannUsesDesignValuesOverApdAndDefaults) {
  const auto apd = spot::parse_apd("TEMP = 99\n");
  const auto request = request_with({"TEMP", "TMAX"}, {5.0, 20.0}, &apd, 42);
  Rng rng(42);
  const spot::Objective f = [](const std::vector<double>& x) {
    return spot::branin(x);
  };
  const double expected =
      sann_optimize(f, {0.0, 0.0}, 250, 5.0, 20, {1.0, 1.0}, rng).best_y;
  EXPECT_DOUBLE_EQ(spot::run_algorithm("spotAlgStartSann", request), expected);
}

TEST(RunAlgorithm, SannFallsBackToApdThenBuiltInDefaults) {
  const auto apd =
      spot::parse_apd("TEMP = 3\nf = \"sphere\"\nx0 = (2, 2)\nmaxit = 50\n");
  const auto request = request_with({}, {}, &apd, 11);
  Rng rng(11);
  const spot::Objective f = [](const std::vector<double>& x) {
    return spot::sphere(x);
  };
  const double expected =
      sann_optimize(f, {2.0, 2.0}, 50, 3.0, 10, {1.0, 1.0}, rng).best_y;
  EXPECT_DOUBLE_EQ(spot::run_algorithm("spotAlgStartSann", request), expected);
}

TEST(RunAlgorithm, EsTunesItsStrategyParameters) {
  const auto apd = spot::parse_apd("maxit = 80\n");
  const auto request = request_with({"SIGMA0", "A", "G"}, {2.0, 1.5, 5.0},
                                    &apd, 7);
  Rng rng(7);
  const spot::Objective f = [](const std::vector<double>& x) {
    return spot::sphere(x);
  };
  const double expected =
      es_optimize(f, {10.0, 10.0}, 80, 2.0, 1.5, 5, rng).best_y;
  EXPECT_DOUBLE_EQ(spot::run_algorithm("spotAlgStartES", request), expected);
}

TEST(RunAlgorithm, BraninPluginEvaluatesTheParametersDirectly) {
  const auto request = request_with({"X1", "X2"}, {pi, 2.275});
  EXPECT_NEAR(spot::run_algorithm("spotFuncStartBranin", request),
              10.0 / (8.0 * pi), 1e-12);
}

TEST(RunAlgorithm, UnknownPluginNeedsACommandTemplate) {
  const auto request = request_with({"X"}, {2.0});
  try {
    spot::run_algorithm("myTuner", request);
    FAIL() << "expected an error";
  } catch (const spot::Error& e) {
    EXPECT_NE(std::string(e.what()).find("myTuner"), std::string::npos);
  }

  const auto apd = spot::parse_apd("command = \"echo {X}\"\n");
  const auto with_command = request_with({"X"}, {2.0}, &apd);
  EXPECT_DOUBLE_EQ(spot::run_algorithm("myTuner", with_command), 2.0);

  const auto bad = spot::parse_apd("command = (1, 2)\n");
  const auto with_bad = request_with({"X"}, {2.0}, &bad);
  EXPECT_THROW(spot::run_algorithm("myTuner", with_bad), spot::Error);
}

}  // namespace
