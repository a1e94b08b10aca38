#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "spot/config.hpp"
#include "spot/error.hpp"
#include "spot/param_space.hpp"
#include "spot/process.hpp"
#include "spot/rng.hpp"

namespace spot {

inline double branin(double x1, double x2) {
  using std::numbers::pi;
  const double a = x2 - 5.1 * x1 * x1 / (4.0 * pi * pi) + 5.0 * x1 / pi - 6.0;
  return a * a + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(x1) + 10.0;
}

inline double branin(const std::vector<double>& x) {
  if (x.size() != 2) throw Error("branin expects a 2-dimensional point");
  if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
    throw Error("branin: non-finite input");
  return branin(x[0], x[1]);
}

inline double sphere(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) {
    if (!std::isfinite(v)) throw Error("sphere: non-finite input");
    s += v * v;
  }
  return s;
}

using Objective = std::function<double(const std::vector<double>&)>;

inline Objective objective_from_name(const std::string& name) {
  if (name == "branin") return [](const std::vector<double>& x) { return branin(x); };
  if (name == "sphere") return [](const std::vector<double>& x) { return sphere(x); };
  throw Error("unknown objective function '" + name + "'");
}

/// Annealing temperature at iteration t (t >= 1): constant temp for the
/// first tmax iterations, then stepwise logarithmic decay.
inline double sann_cooling(double temp, long long tmax, long long t) {
  if (!(temp > 0)) throw Error("temp must be positive");
  if (tmax < 1) throw Error("tmax must be at least 1");
  if (t < 1) throw Error("iteration index starts at 1");
  return temp / std::log(static_cast<double>(((t - 1) / tmax) * tmax) +
                         std::numbers::e);
}

struct OptimResult {
  double best_y = 0.0;
  std::vector<double> best_x;
};

/**
 * Simulated annealing with Gaussian proposals scaled by the current
 * temperature and Metropolis acceptance. Performs exactly maxit objective
 * evaluations beyond f(x0) and returns the best point ever visited.
 */
inline OptimResult sann_optimize(const Objective& f,
                                 const std::vector<double>& x0,
                                 long long maxit, double temp, long long tmax,
                                 const std::vector<double>& parscale,
                                 Rng& rng) {
  if (maxit < 1) throw Error("maxit must be at least 1");
  if (parscale.size() != x0.size())
    throw Error("parscale length does not match x0");

  std::vector<double> x = x0;
  double fx = f(x);
  OptimResult best{fx, x};

  std::vector<double> candidate(x.size());
  for (long long t = 1; t <= maxit; ++t) {
    const double temperature = sann_cooling(temp, tmax, t);
    for (std::size_t i = 0; i < x.size(); ++i)
      candidate[i] = x[i] + rng.normal() * temperature * parscale[i];
    const double fc = f(candidate);
    if (fc < best.best_y) {
      best.best_y = fc;
      best.best_x = candidate;
    }
    if (fc <= fx ||
        rng.uniform() < std::exp((fx - fc) / temperature)) {
      x = candidate;
      fx = fc;
    }
  }
  return best;
}

/**
 * (1+1)-ES with the 1/5th-success step-size rule: every g offspring the
 * step size is multiplied by a when more than one fifth improved on the
 * parent, divided by a when fewer did, and left unchanged at exactly 1/5.
 */
inline OptimResult es_optimize(const Objective& f,
                               const std::vector<double>& x0, long long budget,
                               double sigma0, double a, long long g, Rng& rng) {
  if (budget < 1) throw Error("budget must be at least 1");
  if (!(sigma0 > 0)) throw Error("sigma0 must be positive");
  if (!(a > 1)) throw Error("adaptation factor must exceed 1");
  if (g < 1) throw Error("adaptation window must be at least 1");

  std::vector<double> x = x0;
  double fx = f(x);
  OptimResult best{fx, x};
  double sigma = sigma0;
  long long evals = 1, window = 0, successes = 0;

  std::vector<double> candidate(x.size());
  while (evals < budget) {
    for (std::size_t i = 0; i < x.size(); ++i)
      candidate[i] = x[i] + sigma * rng.normal();
    const double fc = f(candidate);
    ++evals;
    if (fc < fx) ++successes;
    if (fc <= fx) {
      x = candidate;
      fx = fc;
    }
    if (fc < best.best_y) {
      best.best_y = fc;
      best.best_x = candidate;
    }
    if (++window == g) {
      const double rate = static_cast<double>(successes) / static_cast<double>(g);
      if (rate > 0.2) sigma *= a;
      else if (rate < 0.2) sigma /= a;
      window = successes = 0;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Algorithm runners: map one DES row + APD settings + seed to a Y value.
// ---------------------------------------------------------------------------

struct RunRequest {
  std::vector<std::string> names;  // ROI parameter names, DES column order
  std::vector<double> values;
  const ApdSettings* apd = nullptr;
  long long seed = 0;
  double timeout_seconds = 300.0;
};

namespace detail {

inline const double* find_param(const RunRequest& request,
                                const std::string& name) {
  for (std::size_t i = 0; i < request.names.size(); ++i)
    if (iequals(request.names[i], name)) return &request.values[i];
  return nullptr;
}

// Tuned parameters come from the DES row when the ROI exposes them,
// otherwise from the APD file, otherwise from the built-in default.
inline double tuned_or(const RunRequest& request, const std::string& name,
                       double fallback) {
  if (const double* v = find_param(request, name)) return *v;
  if (request.apd) return request.apd->number(name, fallback);
  return fallback;
}

inline std::string format_apd_value(const ApdValue& value) {
  if (const double* d = std::get_if<double>(&value)) return format_real(*d);
  if (const std::string* s = std::get_if<std::string>(&value)) return *s;
  const auto& vec = std::get<std::vector<double>>(value);
  std::string out;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (i) out += ' ';
    out += format_real(vec[i]);
  }
  return out;
}

}  // namespace detail

/// Substitutes {NAME} placeholders (parameters, APD keys, SEED) into a
/// command template; unknown names are an error.
inline std::string build_command(const std::string& command_template,
                                 const RunRequest& request) {
  std::string out;
  std::size_t pos = 0;
  while (pos < command_template.size()) {
    const std::size_t open = command_template.find('{', pos);
    if (open == std::string::npos) {
      out += command_template.substr(pos);
      break;
    }
    const std::size_t close = command_template.find('}', open);
    if (close == std::string::npos)
      throw Error("command template has an unclosed '{'");
    out += command_template.substr(pos, open - pos);
    const std::string name = command_template.substr(open + 1, close - open - 1);
    if (detail::iequals(name, "SEED")) {
      out += format_int(request.seed);
    } else if (const double* v = detail::find_param(request, name)) {
      out += format_real(*v);
    } else if (request.apd && request.apd->find(name)) {
      out += detail::format_apd_value(*request.apd->find(name));
    } else {
      throw Error("command template references undefined name '" + name + "'");
    }
    pos = close + 1;
  }
  return out;
}

/// Runs the template as a subprocess and parses the last whitespace token of
/// the last non-empty stdout line as the Y value.
inline double external_run(const std::string& command_template,
                           const RunRequest& request) {
  const std::string command = build_command(command_template, request);
  const std::string output = run_subprocess(command, request.timeout_seconds);

  std::string last_line;
  for (const auto& line : detail::split_lines(output)) {
    if (!detail::split_ws(line).empty()) last_line = line;
  }
  const auto tokens = detail::split_ws(last_line);
  if (tokens.empty())
    throw Error("external command produced no output: " + command);
  double y = 0;
  if (!detail::parse_double(tokens.back(), y))
    throw Error("external command output is not numeric: '" + tokens.back() +
                "'");
  return y;
}

/**
 * Dispatches a single algorithm run. Built-in runners:
 *   spotAlgStartSann    tunes TEMP/TMAX, runs simulated annealing
 *   spotAlgStartES      tunes SIGMA0/A/G, runs the (1+1)-ES
 *   spotFuncStartBranin treats the parameters as Branin coordinates
 * Any other name requires a `command` template in the APD file.
 */
inline double run_algorithm(const std::string& plugin,
                            const RunRequest& request) {
  static const ApdSettings kEmptyApd;
  const ApdSettings& apd = request.apd ? *request.apd : kEmptyApd;

  if (plugin == "spotAlgStartSann") {
    const double temp = detail::tuned_or(request, "TEMP", 10.0);
    const auto tmax = static_cast<long long>(
        std::llround(detail::tuned_or(request, "TMAX", 10.0)));
    const Objective f = objective_from_name(apd.text("f", "branin"));
    const std::vector<double> x0 = apd.numbers("x0", {0.0, 0.0});
    const auto maxit =
        static_cast<long long>(std::llround(apd.number("maxit", 250)));
    const std::vector<double> parscale =
        apd.numbers("parscale", std::vector<double>(x0.size(), 1.0));
    Rng rng(static_cast<std::uint64_t>(request.seed));
    return sann_optimize(f, x0, maxit, temp, tmax, parscale, rng).best_y;
  }

  if (plugin == "spotAlgStartES") {
    const double sigma0 = detail::tuned_or(request, "SIGMA0", 1.0);
    const double a = detail::tuned_or(request, "A", 1.3);
    const auto g = static_cast<long long>(
        std::llround(detail::tuned_or(request, "G", 10.0)));
    const Objective f = objective_from_name(apd.text("f", "sphere"));
    const std::vector<double> x0 = apd.numbers("x0", {10.0, 10.0});
    const auto budget =
        static_cast<long long>(std::llround(apd.number("maxit", 250)));
    Rng rng(static_cast<std::uint64_t>(request.seed));
    return es_optimize(f, x0, budget, sigma0, a, g, rng).best_y;
  }

  if (plugin == "spotFuncStartBranin") {
    return branin(request.values);
  }

  const ApdValue* command = apd.find("command");
  if (!command)
    throw Error("unknown algorithm plugin '" + plugin +
                "' and no `command` template in the APD file");
  const std::string* text = std::get_if<std::string>(command);
  if (!text) throw Error("APD key 'command' must be a string");
  return external_run(*text, request);
}

}  // namespace spot
