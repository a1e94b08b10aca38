#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "spot/config.hpp"
#include "spot/dataset.hpp"
#include "spot/error.hpp"
#include "spot/fileio.hpp"
#include "spot/param_space.hpp"
#include "spot/rng.hpp"
#include "spot/tables.hpp"

namespace spot {

/// One tuning project: parsed settings plus the paths of its state files.
struct Project {
  std::filesystem::path conf_source;  // the CONF file the project came from
  ProjectPaths paths;
  SpotConfig config;
  RegionOfInterest roi;
  ApdSettings apd;
};

/**
 * Reads the CONF file, applies `--set` overrides, resolves the basename
 * (io.basename relative to the CONF directory when given), and loads the ROI
 * and optional APD files sharing that basename.
 */
inline Project load_project(
    const std::filesystem::path& conf_path,
    const std::vector<std::pair<std::string, std::string>>& overrides = {},
    std::ostream* log = &std::cerr) {
  Project p;
  p.conf_source = conf_path;
  std::vector<std::string> warnings;
  p.config = read_conf(conf_path, &warnings);
  for (const auto& [key, value] : overrides)
    if (!apply_conf_entry(p.config, key, value))
      warnings.push_back("unknown CONF key '" + key + "' ignored");
  if (log)
    for (const auto& w : warnings) *log << "warning: " << w << '\n';
  p.config.validate();

  std::filesystem::path base = conf_path;
  base.replace_extension();
  if (!p.config.io_basename.empty())
    base = conf_path.parent_path() / p.config.io_basename;
  p.paths.basename = base;

  p.roi = read_roi(p.paths.roi());
  p.apd = read_apd(p.paths.apd());
  return p;
}

/// One evaluated configuration with its utility recomputed from RES rows.
struct ConfigRecord {
  long long config = 0;
  std::vector<double> values;
  long long count = 0;
  double utility = 0.0;
  long long step_introduced = 0;
};

/// Groups RES rows by configuration in first-appearance order. `merge` is
/// "mean" or "median".
inline std::vector<ConfigRecord> build_population(const ResultTable& results,
                                                  const std::string& merge) {
  const bool median = merge == "median";
  std::vector<ConfigRecord> population;
  std::vector<std::vector<double>> ys;
  for (const auto& rec : results.rows) {
    std::size_t idx = population.size();
    for (std::size_t i = 0; i < population.size(); ++i)
      if (population[i].config == rec.config) {
        idx = i;
        break;
      }
    if (idx == population.size()) {
      ConfigRecord c;
      c.config = rec.config;
      c.values = rec.values;
      c.step_introduced = rec.step;
      population.push_back(std::move(c));
      ys.emplace_back();
    }
    ys[idx].push_back(rec.y);
    population[idx].step_introduced =
        std::min(population[idx].step_introduced, rec.step);
  }
  for (std::size_t i = 0; i < population.size(); ++i) {
    population[i].count = static_cast<long long>(ys[i].size());
    population[i].utility = detail::merge_values(ys[i], median);
  }
  return population;
}

/// Lowest utility wins; ties go to the lowest configuration id.
inline const ConfigRecord& best_config(
    const std::vector<ConfigRecord>& population) {
  if (population.empty()) throw Error("empty population");
  const ConfigRecord* best = &population[0];
  for (const auto& c : population)
    if (c.utility < best->utility ||
        (c.utility == best->utility && c.config < best->config))
      best = &c;
  return *best;
}

/// RNG stream ids; combined with the step they key independent substreams,
/// so stepwise task invocations reproduce an in-process auto run exactly.
enum : std::uint64_t {
  kRngInitDesign = 1,
  kRngCandidates = 2,
  kRngForest = 3,
  kRngTreeExtra = 4,
  kRngFallback = 5,
  kRngReport = 6,
};

inline Rng task_rng(const SpotConfig& config, std::uint64_t purpose,
                    std::uint64_t step) {
  return Rng(static_cast<std::uint64_t>(config.spot_seed))
      .derive((purpose << 32) ^ step);
}

inline long long max_step(const ResultTable& results) {
  long long step = 0;
  for (const auto& rec : results.rows) step = std::max(step, rec.step);
  return step;
}

inline long long max_config_id(const ResultTable& results,
                               const DesignTable* des = nullptr) {
  long long id = 0;
  for (const auto& rec : results.rows) id = std::max(id, rec.config);
  if (des)
    for (const auto& row : des->rows) id = std::max(id, row.config);
  return id;
}

}  // namespace spot
