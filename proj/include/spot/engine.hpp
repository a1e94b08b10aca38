#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spot/config.hpp"
#include "spot/dataset.hpp"
#include "spot/designs.hpp"
#include "spot/error.hpp"
#include "spot/fileio.hpp"
#include "spot/metamodels.hpp"
#include "spot/models/forest.hpp"
#include "spot/models/gp.hpp"
#include "spot/models/linear.hpp"
#include "spot/models/tree.hpp"
#include "spot/param_space.hpp"
#include "spot/project.hpp"
#include "spot/report.hpp"
#include "spot/rng.hpp"
#include "spot/rsm.hpp"
#include "spot/targets.hpp"

namespace spot {

/// Design plugins selectable through init.design.func.
inline DesignTable make_design(const std::string& plugin,
                               const RegionOfInterest& roi, long long size,
                               Rng rng) {
  if (plugin == "spotCreateDesignLhs" || plugin == "spotCreateLhs")
    return lhs_design(roi, static_cast<std::size_t>(size), rng);
  if (plugin == "spotCreateDesignFrF2") return ccd_design(roi);
  if (plugin == "spotCreateBasicDoe3R" || plugin == "spotCreateFrF2")
    return fractional_factorial_res3(roi);
  throw Error("unknown design plugin '" + plugin + "'");
}

namespace detail {

inline bool inside_region(const RegionOfInterest& roi,
                          const std::vector<double>& x) {
  for (std::size_t j = 0; j < roi.size(); ++j)
    if (x[j] < roi[j].low || x[j] > roi[j].high) return false;
  return true;
}

inline std::vector<std::vector<double>> population_points(
    const std::vector<ConfigRecord>& population) {
  std::vector<std::vector<double>> out;
  out.reserve(population.size());
  for (const auto& c : population) out.push_back(c.values);
  return out;
}

// Conforms against the base region, then drops candidates that duplicate an
// evaluated configuration or an earlier candidate.
inline std::vector<std::vector<double>> dedupe_candidates(
    std::vector<std::vector<double>> candidates, const RegionOfInterest& roi,
    const std::vector<std::vector<double>>& evaluated) {
  std::vector<std::vector<double>> out;
  for (auto& x : candidates) {
    auto fixed = conform(x, roi);
    if (contains_row(evaluated, fixed) || contains_row(out, fixed)) continue;
    out.push_back(std::move(fixed));
  }
  return out;
}

inline std::vector<std::vector<double>> table_points(const DesignTable& table) {
  std::vector<std::vector<double>> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.push_back(row.values);
  return out;
}

}  // namespace detail

/**
 * Resets the project state files and writes the initial design: RES and the
 * best file start empty, the actual region of interest starts as the full
 * ROI, and the DES file holds init.design.size fresh configurations with
 * repeats, step 0, and the base algorithm seed attached.
 */
inline void init_task(Project& p) {
  p.config.validate();
  std::filesystem::remove(p.paths.res());
  std::filesystem::remove(p.paths.bst());
  write_roi(p.roi, p.paths.aroi());

  DesignTable design =
      make_design(p.config.init_design_func, p.roi, p.config.init_design_size,
                  task_rng(p.config, kRngInitDesign, 0));
  design = assign_metadata(std::move(design), p.config.init_design_repeats, 0,
                           p.config.alg_seed, 1);
  write_des(design, p.paths.des());
}

/**
 * Executes the configured algorithm for every DES row that still owes
 * repeats. Repeat j of a configuration (counting the RES rows it already
 * has) runs with seed SEED + j; results append to RES in (configuration,
 * repeat index) order. Returns the number of runs performed.
 */
inline long long run_task(Project& p) {
  if (!std::filesystem::exists(p.paths.des()))
    throw Error("no design file; run the init task first");
  const DesignTable design = read_des(p.paths.des(), p.roi);
  const ResultTable existing = read_res(p.paths.res(), p.roi);

  std::map<long long, long long> counts;
  for (const auto& rec : existing.rows) ++counts[rec.config];

  std::vector<ResultRecord> fresh;
  for (const auto& row : design.rows) {
    const long long have = counts[row.config];
    for (long long j = have; j < row.repeats; ++j) {
      RunRequest request;
      request.names = p.roi.names();
      request.values = row.values;
      request.apd = &p.apd;
      request.seed = row.seed + j;
      request.timeout_seconds = p.config.alg_timeout;
      double y = 0;
      try {
        y = run_algorithm(p.config.alg_func, request);
      } catch (const Error& e) {
        throw Error("configuration " + std::to_string(row.config) +
                    " failed: " + e.what());
      }
      if (!std::isfinite(y))
        throw Error("configuration " + std::to_string(row.config) +
                    " produced a non-finite result");
      fresh.push_back(ResultRecord{y, row.values, row.seed + j, row.config,
                                   row.step});
    }
  }
  append_res(fresh, p.paths.res(), p.roi);
  return static_cast<long long>(fresh.size());
}

namespace detail {

struct CandidateBatch {
  std::vector<std::vector<double>> points;
  bool restart = false;  // adaptive step fell back to a full-region design
};

inline std::unique_ptr<Metamodel> fit_plugin_model(
    const Project& p, ModelPluginKind kind, const ResultTable& res,
    const RegionOfInterest& region, long long step) {
  switch (kind) {
    case ModelPluginKind::kLm:
    case ModelPluginKind::kLmOptim: {
      const Dataset merged = p.config.seq_merge_func == "median"
                                 ? merge_median(res)
                                 : merge_mean(res);
      return std::make_unique<LinearMetamodel>(fit_linear(merged, region));
    }
    case ModelPluginKind::kTree: {
      RegressionTree::Options options;
      options.min_node = p.config.forest_nodesize;
      options.max_depth = p.config.forest_maxdepth;
      return std::make_unique<TreeMetamodel>(
          RegressionTree::fit(raw_dataset(res), options));
    }
    case ModelPluginKind::kRandomForest: {
      RandomForest::Options options;
      options.n_trees = p.config.forest_ntree;
      options.mtry = p.config.forest_mtry_for(region.size());
      options.min_node = p.config.forest_nodesize;
      options.max_depth = p.config.forest_maxdepth;
      return std::make_unique<ForestMetamodel>(
          RandomForest::fit(raw_dataset(res), options,
                            task_rng(p.config, kRngForest,
                                     static_cast<std::uint64_t>(step))));
    }
    case ModelPluginKind::kGp: {
      const Dataset merged = p.config.seq_merge_func == "median"
                                 ? merge_median(res)
                                 : merge_mean(res);
      GaussianProcess::Options options;
      options.nugget = p.config.gp_nugget;
      return std::make_unique<GpMetamodel>(
          GaussianProcess::fit(merged, region, options));
    }
    case ModelPluginKind::kForestGp:
      throw Error("combined plugin is dispatched separately");
  }
  throw Error("unknown model plugin");
}

// One extra exploratory point from a tree model over the full original ROI,
// used by both adaptive phases.
inline std::vector<std::vector<double>> tree_extra_point(
    const Project& p, const ResultTable& res,
    const std::vector<std::vector<double>>& evaluated, long long step) {
  RegressionTree::Options options;
  options.min_node = p.config.forest_nodesize;
  options.max_depth = p.config.forest_maxdepth;
  const TreeMetamodel tree(RegressionTree::fit(raw_dataset(res), options));
  Rng rng = task_rng(p.config, kRngTreeExtra, static_cast<std::uint64_t>(step));
  return propose_candidates(tree, p.roi, p.config.candidate_pool(p.roi.size()),
                            1, rng, evaluated);
}

/**
 * Alternating adaptive step. Odd steps orient: fit a quadratic on the data
 * inside the current region (all data when too few points lie inside) and
 * walk the steepest-descent path. Even steps recalibrate: center a fresh
 * composite design on the best point with the largest radius that stays
 * inside the current region, or restart from a full-region Latin hypercube
 * when the best point sits at a border.
 */
inline CandidateBatch adaptive_roi_step(Project& p, const ResultTable& res,
                                        const std::vector<ConfigRecord>& population,
                                        RegionOfInterest& region,
                                        long long step, std::ostream* log) {
  CandidateBatch batch;
  const auto evaluated = population_points(population);
  const bool orientation = step % 2 == 1;
  const std::size_t n = p.roi.size();

  const auto restart = [&]() {
    if (log)
      *log << "adaptive step " << step
           << ": restarting from a full-region Latin hypercube\n";
    region = p.roi;
    batch.restart = true;
    batch.points = table_points(lhs_design(
        p.roi, static_cast<std::size_t>(p.config.init_design_size),
        task_rng(p.config, kRngFallback, static_cast<std::uint64_t>(step))));
  };

  if (orientation) {
    Dataset merged = p.config.seq_merge_func == "median" ? merge_median(res)
                                                         : merge_mean(res);
    // Prefer the observations inside the current region when enough exist
    // to support a full quadratic.
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j)
        x[j] = merged.X(static_cast<Eigen::Index>(i),
                        static_cast<Eigen::Index>(j));
      if (inside_region(region, x)) inside.push_back(i);
    }
    const std::size_t need =
        model_order_terms(ModelOrder::kSecondOrder, n) + 1;
    if (inside.size() >= need && inside.size() < merged.size()) {
      Dataset subset;
      subset.X.resize(static_cast<Eigen::Index>(inside.size()), merged.X.cols());
      subset.y.resize(static_cast<Eigen::Index>(inside.size()));
      for (std::size_t i = 0; i < inside.size(); ++i) {
        subset.X.row(static_cast<Eigen::Index>(i)) =
            merged.X.row(static_cast<Eigen::Index>(inside[i]));
        subset.y(static_cast<Eigen::Index>(i)) =
            merged.y(static_cast<Eigen::Index>(inside[i]));
      }
      merged = std::move(subset);
    }

    LinearFit fit;
    try {
      fit = fit_linear(merged, region);
    } catch (const Error& e) {
      if (log) *log << "adaptive orientation fit failed: " << e.what() << '\n';
      restart();
      return batch;
    }
    try {
      const auto path = steepest_descent_path(
          fit.model, static_cast<int>(p.config.seq_path_size),
          p.config.seq_path_step);
      for (const auto& point : path) batch.points.push_back(point.original);
    } catch (const Error&) {
      // No usable gradient: fall back to the best of a large sample.
      const LinearMetamodel model(fit);
      Rng rng = task_rng(p.config, kRngCandidates,
                         static_cast<std::uint64_t>(step));
      batch.points = propose_candidates(
          model, region, p.config.candidate_pool(n),
          p.config.seq_design_new_size, rng, evaluated);
    }
    return batch;
  }

  // Recalibration phase.
  const ConfigRecord* center = &best_config(population);
  if (p.config.seq_adaptive_roi_best_from == "path") {
    const long long previous = step - 1;
    const ConfigRecord* best_on_path = nullptr;
    for (const auto& c : population)
      if (c.step_introduced == previous &&
          (!best_on_path || c.utility < best_on_path->utility ||
           (c.utility == best_on_path->utility &&
            c.config < best_on_path->config)))
        best_on_path = &c;
    if (best_on_path) center = best_on_path;
  }

  double radius = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j)
    radius = std::min({radius, center->values[j] - region[j].low,
                       region[j].high - center->values[j]});
  double min_half_range = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j)
    min_half_range =
        std::min(min_half_range, 0.5 * (p.roi[j].high - p.roi[j].low));

  if (radius < 0.01 * min_half_range) {
    restart();
    return batch;
  }

  std::vector<ParamDef> params;
  params.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    params.push_back(ParamDef{p.roi[j].name, center->values[j] - radius,
                              center->values[j] + radius, p.roi[j].type});
  region = RegionOfInterest(std::move(params));
  batch.points = table_points(ccd_design(region));
  return batch;
}

}  // namespace detail

/// What a sequential step wrote: the best-file row and the new design step.
struct SeqOutcome {
  long long step = 0;
  BestRecord best;
};

/**
 * One sequential improvement step. Rebuilds the population from RES, appends
 * the incumbent best to the best file, fits the configured model, proposes
 * candidates, and writes a DES file holding the best configuration plus the
 * candidates, all with the incremented repeat target.
 */
inline SeqOutcome seq_task(Project& p, std::ostream* log = &std::cerr) {
  const ResultTable res = read_res(p.paths.res(), p.roi);
  if (res.rows.empty())
    throw Error("no results; run the init and run tasks first");

  const auto population = build_population(res, p.config.seq_merge_func);
  const ConfigRecord& best = best_config(population);
  const long long data_step = max_step(res);
  const long long new_step = data_step + 1;
  // The repeat counter grows by exactly one per step. The maximal count
  // equals the previous step's counter, so this also tops a best
  // configuration that skipped re-evaluations back up to a fair count.
  long long k = 0;
  for (const auto& c : population) k = std::max(k, c.count);
  ++k;

  const BestRecord bst_row{best.utility, best.values, best.count, best.config,
                           data_step};
  append_bst(bst_row, p.paths.bst(), p.roi);

  const ModelPluginKind kind =
      model_plugin_from_name(p.config.seq_prediction_model_func);
  const bool adaptive =
      p.config.seq_use_adaptive_roi && kind == ModelPluginKind::kLmOptim;
  if (p.config.seq_use_adaptive_roi && !adaptive && log && new_step == 1)
    *log << "warning: seq.useAdaptiveRoi requires spotPredictLmOptim; "
            "ignored\n";

  RegionOfInterest region = p.roi;
  if (adaptive && std::filesystem::exists(p.paths.aroi()))
    region = read_roi(p.paths.aroi());

  const auto evaluated = detail::population_points(population);
  const long long l = p.config.candidate_pool(p.roi.size());
  const long long d = p.config.seq_design_new_size;

  std::vector<std::vector<double>> candidates;
  try {
    if (adaptive) {
      auto batch =
          detail::adaptive_roi_step(p, res, population, region, new_step, log);
      candidates = std::move(batch.points);
      auto extra = detail::tree_extra_point(p, res, evaluated, new_step);
      candidates.insert(candidates.end(), extra.begin(), extra.end());
      write_roi(region, p.paths.aroi());
    } else if (kind == ModelPluginKind::kLmOptim) {
      const Dataset merged = p.config.seq_merge_func == "median"
                                 ? merge_median(res)
                                 : merge_mean(res);
      const LinearFit fit = fit_linear(merged, region);
      try {
        std::vector<PathPoint> path;
        if (p.config.seq_use_canonical_path) {
          const int half = std::max<int>(
              1, static_cast<int>(p.config.seq_path_size) / 2);
          path = canonical_path(fit.model, half, p.config.seq_path_step);
        } else {
          path = steepest_descent_path(
              fit.model, static_cast<int>(p.config.seq_path_size),
              p.config.seq_path_step);
        }
        for (const auto& point : path) candidates.push_back(point.original);
      } catch (const Error& e) {
        if (log)
          *log << "descent path unavailable (" << e.what()
               << "); selecting the best of a sample\n";
        const LinearMetamodel model(fit);
        Rng rng = task_rng(p.config, kRngCandidates,
                           static_cast<std::uint64_t>(new_step));
        candidates = propose_candidates(model, region, l, d, rng, evaluated);
      }
    } else if (kind == ModelPluginKind::kForestGp) {
      RandomForest::Options forest_options;
      forest_options.n_trees = p.config.forest_ntree;
      forest_options.mtry = p.config.forest_mtry_for(region.size());
      forest_options.min_node = p.config.forest_nodesize;
      forest_options.max_depth = p.config.forest_maxdepth;
      const ForestMetamodel forest(
          RandomForest::fit(raw_dataset(res), forest_options,
                            task_rng(p.config, kRngForest,
                                     static_cast<std::uint64_t>(new_step))));
      GaussianProcess::Options gp_options;
      gp_options.nugget = p.config.gp_nugget;
      const Dataset merged = p.config.seq_merge_func == "median"
                                 ? merge_median(res)
                                 : merge_mean(res);
      const GpMetamodel gp(GaussianProcess::fit(merged, region, gp_options));
      Rng rng = task_rng(p.config, kRngCandidates,
                         static_cast<std::uint64_t>(new_step));
      candidates = combine_proposals({&forest, &gp}, region, l, d, rng,
                                     evaluated);
    } else {
      const auto model =
          detail::fit_plugin_model(p, kind, res, region, new_step);
      Rng rng = task_rng(p.config, kRngCandidates,
                         static_cast<std::uint64_t>(new_step));
      candidates = propose_candidates(*model, region, l, d, rng, evaluated);
    }
  } catch (const Error& e) {
    if (log)
      *log << "model fit failed (" << e.what()
           << "); falling back to a Latin hypercube batch\n";
    candidates = detail::table_points(
        lhs_design(region, static_cast<std::size_t>(std::max<long long>(d, 1)),
                   task_rng(p.config, kRngFallback,
                            static_cast<std::uint64_t>(new_step))));
  }

  candidates = detail::dedupe_candidates(std::move(candidates), p.roi, evaluated);

  const DesignTable old_des = std::filesystem::exists(p.paths.des())
                                  ? read_des(p.paths.des(), p.roi)
                                  : DesignTable{p.roi, {}};
  long long next_id = max_config_id(res, &old_des) + 1;

  DesignTable design{p.roi, {}};
  DesignPoint best_row;
  best_row.values = best.values;
  best_row.config = best.config;
  best_row.repeats = k;
  best_row.step = new_step;
  best_row.seed = p.config.alg_seed;
  design.rows.push_back(std::move(best_row));
  for (auto& candidate : candidates) {
    DesignPoint row;
    row.values = std::move(candidate);
    row.config = next_id++;
    row.repeats = k;
    row.step = new_step;
    row.seed = p.config.alg_seed;
    design.rows.push_back(std::move(row));
  }
  write_des(design, p.paths.des());
  return SeqOutcome{new_step, bst_row};
}

struct AutoResult {
  long long evaluations = 0;
  BestRecord best;
};

/**
 * The automatic mode: initial design, then alternating run and sequential
 * steps until the budget is exhausted. A cycle that does not fit the
 * remaining budget is truncated candidate-by-candidate (the incumbent's
 * re-evaluation has priority). Appends the final best-file row and prints
 * the default report.
 */
inline AutoResult auto_task(Project& p, std::ostream* log = &std::cerr,
                            std::ostream* out = &std::cout) {
  init_task(p);
  run_task(p);
  const long long budget = p.config.auto_loop_nevals;

  while (true) {
    const ResultTable res = read_res(p.paths.res(), p.roi);
    const long long remaining =
        budget - static_cast<long long>(res.rows.size());
    if (remaining <= 0) break;

    // The next cycle re-evaluates the incumbent up to the incremented
    // repeat counter; when not even that fits, the budget is exhausted.
    {
      const auto population = build_population(res, p.config.seq_merge_func);
      long long k = 0;
      for (const auto& c : population) k = std::max(k, c.count);
      ++k;
      if (remaining < k - best_config(population).count) break;
    }

    seq_task(p, log);

    DesignTable design = read_des(p.paths.des(), p.roi);
    std::map<long long, long long> counts;
    for (const auto& rec : res.rows) ++counts[rec.config];
    long long left = remaining;
    std::vector<DesignPoint> kept;
    for (const auto& row : design.rows) {
      const long long need = row.repeats - counts[row.config];
      if (need <= 0) {
        kept.push_back(row);
      } else if (need <= left) {
        kept.push_back(row);
        left -= need;
      }
    }
    if (left == remaining) break;  // nothing fits, budget is exhausted
    design.rows = std::move(kept);
    write_des(design, p.paths.des());
    run_task(p);
  }

  const ResultTable res = read_res(p.paths.res(), p.roi);
  const auto population = build_population(res, p.config.seq_merge_func);
  const ConfigRecord& best = best_config(population);
  const BestRecord final_row{best.utility, best.values, best.count,
                             best.config, max_step(res)};
  append_bst(final_row, p.paths.bst(), p.roi);

  if (out) *out << report_default(p);
  return AutoResult{static_cast<long long>(res.rows.size()), final_row};
}

struct MetaInstance {
  int index = 0;
  bool ok = false;
  std::string message;
  AutoResult result;
  Project project;
};

namespace detail {

inline std::string format_apd_file(const ApdSettings& apd) {
  std::string out;
  for (const auto& [key, value] : apd.entries()) {
    out += key;
    out += " = ";
    if (const double* d = std::get_if<double>(&value)) {
      out += format_real(*d);
    } else if (const std::string* s = std::get_if<std::string>(&value)) {
      out += '"' + *s + '"';
    } else {
      const auto& vec = std::get<std::vector<double>>(value);
      out += '(';
      for (std::size_t i = 0; i < vec.size(); ++i) {
        if (i) out += ", ";
        out += format_real(vec[i]);
      }
      out += ')';
    }
    out += '\n';
  }
  return out;
}

}  // namespace detail

/**
 * Runs the automatic mode once per instance. Each non-empty line of the
 * instance file lists APD overrides (`key = value`, several separated by
 * `;`); every instance gets an isolated project directory. Failures are
 * recorded and the remaining instances continue.
 */
inline std::vector<MetaInstance> meta_task(
    const Project& base, const std::filesystem::path& instances_path,
    std::ostream* log = &std::cerr, std::ostream* out = &std::cout) {
  const auto text = detail::read_text_file(instances_path);
  std::vector<std::string> instance_lines;
  for (const auto& line : detail::split_lines(text)) {
    const std::string cleaned = detail::trim(detail::strip_comment(line));
    if (!cleaned.empty()) instance_lines.push_back(cleaned);
  }
  if (instance_lines.empty())
    throw Error("instance file lists no instances: " +
                instances_path.string());

  const std::string stem = base.paths.basename.filename().string();
  const std::filesystem::path meta_dir =
      base.paths.basename.parent_path() / (stem + "_meta");

  std::vector<MetaInstance> results;
  for (std::size_t i = 0; i < instance_lines.size(); ++i) {
    MetaInstance inst;
    inst.index = static_cast<int>(i + 1);
    inst.project = base;
    inst.project.config.io_basename.clear();
    const std::filesystem::path dir =
        meta_dir / ("instance_" + std::to_string(i + 1));
    try {
      std::filesystem::create_directories(dir);
      inst.project.paths.basename = dir / stem;

      std::string segment;
      std::stringstream line(instance_lines[i]);
      while (std::getline(line, segment, ';')) {
        const std::string entry = detail::trim(segment);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
          throw Error("instance " + std::to_string(i + 1) +
                      ": expected 'key = value', got '" + entry + "'");
        const std::string key = detail::trim(entry.substr(0, eq));
        const std::string value = detail::trim(entry.substr(eq + 1));
        if (key.empty() || value.empty())
          throw Error("instance " + std::to_string(i + 1) +
                      ": empty key or value");
        inst.project.apd.set(key, parse_apd_value(value));
      }

      if (!base.conf_source.empty() &&
          std::filesystem::exists(base.conf_source))
        detail::write_text_file(inst.project.paths.conf(),
                                detail::read_text_file(base.conf_source));
      write_roi(inst.project.roi, inst.project.paths.roi());
      detail::write_text_file(inst.project.paths.apd(),
                              detail::format_apd_file(inst.project.apd));

      if (out) *out << "--- instance " << (i + 1) << " ---\n";
      inst.result = auto_task(inst.project, log, out);
      inst.ok = true;
    } catch (const Error& e) {
      inst.ok = false;
      inst.message = e.what();
      if (log)
        *log << "instance " << (i + 1) << " failed: " << e.what() << '\n';
    }
    results.push_back(std::move(inst));
  }

  if (out) {
    *out << "\nmeta summary:\n";
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{"INSTANCE", "EVALS", "Y"};
    for (const auto& name : base.roi.names()) header.push_back(name);
    header.push_back("CONFIG");
    table.push_back(std::move(header));
    for (const auto& inst : results) {
      std::vector<std::string> row{std::to_string(inst.index)};
      if (inst.ok) {
        row.push_back(format_int(inst.result.evaluations));
        row.push_back(format_real(inst.result.best.y));
        for (double v : inst.result.best.values) row.push_back(format_real(v));
        row.push_back(format_int(inst.result.best.config));
      } else {
        row.push_back("failed:");
        row.push_back(inst.message);
      }
      table.push_back(std::move(row));
    }
    *out << detail::align_table(table);
  }
  return results;
}

}  // namespace spot
