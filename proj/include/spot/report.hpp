#pragma once

#include <string>
#include <vector>

#include "spot/dataset.hpp"
#include "spot/error.hpp"
#include "spot/fileio.hpp"
#include "spot/models/forest.hpp"
#include "spot/models/tree.hpp"
#include "spot/project.hpp"

namespace spot {

namespace detail {

inline std::string align_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j >= widths.size()) widths.push_back(0);
      widths[j] = std::max(widths[j], row[j].size());
    }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out.append(widths[j] - row[j].size(), ' ');
      out += row[j];
    }
    out += '\n';
  }
  return out;
}

inline BestRecord current_best(const Project& p, const ResultTable& res) {
  const BestTable bst = read_bst(p.paths.bst(), p.roi);
  if (!bst.rows.empty()) return bst.rows.back();
  const auto population = build_population(res, p.config.seq_merge_func);
  const ConfigRecord& best = best_config(population);
  return BestRecord{best.utility, best.values, best.count, best.config,
                    max_step(res)};
}

inline void print_tree_node(const RegressionTree& tree, std::size_t index,
                            const std::vector<std::string>& names, int depth,
                            std::string& out) {
  const auto& node = tree.nodes()[index];
  if (node.is_leaf) {
    out += " (mean=" + format_real(node.prediction) +
           ", n=" + std::to_string(node.n_obs) + ") *\n";
    return;
  }
  out += " (n=" + std::to_string(node.n_obs) + ")\n";
  const std::string indent(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string& name = names[static_cast<std::size_t>(node.feature)];
  out += indent + name + " < " + format_real(node.threshold);
  print_tree_node(tree, static_cast<std::size_t>(node.left), names, depth + 1,
                  out);
  out += indent + name + " >= " + format_real(node.threshold);
  print_tree_node(tree, static_cast<std::size_t>(node.right), names, depth + 1,
                  out);
}

}  // namespace detail

/**
 * Text report: the best configuration found (matching the final best-file
 * row) plus a depth-limited regression tree over the merged results, leaves
 * annotated with their mean outcome and observation count.
 */
inline std::string report_default(const Project& p) {
  const ResultTable res = read_res(p.paths.res(), p.roi);
  if (res.rows.empty()) throw Error("no results to report");
  const BestRecord best = detail::current_best(p, res);

  std::string out = "Best solution found with " +
                    std::to_string(res.rows.size()) + " evaluations:\n";
  std::vector<std::vector<std::string>> table(2);
  table[0] = {"Y"};
  for (const auto& name : p.roi.names()) table[0].push_back(name);
  table[0].insert(table[0].end(), {"COUNT", "CONFIG"});
  table[1] = {format_real(best.y)};
  for (double v : best.values) table[1].push_back(format_real(v));
  table[1].push_back(format_int(best.count));
  table[1].push_back(format_int(best.config));
  out += detail::align_table(table);

  out += "\nRegression tree on merged results:\n";
  const Dataset merged = p.config.seq_merge_func == "median"
                             ? merge_median(res)
                             : merge_mean(res);
  if (merged.size() < 2) {
    out += "root (mean=" + format_real(merged.y(0)) + ", n=1) *\n";
    return out;
  }
  RegressionTree::Options options;
  options.min_node = std::min<long long>(p.config.forest_nodesize,
                                         static_cast<long long>(merged.size()) / 2);
  options.min_node = std::max<long long>(1, options.min_node);
  options.max_depth = p.config.report_tree_depth;
  const RegressionTree tree = RegressionTree::fit(merged, options);
  out += "root";
  detail::print_tree_node(tree, 0, p.roi.names(), 0, out);
  return out;
}

/**
 * Per-parameter effect curves: a random forest on the raw results is swept
 * over each parameter's coded [-1, 1] range while the other parameters hold
 * the best configuration's values. CSV columns: param, normalized_x,
 * predicted_y.
 */
inline std::string report_sens(const Project& p, long long grid_size) {
  if (grid_size < 2) throw Error("sensitivity grid needs at least 2 points");
  const ResultTable res = read_res(p.paths.res(), p.roi);
  if (res.rows.empty()) throw Error("no results to report");
  const BestRecord best = detail::current_best(p, res);
  const Dataset raw = raw_dataset(res);

  RandomForest::Options options;
  options.n_trees = p.config.forest_ntree;
  options.mtry = p.config.forest_mtry_for(p.roi.size());
  options.min_node = p.config.forest_nodesize;
  options.max_depth = p.config.forest_maxdepth;
  const RandomForest forest =
      RandomForest::fit(raw, options, task_rng(p.config, kRngReport, 0));

  std::string out = "param,normalized_x,predicted_y\n";
  for (std::size_t i = 0; i < p.roi.size(); ++i) {
    const auto& param = p.roi[i];
    for (long long g = 0; g < grid_size; ++g) {
      const double z = -1.0 + 2.0 * static_cast<double>(g) /
                                  static_cast<double>(grid_size - 1);
      std::vector<double> x = best.values;
      x[i] = 0.5 * (param.low + param.high) + z * 0.5 * (param.high - param.low);
      x = conform(x, p.roi);
      out += param.name + ',' + format_real(z) + ',' +
             format_real(forest.predict(x)) + '\n';
    }
  }
  return out;
}

/// Best-so-far trace straight from the best file, as CSV for plotting.
inline std::string export_progress(const Project& p) {
  const BestTable bst = read_bst(p.paths.bst(), p.roi);
  if (bst.rows.empty())
    throw Error("no best file; run the seq or auto task first");
  std::string out = "STEP,Y";
  for (const auto& name : p.roi.names()) out += ',' + name;
  out += ",COUNT,CONFIG\n";
  for (const auto& rec : bst.rows) {
    out += format_int(rec.step) + ',' + format_real(rec.y);
    for (double v : rec.values) out += ',' + format_real(v);
    out += ',' + format_int(rec.count) + ',' + format_int(rec.config) + '\n';
  }
  return out;
}

}  // namespace spot
