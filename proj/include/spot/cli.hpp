#pragma once

#include <algorithm>
#include <cctype>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "spot/engine.hpp"
#include "spot/error.hpp"
#include "spot/project.hpp"
#include "spot/report.hpp"

namespace spot {

namespace detail {

inline std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace detail

/**
 * Entry point behind the `spot` binary:
 *
 *   spot <conf> [task] [--set key=value]... [--instances file]
 *
 * Tasks are init, run, seq, rep, auto (the default), and meta. Returns 0 on
 * success, 1 for usage errors, 2 for runtime failures.
 */
inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"sequential parameter optimization toolkit"};
  std::string conf_path;
  std::string task = "auto";
  std::string instances;
  std::vector<std::string> sets;
  app.add_option("conf", conf_path, "project configuration file")->required();
  app.add_option("task", task, "init | run | seq | rep | auto | meta");
  app.add_option("--set", sets, "override a configuration entry")
      ->type_size(1)
      ->option_text("KEY=VALUE");
  app.add_option("--instances", instances, "instance list for the meta task")
      ->option_text("FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  SpotConfig scratch;
  for (const auto& entry : sets) {
    const auto eq = entry.find('=');
    const std::string key =
        eq == std::string::npos ? "" : detail::trim(entry.substr(0, eq));
    const std::string value =
        eq == std::string::npos ? "" : detail::trim(entry.substr(eq + 1));
    if (key.empty()) {
      std::cerr << "invalid --set '" << entry << "': expected KEY=VALUE\n";
      return 1;
    }
    try {
      apply_conf_entry(scratch, key, value);
    } catch (const Error& e) {
      std::cerr << "invalid --set '" << entry << "': " << e.what() << '\n';
      return 1;
    }
    overrides.emplace_back(key, value);
  }

  const std::string kind = detail::lowercase(task);
  if (kind != "init" && kind != "run" && kind != "seq" && kind != "rep" &&
      kind != "auto" && kind != "meta") {
    std::cerr << "unknown task '" << task
              << "' (expected init, run, seq, rep, auto, or meta)\n";
    return 1;
  }
  if (kind == "meta" && instances.empty()) {
    std::cerr << "the meta task requires --instances FILE\n";
    return 1;
  }

  try {
    Project p = load_project(conf_path, overrides);
    if (kind == "init") {
      init_task(p);
      std::cout << "wrote " << p.paths.des().string() << '\n';
    } else if (kind == "run") {
      const long long n = run_task(p);
      std::cout << "appended " << n << " result" << (n == 1 ? "" : "s")
                << " to " << p.paths.res().string() << '\n';
    } else if (kind == "seq") {
      const SeqOutcome outcome = seq_task(p);
      std::cout << "step " << outcome.step
                << ": best Y = " << format_real(outcome.best.y)
                << " (configuration " << outcome.best.config << "), wrote "
                << p.paths.des().string() << '\n';
    } else if (kind == "rep") {
      std::cout << report_default(p);
      const auto sens_path = p.paths.with_ext(".sens.csv");
      detail::write_text_file(sens_path,
                              report_sens(p, p.config.report_sens_grid));
      std::cout << "\nwrote " << sens_path.string() << '\n';
      if (!read_bst(p.paths.bst(), p.roi).rows.empty()) {
        const auto progress_path = p.paths.with_ext(".progress.csv");
        detail::write_text_file(progress_path, export_progress(p));
        std::cout << "wrote " << progress_path.string() << '\n';
      }
    } else if (kind == "auto") {
      auto_task(p);
    } else {
      const auto instances_run = meta_task(p, instances);
      for (const auto& inst : instances_run)
        if (!inst.ok) return 2;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace spot
