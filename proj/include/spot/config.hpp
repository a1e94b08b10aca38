#pragma once

#include <cctype>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spot/error.hpp"
#include "spot/fileio.hpp"
#include "spot/param_space.hpp"

namespace spot {

/**
 * Settings read from a CONF file. Every field maps to one flat `key = value`
 * entry; apply_conf_entry() lists the key spellings.
 */
struct SpotConfig {
  long long auto_loop_nevals = 250;

  long long init_design_size = 10;
  long long init_design_repeats = 2;
  std::string init_design_func = "spotCreateDesignLhs";

  std::string seq_prediction_model_func = "spotPredictRandomForest";
  long long seq_design_new_size = 1;
  long long seq_candidates = 0;  // 0 selects 200 * dimension
  bool seq_use_canonical_path = false;
  bool seq_use_adaptive_roi = false;
  std::string seq_merge_func = "mean";  // or "median"
  std::string seq_adaptive_roi_best_from = "all";  // or "path"
  long long seq_path_size = 5;
  double seq_path_step = 0.1;

  long long forest_ntree = 500;
  long long forest_mtry = 0;  // 0 selects max(1, dimension / 3)
  long long forest_nodesize = 5;
  long long forest_maxdepth = 30;
  double gp_nugget = 1e-6;

  std::string alg_func = "spotAlgStartSann";
  long long alg_seed = 1235;
  double alg_timeout = 300.0;  // seconds, external runner only

  long long spot_seed = 1;
  std::string io_basename;  // empty: derived from the CONF file name

  long long report_sens_grid = 21;
  long long report_tree_depth = 3;

  long long candidate_pool(std::size_t dimension) const {
    return seq_candidates > 0
               ? seq_candidates
               : 200 * static_cast<long long>(dimension);
  }
  long long forest_mtry_for(std::size_t dimension) const {
    if (forest_mtry > 0) return forest_mtry;
    return std::max<long long>(1, static_cast<long long>(dimension) / 3);
  }

  void validate() const {
    if (init_design_size < 1) throw Error("init.design.size must be >= 1");
    if (init_design_repeats < 1)
      throw Error("init.design.repeats must be >= 1");
    if (auto_loop_nevals < init_design_size * init_design_repeats)
      throw Error(
          "auto.loop.nevals must cover the initial design "
          "(init.design.size * init.design.repeats)");
    if (seq_design_new_size < 1) throw Error("seq.design.new.size must be >= 1");
    if (seq_candidates < 0) throw Error("seq.candidates must be >= 0");
    if (seq_merge_func != "mean" && seq_merge_func != "median")
      throw Error("seq.merge.func must be \"mean\" or \"median\"");
    if (seq_adaptive_roi_best_from != "all" &&
        seq_adaptive_roi_best_from != "path")
      throw Error("seq.adaptiveRoi.bestFrom must be \"all\" or \"path\"");
    if (seq_path_size < 1) throw Error("seq.path.size must be >= 1");
    if (!(seq_path_step > 0)) throw Error("seq.path.step must be > 0");
    if (forest_ntree < 1) throw Error("seq.forest.ntree must be >= 1");
    if (forest_mtry < 0) throw Error("seq.forest.mtry must be >= 0");
    if (forest_nodesize < 1) throw Error("seq.forest.nodesize must be >= 1");
    if (forest_maxdepth < 1) throw Error("seq.forest.maxdepth must be >= 1");
    if (!(gp_nugget >= 0)) throw Error("seq.gp.nugget must be >= 0");
    if (!(alg_timeout > 0)) throw Error("alg.timeout must be > 0");
    if (report_sens_grid < 2) throw Error("report.sens.grid must be >= 2");
    if (report_tree_depth < 1) throw Error("report.tree.depth must be >= 1");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Removes a trailing # comment, honoring double quotes.
inline std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    else if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

inline std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  return s;
}

inline bool iequals(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

inline long long conf_int(const std::string& key, const std::string& value) {
  const std::string v = unquote(trim(value));
  long long out = 0;
  if (!parse_ll(v, out))
    throw Error("CONF key '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

inline double conf_real(const std::string& key, const std::string& value) {
  const std::string v = unquote(trim(value));
  double out = 0;
  if (!parse_double(v, out))
    throw Error("CONF key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

inline bool conf_bool(const std::string& key, const std::string& value) {
  const std::string v = unquote(trim(value));
  if (iequals(v, "TRUE") || v == "T" || v == "1") return true;
  if (iequals(v, "FALSE") || v == "F" || v == "0") return false;
  throw Error("CONF key '" + key + "': expected TRUE or FALSE, got '" + v +
              "'");
}

inline std::string conf_string(const std::string& key,
                               const std::string& value) {
  const std::string v = unquote(trim(value));
  if (v.empty()) throw Error("CONF key '" + key + "': empty value");
  return v;
}

}  // namespace detail

/**
 * Applies one `key = value` entry. Returns false when the key is unknown
 * (callers warn); throws on a malformed value for a known key.
 */
inline bool apply_conf_entry(SpotConfig& config, const std::string& key,
                             const std::string& value) {
  using namespace detail;
  if (key == "auto.loop.nevals") config.auto_loop_nevals = conf_int(key, value);
  else if (key == "init.design.size") config.init_design_size = conf_int(key, value);
  else if (key == "init.design.repeats") config.init_design_repeats = conf_int(key, value);
  else if (key == "init.design.func") config.init_design_func = conf_string(key, value);
  else if (key == "seq.predictionModel.func") config.seq_prediction_model_func = conf_string(key, value);
  else if (key == "seq.design.new.size") config.seq_design_new_size = conf_int(key, value);
  else if (key == "seq.candidates") config.seq_candidates = conf_int(key, value);
  else if (key == "seq.useCanonicalPath") config.seq_use_canonical_path = conf_bool(key, value);
  else if (key == "seq.useAdaptiveRoi") config.seq_use_adaptive_roi = conf_bool(key, value);
  else if (key == "seq.merge.func") config.seq_merge_func = conf_string(key, value);
  else if (key == "seq.adaptiveRoi.bestFrom") config.seq_adaptive_roi_best_from = conf_string(key, value);
  else if (key == "seq.path.size") config.seq_path_size = conf_int(key, value);
  else if (key == "seq.path.step") config.seq_path_step = conf_real(key, value);
  else if (key == "seq.forest.ntree") config.forest_ntree = conf_int(key, value);
  else if (key == "seq.forest.mtry") config.forest_mtry = conf_int(key, value);
  else if (key == "seq.forest.nodesize") config.forest_nodesize = conf_int(key, value);
  else if (key == "seq.forest.maxdepth") config.forest_maxdepth = conf_int(key, value);
  else if (key == "seq.gp.nugget") config.gp_nugget = conf_real(key, value);
  else if (key == "alg.func") config.alg_func = conf_string(key, value);
  else if (key == "alg.seed") config.alg_seed = conf_int(key, value);
  else if (key == "alg.timeout") config.alg_timeout = conf_real(key, value);
  else if (key == "spot.seed") config.spot_seed = conf_int(key, value);
  else if (key == "io.basename") config.io_basename = conf_string(key, value);
  else if (key == "report.sens.grid") config.report_sens_grid = conf_int(key, value);
  else if (key == "report.tree.depth") config.report_tree_depth = conf_int(key, value);
  else return false;
  return true;
}

/**
 * Parses CONF text (`key = value` per line, # comments, TRUE/FALSE booleans,
 * optionally quoted strings). Unknown keys produce warnings, not errors.
 */
inline SpotConfig parse_conf(const std::string& text,
                             std::vector<std::string>* warnings = nullptr) {
  SpotConfig config;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = detail::trim(detail::strip_comment(lines[ln]));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("CONF line " + std::to_string(ln + 1) +
                  ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty())
      throw Error("CONF line " + std::to_string(ln + 1) + ": empty key");
    if (!apply_conf_entry(config, key, value) && warnings)
      warnings->push_back("unknown CONF key '" + key + "' (line " +
                          std::to_string(ln + 1) + ") ignored");
  }
  return config;
}

inline SpotConfig read_conf(const std::filesystem::path& path,
                            std::vector<std::string>* warnings = nullptr) {
  return parse_conf(detail::read_text_file(path), warnings);
}

// ---------------------------------------------------------------------------
// APD files: fixed problem settings forwarded to the tuned algorithm.
// ---------------------------------------------------------------------------

using ApdValue = std::variant<double, std::string, std::vector<double>>;

/// `key = value` settings in declaration order; later entries replace earlier.
class ApdSettings {
 public:
  void set(const std::string& key, ApdValue value) {
    for (auto& e : entries_) {
      if (detail::iequals(e.first, key)) {
        e.second = std::move(value);
        return;
      }
    }
    entries_.emplace_back(key, std::move(value));
  }

  const ApdValue* find(const std::string& key) const {
    for (const auto& e : entries_)
      if (detail::iequals(e.first, key)) return &e.second;
    return nullptr;
  }

  double number(const std::string& key, double fallback) const {
    const ApdValue* v = find(key);
    if (!v) return fallback;
    if (const double* d = std::get_if<double>(v)) return *d;
    throw Error("APD key '" + key + "' is not a number");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    const ApdValue* v = find(key);
    if (!v) return fallback;
    if (const std::string* s = std::get_if<std::string>(v)) return *s;
    throw Error("APD key '" + key + "' is not a string");
  }

  std::vector<double> numbers(const std::string& key,
                              std::vector<double> fallback) const {
    const ApdValue* v = find(key);
    if (!v) return fallback;
    if (const auto* vec = std::get_if<std::vector<double>>(v)) return *vec;
    if (const double* d = std::get_if<double>(v)) return {*d};
    throw Error("APD key '" + key + "' is not numeric");
  }

  const std::vector<std::pair<std::string, ApdValue>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, ApdValue>> entries_;
};

namespace detail {

// Accepts `(1, 2)` and `c(1, 2)` vector spellings.
inline std::optional<std::vector<double>> parse_apd_vector(
    const std::string& value) {
  std::string v = value;
  if (v.size() >= 1 && (v[0] == 'c' || v[0] == 'C') &&
      v.find('(') == 1)
    v = v.substr(1);
  if (v.size() < 2 || v.front() != '(' || v.back() != ')')
    return std::nullopt;
  std::vector<double> out;
  std::string body = v.substr(1, v.size() - 2);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string tok =
        trim(body.substr(pos, comma == std::string::npos ? std::string::npos
                                                         : comma - pos));
    double d = 0;
    if (!parse_double(tok, d)) return std::nullopt;
    out.push_back(d);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace detail

inline ApdValue parse_apd_value(const std::string& raw) {
  const std::string v = detail::trim(raw);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
    return v.substr(1, v.size() - 2);
  if (auto vec = detail::parse_apd_vector(v)) return *vec;
  double d = 0;
  if (detail::parse_double(v, d)) return d;
  if (detail::iequals(v, "TRUE")) return 1.0;
  if (detail::iequals(v, "FALSE")) return 0.0;
  return v;  // bare word, e.g. an objective name
}

inline ApdSettings parse_apd(const std::string& text) {
  ApdSettings out;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = detail::trim(detail::strip_comment(lines[ln]));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("APD line " + std::to_string(ln + 1) +
                  ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    if (key.empty())
      throw Error("APD line " + std::to_string(ln + 1) + ": empty key");
    const std::string value = detail::trim(line.substr(eq + 1));
    if (value.empty())
      throw Error("APD line " + std::to_string(ln + 1) + ": empty value for '" +
                  key + "'");
    out.set(key, parse_apd_value(value));
  }
  return out;
}

/// Missing APD files are legal: every runner has built-in defaults.
inline ApdSettings read_apd(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return ApdSettings{};
  return parse_apd(detail::read_text_file(path));
}

}  // namespace spot
