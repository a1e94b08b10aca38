#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spot/error.hpp"

namespace spot {

/// Parameter kind as declared in the ROI file type column. INT and FACTOR
/// values are integers; FACTOR levels are transported as their integer codes.
enum class ParamType { kFloat, kInt, kFactor };

inline std::optional<ParamType> parse_param_type(std::string_view token) {
  if (token == "FLOAT") return ParamType::kFloat;
  if (token == "INT") return ParamType::kInt;
  if (token == "FACTOR") return ParamType::kFactor;
  return std::nullopt;
}

inline const char* param_type_name(ParamType t) {
  switch (t) {
    case ParamType::kFloat: return "FLOAT";
    case ParamType::kInt: return "INT";
    case ParamType::kFactor: return "FACTOR";
  }
  return "?";
}

/// One tunable parameter: name, inclusive bounds, type.
struct ParamDef {
  std::string name;
  double low = 0.0;
  double high = 0.0;
  ParamType type = ParamType::kFloat;
};

/**
 * Ordered set of tunable parameters. The parameter order is stable and
 * defines the column order in every design/result file.
 */
class RegionOfInterest {
 public:
  RegionOfInterest() = default;

  explicit RegionOfInterest(std::vector<ParamDef> params)
      : params_(std::move(params)) {
    if (params_.empty()) throw Error("region of interest needs at least one parameter");
    std::set<std::string> seen;
    for (const auto& p : params_) {
      if (p.name.empty()) throw Error("parameter with empty name");
      if (!seen.insert(p.name).second)
        throw Error("duplicate parameter name '" + p.name + "'");
      if (!(p.low <= p.high))
        throw Error("parameter '" + p.name + "': low > high");
    }
  }

  std::size_t size() const { return params_.size(); }
  const ParamDef& operator[](std::size_t i) const { return params_[i]; }
  const std::vector<ParamDef>& params() const { return params_; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(params_.size());
    for (const auto& p : params_) out.push_back(p.name);
    return out;
  }

  /// Index of the named parameter, or nullopt.
  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (params_[i].name == name) return i;
    return std::nullopt;
  }

 private:
  std::vector<ParamDef> params_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_double(const std::string& tok, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(tok, &pos);
    return pos == tok.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

}  // namespace detail

/**
 * Parse ROI file contents: one `NAME LOW HIGH TYPE` line per parameter,
 * whitespace separated, blank lines ignored. Errors name the line number.
 */
inline RegionOfInterest parse_roi(const std::string& text) {
  std::vector<ParamDef> defs;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tokens = detail::split_ws(lines[ln]);
    if (tokens.empty()) continue;
    const std::string where = "ROI line " + std::to_string(ln + 1);
    if (tokens.size() != 4)
      throw Error(where + ": expected `NAME LOW HIGH TYPE`, got " +
                  std::to_string(tokens.size()) + " fields");
    ParamDef def;
    def.name = tokens[0];
    if (!detail::parse_double(tokens[1], def.low))
      throw Error(where + ": bad LOW value '" + tokens[1] + "'");
    if (!detail::parse_double(tokens[2], def.high))
      throw Error(where + ": bad HIGH value '" + tokens[2] + "'");
    const auto type = parse_param_type(tokens[3]);
    if (!type) throw Error(where + ": unknown type '" + tokens[3] + "'");
    def.type = *type;
    if (def.low > def.high) throw Error(where + ": low > high");
    defs.push_back(std::move(def));
  }
  if (defs.empty()) throw Error("ROI: no parameters defined");
  try {
    return RegionOfInterest(std::move(defs));
  } catch (const Error& e) {
    throw Error(std::string("ROI: ") + e.what());
  }
}

/**
 * Linear map between original units and coded units, where each parameter
 * range [low, high] maps onto [-1, 1]. Zero-width dimensions are rejected:
 * coded analysis is undefined for them.
 */
struct CodedTransform {
  std::vector<double> center;
  std::vector<double> half_range;

  explicit CodedTransform(const RegionOfInterest& roi) {
    center.reserve(roi.size());
    half_range.reserve(roi.size());
    for (const auto& p : roi.params()) {
      center.push_back(0.5 * (p.low + p.high));
      half_range.push_back(0.5 * (p.high - p.low));
    }
  }

  std::size_t size() const { return center.size(); }

  std::vector<double> to_coded(const std::vector<double>& x) const {
    require_dim(x.size());
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (half_range[i] <= 0.0)
        throw Error("coded transform: zero half-range in dimension " +
                    std::to_string(i));
      z[i] = (x[i] - center[i]) / half_range[i];
    }
    return z;
  }

  std::vector<double> from_coded(const std::vector<double>& z) const {
    require_dim(z.size());
    std::vector<double> x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      x[i] = center[i] + half_range[i] * z[i];
    return x;
  }

 private:
  void require_dim(std::size_t n) const {
    if (n != center.size())
      throw Error("coded transform: dimension mismatch (" + std::to_string(n) +
                  " vs " + std::to_string(center.size()) + ")");
  }
};

inline std::vector<double> to_coded(const std::vector<double>& x,
                                    const RegionOfInterest& roi) {
  return CodedTransform(roi).to_coded(x);
}

inline std::vector<double> from_coded(const std::vector<double>& z,
                                      const RegionOfInterest& roi) {
  return CodedTransform(roi).from_coded(z);
}

namespace detail {

// Round half away from zero, symmetric around the range midpoint.
inline double round_half_away(double v) { return std::round(v); }

}  // namespace detail

/**
 * Clamp a point into the region and round INT/FACTOR coordinates to their
 * nearest admissible integer level. Total on finite inputs; idempotent.
 */
inline std::vector<double> conform(const std::vector<double>& x,
                                   const RegionOfInterest& roi) {
  if (x.size() != roi.size())
    throw Error("conform: dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& p = roi[i];
    if (!std::isfinite(x[i]))
      throw Error("conform: non-finite value for parameter '" + p.name + "'");
    double v = std::min(std::max(x[i], p.low), p.high);
    if (p.type != ParamType::kFloat) {
      v = detail::round_half_away(v);
      // keep the rounded level inside non-integral bounds
      v = std::min(std::max(v, std::ceil(p.low)), std::floor(p.high));
    }
    out[i] = v;
  }
  return out;
}

}  // namespace spot
