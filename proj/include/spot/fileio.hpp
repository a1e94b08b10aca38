#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spot/error.hpp"
#include "spot/param_space.hpp"
#include "spot/tables.hpp"

namespace spot {

/**
 * Shortest decimal representation with at least 6 significant digits that
 * parses back to exactly the same double. All file writers use this, so an
 * in-memory table serializes byte-identically on every platform.
 */
inline std::string format_real(double v) {
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string format_int(long long v) { return std::to_string(v); }

namespace detail {

inline bool parse_ll(const std::string& tok, long long& out) {
  try {
    std::size_t pos = 0;
    out = std::stoll(tok, &pos);
    return pos == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file: " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

inline void append_text_file(const std::filesystem::path& path,
                             const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to file: " + path.string());
  out << text;
  if (!out) throw Error("append failed: " + path.string());
}

// Parsed whitespace table: header tokens + numeric rows.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> line_numbers;
};

inline TextTable parse_table(const std::string& text, const char* what) {
  TextTable out;
  const auto lines = split_lines(text);
  bool have_header = false;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tokens = split_ws(lines[ln]);
    if (tokens.empty()) continue;
    if (!have_header) {
      out.header = tokens;
      have_header = true;
      continue;
    }
    std::vector<double> row(tokens.size());
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      if (!parse_double(tokens[j], row[j]))
        throw Error(std::string(what) + " line " + std::to_string(ln + 1) +
                    ": bad numeric value '" + tokens[j] + "'");
    }
    if (row.size() != out.header.size())
      throw Error(std::string(what) + " line " + std::to_string(ln + 1) +
                  ": expected " + std::to_string(out.header.size()) +
                  " columns, got " + std::to_string(row.size()));
    out.rows.push_back(std::move(row));
    out.line_numbers.push_back(ln + 1);
  }
  if (!have_header) throw Error(std::string(what) + ": missing header row");
  return out;
}

inline std::string join_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ' ';
    line += fields[i];
  }
  line += '\n';
  return line;
}

// Maps the file's parameter columns onto ROI order; every header name must
// be either a ROI parameter or one of the expected metadata columns.
inline std::vector<std::size_t> map_columns(
    const std::vector<std::string>& header, const RegionOfInterest& roi,
    const std::vector<std::string>& meta, const char* what,
    std::vector<std::ptrdiff_t>& meta_cols) {
  std::vector<std::size_t> param_col(roi.size(), header.size());
  meta_cols.assign(meta.size(), -1);
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (auto idx = roi.find(header[j])) {
      param_col[*idx] = j;
      continue;
    }
    bool known = false;
    for (std::size_t m = 0; m < meta.size(); ++m) {
      if (header[j] == meta[m]) {
        meta_cols[m] = static_cast<std::ptrdiff_t>(j);
        known = true;
        break;
      }
    }
    if (!known)
      throw Error(std::string(what) + ": unknown column '" + header[j] + "'");
  }
  for (std::size_t i = 0; i < roi.size(); ++i)
    if (param_col[i] == header.size())
      throw Error(std::string(what) + ": missing column for parameter '" +
                  roi[i].name + "'");
  return param_col;
}

}  // namespace detail

/// Serialize a region in ROI line format (also used for the aroi state file).
inline std::string format_roi(const RegionOfInterest& roi) {
  std::string out;
  for (const auto& p : roi.params()) {
    out += p.name;
    out += ' ';
    out += format_real(p.low);
    out += ' ';
    out += format_real(p.high);
    out += ' ';
    out += param_type_name(p.type);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// DES files: header `<params> CONFIG REPEATS STEP SEED`, one row per point.
// ---------------------------------------------------------------------------

inline std::string format_des(const DesignTable& table) {
  std::vector<std::string> header = table.roi.names();
  header.insert(header.end(), {"CONFIG", "REPEATS", "STEP", "SEED"});
  std::string out = detail::join_line(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    fields.reserve(header.size());
    for (double v : row.values) fields.push_back(format_real(v));
    fields.push_back(format_int(row.config));
    fields.push_back(format_int(row.repeats));
    fields.push_back(format_int(row.step));
    fields.push_back(format_int(row.seed));
    out += detail::join_line(fields);
  }
  return out;
}

inline DesignTable parse_des(const std::string& text,
                             const RegionOfInterest& roi) {
  const auto table = detail::parse_table(text, "DES");
  std::vector<std::ptrdiff_t> meta_cols;
  const auto param_col = detail::map_columns(
      table.header, roi, {"CONFIG", "REPEATS", "STEP", "SEED"}, "DES", meta_cols);
  for (std::size_t m = 0; m < meta_cols.size(); ++m)
    if (meta_cols[m] < 0) throw Error("DES: missing metadata column");

  DesignTable out{roi, {}};
  out.rows.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    DesignPoint pt;
    pt.values.resize(roi.size());
    for (std::size_t i = 0; i < roi.size(); ++i)
      pt.values[i] = row[param_col[i]];
    pt.config = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[0])]);
    pt.repeats = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[1])]);
    pt.step = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[2])]);
    pt.seed = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[3])]);
    out.rows.push_back(std::move(pt));
  }
  return out;
}

inline void write_des(const DesignTable& table,
                      const std::filesystem::path& path) {
  detail::write_text_file(path, format_des(table));
}

inline DesignTable read_des(const std::filesystem::path& path,
                            const RegionOfInterest& roi) {
  return parse_des(detail::read_text_file(path), roi);
}

// ---------------------------------------------------------------------------
// RES files: header `Y <params> SEED CONFIG STEP`; strictly append-only.
// ---------------------------------------------------------------------------

inline std::string format_res_header(const RegionOfInterest& roi) {
  std::vector<std::string> header{"Y"};
  for (const auto& name : roi.names()) header.push_back(name);
  header.insert(header.end(), {"SEED", "CONFIG", "STEP"});
  return detail::join_line(header);
}

inline std::string format_res_row(const ResultRecord& rec) {
  std::vector<std::string> fields;
  fields.push_back(format_real(rec.y));
  for (double v : rec.values) fields.push_back(format_real(v));
  fields.push_back(format_int(rec.seed));
  fields.push_back(format_int(rec.config));
  fields.push_back(format_int(rec.step));
  return detail::join_line(fields);
}

/// Append records, writing the header first if the file does not exist yet.
inline void append_res(const std::vector<ResultRecord>& records,
                       const std::filesystem::path& path,
                       const RegionOfInterest& roi) {
  std::string out;
  if (!std::filesystem::exists(path)) out = format_res_header(roi);
  for (const auto& rec : records) out += format_res_row(rec);
  detail::append_text_file(path, out);
}

inline ResultTable parse_res(const std::string& text,
                             const RegionOfInterest& roi) {
  const auto table = detail::parse_table(text, "RES");
  std::vector<std::ptrdiff_t> meta_cols;
  const auto param_col = detail::map_columns(
      table.header, roi, {"Y", "SEED", "CONFIG", "STEP"}, "RES", meta_cols);
  if (meta_cols[0] < 0) throw Error("RES: missing Y column");

  ResultTable out{roi, {}};
  out.rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    ResultRecord rec;
    rec.y = row[static_cast<std::size_t>(meta_cols[0])];
    rec.values.resize(roi.size());
    for (std::size_t i = 0; i < roi.size(); ++i)
      rec.values[i] = row[param_col[i]];
    if (meta_cols[1] >= 0) rec.seed = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[1])]);
    if (meta_cols[2] >= 0) rec.config = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[2])]);
    // STEP tolerated as absent for forward compatibility
    if (meta_cols[3] >= 0) rec.step = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[3])]);
    out.rows.push_back(std::move(rec));
  }
  return out;
}

/// Read a RES file; a header-only (empty) file yields an empty table.
inline ResultTable read_res(const std::filesystem::path& path,
                            const RegionOfInterest& roi) {
  if (!std::filesystem::exists(path)) return ResultTable{roi, {}};
  return parse_res(detail::read_text_file(path), roi);
}

// ---------------------------------------------------------------------------
// BST files: header `Y <params> COUNT CONFIG STEP`, one row per tuning step.
// ---------------------------------------------------------------------------

inline std::string format_bst_header(const RegionOfInterest& roi) {
  std::vector<std::string> header{"Y"};
  for (const auto& name : roi.names()) header.push_back(name);
  header.insert(header.end(), {"COUNT", "CONFIG", "STEP"});
  return detail::join_line(header);
}

inline std::string format_bst_row(const BestRecord& rec) {
  std::vector<std::string> fields;
  fields.push_back(format_real(rec.y));
  for (double v : rec.values) fields.push_back(format_real(v));
  fields.push_back(format_int(rec.count));
  fields.push_back(format_int(rec.config));
  fields.push_back(format_int(rec.step));
  return detail::join_line(fields);
}

inline void append_bst(const BestRecord& rec, const std::filesystem::path& path,
                       const RegionOfInterest& roi) {
  std::string out;
  if (!std::filesystem::exists(path)) out = format_bst_header(roi);
  out += format_bst_row(rec);
  detail::append_text_file(path, out);
}

inline BestTable parse_bst(const std::string& text,
                           const RegionOfInterest& roi) {
  const auto table = detail::parse_table(text, "BST");
  std::vector<std::ptrdiff_t> meta_cols;
  const auto param_col = detail::map_columns(
      table.header, roi, {"Y", "COUNT", "CONFIG", "STEP"}, "BST", meta_cols);
  for (std::size_t m = 0; m < meta_cols.size(); ++m)
    if (meta_cols[m] < 0) throw Error("BST: missing metadata column");

  BestTable out{roi, {}};
  for (const auto& row : table.rows) {
    BestRecord rec;
    rec.y = row[static_cast<std::size_t>(meta_cols[0])];
    rec.values.resize(roi.size());
    for (std::size_t i = 0; i < roi.size(); ++i)
      rec.values[i] = row[param_col[i]];
    rec.count = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[1])]);
    rec.config = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[2])]);
    rec.step = static_cast<long long>(row[static_cast<std::size_t>(meta_cols[3])]);
    out.rows.push_back(std::move(rec));
  }
  return out;
}

inline BestTable read_bst(const std::filesystem::path& path,
                          const RegionOfInterest& roi) {
  if (!std::filesystem::exists(path)) return BestTable{roi, {}};
  return parse_bst(detail::read_text_file(path), roi);
}

inline RegionOfInterest read_roi(const std::filesystem::path& path) {
  return parse_roi(detail::read_text_file(path));
}

inline void write_roi(const RegionOfInterest& roi,
                      const std::filesystem::path& path) {
  detail::write_text_file(path, format_roi(roi));
}

/**
 * All files of one tuning project share a basename and differ only in the
 * extension.
 */
struct ProjectPaths {
  std::filesystem::path basename;

  static ProjectPaths from_conf(const std::filesystem::path& conf_path) {
    ProjectPaths p;
    p.basename = conf_path;
    p.basename.replace_extension();
    return p;
  }

  std::filesystem::path with_ext(const char* ext) const {
    std::filesystem::path p = basename;
    p += ext;
    return p;
  }

  std::filesystem::path conf() const { return with_ext(".conf"); }
  std::filesystem::path roi() const { return with_ext(".roi"); }
  std::filesystem::path apd() const { return with_ext(".apd"); }
  std::filesystem::path des() const { return with_ext(".des"); }
  std::filesystem::path res() const { return with_ext(".res"); }
  std::filesystem::path bst() const { return with_ext(".bst"); }
  std::filesystem::path aroi() const { return with_ext(".aroi"); }
};

}  // namespace spot
