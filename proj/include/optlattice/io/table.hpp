// Copyright 2026 The optlattice Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPTLATTICE_IO_TABLE_HPP
#define OPTLATTICE_IO_TABLE_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include "optlattice/error.hpp"

namespace optlattice::io {

// 17 significant digits: enough to round-trip any binary64 value.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

inline double parse_double(const std::string &s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::io, "not a number: '" + s + "'");
  }
  return v;
}

using Cell = std::variant<double, long long, std::string>;

inline std::string format_cell(const Cell &c) {
  if (const auto *d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto *i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

struct ResultTable {
  // Emitted as "# key=value" lines before the column header.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
      throw Error(ErrorKind::invalid_argument,
                  "ResultTable: row has " + std::to_string(row.size()) +
                      " cells, table has " + std::to_string(columns.size()) +
                      " columns");
    }
    rows.push_back(std::move(row));
  }
};

inline std::string to_csv(const ResultTable &t) {
  std::string out;
  for (const auto &[k, v] : t.metadata) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out += (i ? "," : "") + t.columns[i];
  }
  out += "\n";
  for (const auto &row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + format_cell(row[i]);
    }
    out += "\n";
  }
  return out;
}

// Parsed form of a CSV written by to_csv. Cells stay as text.
struct CsvDocument {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string &name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw Error(ErrorKind::io, "no column '" + name + "'");
  }
  double number(std::size_t row, const std::string &name) const {
    return parse_double(rows.at(row).at(column(name)));
  }
  std::string meta(const std::string &key) const {
    for (const auto &[k, v] : metadata) {
      if (k == key) return v;
    }
    throw Error(ErrorKind::io, "no metadata key '" + key + "'");
  }
};

inline std::vector<std::string> split(const std::string &line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline CsvDocument parse_csv(const std::string &text) {
  CsvDocument doc;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      if (header) throw Error(ErrorKind::io, "metadata after column header");
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::io, "bad metadata: " + line);
      doc.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!header) {
      doc.columns = split(line, ',');
      header = true;
      continue;
    }
    auto cells = split(line, ',');
    if (cells.size() != doc.columns.size()) {
      throw Error(ErrorKind::io, "ragged row: " + line);
    }
    doc.rows.push_back(std::move(cells));
  }
  if (!header) throw Error(ErrorKind::io, "missing column header");
  return doc;
}

// Writes via a sibling temporary and a rename, so a failed run never leaves
// a partial file at `path`.
inline void write_atomically(const std::filesystem::path &path,
                             const std::string &content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorKind::io, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::io, "cannot move output into place: " + path.string());
  }
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace optlattice::io

#endif  // OPTLATTICE_IO_TABLE_HPP
