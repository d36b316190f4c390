// SPDX-License-Identifier: Apache-2.0
#include "sce/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sce/error.hpp"

namespace sce {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell.push_back(ch);
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string& cell, long row, const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    raise(ErrorCode::ParseFailure, "cannot parse '" + cell + "' at row " +
                                       std::to_string(row) + ", column '" + column + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Dataset read_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ParseFailure, "cannot open file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCode::ParseFailure, "file '" + path + "' is empty (header row required)");
  }
  const std::vector<std::string> header = split_line(line);

  auto find_column = [&](const std::string& name) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) raise(ErrorCode::MissingColumn, "'" + name + "'");
    return static_cast<int>(it - header.begin());
  };

  const int yc = find_column(schema.y);
  const int zc = find_column(schema.z);
  const int sc = find_column(schema.s);

  std::vector<int> xcols;
  std::vector<std::string> xnames;
  if (schema.x.empty()) {
    for (int j = 0; j < static_cast<int>(header.size()); ++j) {
      if (j != yc && j != zc && j != sc) {
        xcols.push_back(j);
        xnames.push_back(header[static_cast<std::size_t>(j)]);
      }
    }
  } else {
    for (const std::string& name : schema.x) {
      xcols.push_back(find_column(name));
      xnames.push_back(name);
    }
  }

  std::vector<double> ys, zs, ss;
  std::vector<std::vector<double>> xs(xcols.size());
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size()) {
      raise(ErrorCode::ParseFailure, "row " + std::to_string(row) + " has " +
                                         std::to_string(cells.size()) + " cells, expected " +
                                         std::to_string(header.size()));
    }
    ys.push_back(parse_cell(cells[static_cast<std::size_t>(yc)], row, schema.y));
    zs.push_back(parse_cell(cells[static_cast<std::size_t>(zc)], row, schema.z));
    ss.push_back(parse_cell(cells[static_cast<std::size_t>(sc)], row, schema.s));
    for (std::size_t k = 0; k < xcols.size(); ++k) {
      xs[k].push_back(parse_cell(cells[static_cast<std::size_t>(xcols[k])], row, xnames[k]));
    }
  }

  Dataset data;
  const Eigen::Index n = static_cast<Eigen::Index>(ys.size());
  data.y = Eigen::Map<Eigen::VectorXd>(ys.data(), n);
  data.z = Eigen::Map<Eigen::VectorXd>(zs.data(), n);
  data.s = Eigen::Map<Eigen::VectorXd>(ss.data(), n);
  data.x.resize(n, static_cast<Eigen::Index>(xcols.size()));
  for (std::size_t k = 0; k < xcols.size(); ++k) {
    data.x.col(static_cast<Eigen::Index>(k)) = Eigen::Map<Eigen::VectorXd>(xs[k].data(), n);
  }
  data.x_names = xnames;
  return data;
}

void write_csv(const std::string& path, const Dataset& data, const CsvSchema& schema) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::ParseFailure, "cannot open file '" + path + "' for writing");

  std::vector<std::string> xnames = data.x_names;
  if (static_cast<Eigen::Index>(xnames.size()) != data.p()) {
    xnames.clear();
    for (Eigen::Index j = 0; j < data.p(); ++j) xnames.push_back("x" + std::to_string(j + 1));
  }
  if (!schema.x.empty() && static_cast<Eigen::Index>(schema.x.size()) == data.p()) {
    xnames = schema.x;
  }

  out << schema.y << ',' << schema.z << ',' << schema.s;
  for (const std::string& name : xnames) out << ',' << name;
  out << '\n';
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    out << format_double(data.y[i]) << ',' << format_double(data.z[i]) << ','
        << format_double(data.s[i]);
    for (Eigen::Index j = 0; j < data.p(); ++j) out << ',' << format_double(data.x(i, j));
    out << '\n';
  }
}

}  // namespace sce
