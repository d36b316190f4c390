// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "sce/dataset.hpp"

namespace sce {

/// Column-name mapping for CSV ingestion. When x is empty, every column
/// other than y/z/s becomes a covariate, in header order.
struct CsvSchema {
  std::string y = "y";
  std::string z = "z";
  std::string s = "s";
  std::vector<std::string> x;
};

/// Reads a comma-delimited, header-first CSV ("." decimal separator, no
/// quoting). Row order is preserved. Throws MissingColumn or ParseFailure
/// with a row/column location.
Dataset read_csv(const std::string& path, const CsvSchema& schema = {});

/// Writes a dataset back out with 17-significant-digit values so a
/// read_csv round trip is bit-exact.
void write_csv(const std::string& path, const Dataset& data,
               const CsvSchema& schema = {});

/// Shortest exact decimal form used in all file output (%.17g).
std::string format_double(double value);

}  // namespace sce
