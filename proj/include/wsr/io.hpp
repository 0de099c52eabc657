// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_IO_HPP
#define WSR_IO_HPP

#include "wsr/types.hpp"

#include <map>
#include <string>

namespace wsr {

// Reproducibility header carried by every output file.
struct RunManifest {
  std::map<std::string, std::string> entries;

  void set(const std::string& key, const std::string& value) { entries[key] = value; }
  void set_real(const std::string& key, Real value);
  std::string to_comment_block() const;  // '# key = value' lines
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Real>> rows;
};

// Writes '# ' manifest lines, a header row, then comma-separated data;
// atomic (temp file + rename).
void write_csv(const std::string& path, const RunManifest& manifest, const CsvTable& table);

// Matrix file: one '# ' manifest block, then rows of space-separated values
// prefixed with the row coordinate.
void write_matrix(const std::string& path, const RunManifest& manifest,
                  const std::vector<Real>& row_coords, const std::vector<Real>& col_coords,
                  const std::vector<std::vector<Real>>& values);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace wsr

#endif  // WSR_IO_HPP
