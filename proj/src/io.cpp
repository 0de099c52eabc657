// SPDX-License-Identifier: Apache-2.0
#include "wsr/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wsr {

void RunManifest::set_real(const std::string& key, Real value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  entries[key] = os.str();
}

std::string RunManifest::to_comment_block() const {
  std::ostringstream os;
  for (const auto& [k, v] : entries) os << "# " << k << " = " << v << "\n";
  return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

void write_csv(const std::string& path, const RunManifest& manifest, const CsvTable& table) {
  std::ostringstream os;
  os.precision(12);
  os << manifest.to_comment_block();
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << table.columns[c] << (c + 1 == table.columns.size() ? "\n" : ",");
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << row[c] << (c + 1 == row.size() ? "\n" : ",");
  }
  write_text_atomic(path, os.str());
}

void write_matrix(const std::string& path, const RunManifest& manifest,
                  const std::vector<Real>& row_coords, const std::vector<Real>& col_coords,
                  const std::vector<std::vector<Real>>& values) {
  std::ostringstream os;
  os.precision(12);
  os << manifest.to_comment_block();
  os << "# columns:";
  for (Real c : col_coords) os << " " << c;
  os << "\n";
  for (std::size_t r = 0; r < values.size(); ++r) {
    os << row_coords[r];
    for (Real v : values[r]) os << " " << v;
    os << "\n";
  }
  write_text_atomic(path, os.str());
}

}  // namespace wsr
