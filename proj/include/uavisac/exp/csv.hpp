#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace uavisac::exp {

// Minimal RFC-4180 helpers for the project's artifact files.

// Quote a field when it contains comma, quote or newline.
std::string csv_escape(const std::string& field);

// One row, CRLF-free (plain '\n' line ending, accepted by the RFC readers
// that matter and friendlier to diff tools).
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Split one line into fields, honoring quoted fields and doubled quotes.
std::vector<std::string> split_csv_line(const std::string& line);

// Parsed CSV file: header names mapped to column index, plus data rows.
struct CsvTable {
  std::map<std::string, std::size_t> columns;
  std::vector<std::vector<std::string>> rows;

  // Throws std::runtime_error when the column is missing.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);  // throws std::runtime_error

}  // namespace uavisac::exp
