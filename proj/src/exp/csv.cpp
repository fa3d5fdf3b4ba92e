#include "uavisac/exp/csv.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace uavisac::exp {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = columns.find(name);
  if (it == columns.end())
    throw std::runtime_error("csv: missing column '" + name + "'");
  return it->second;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  CsvTable table;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // A record with an odd number of quote characters has a quoted field
    // spanning the line break; pull physical lines until it closes.
    while (std::count(line.begin(), line.end(), '"') % 2 != 0) {
      std::string more;
      if (!std::getline(in, more)) break;
      if (!more.empty() && more.back() == '\r') more.pop_back();
      line += '\n';
      line += more;
    }
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    auto fields = split_csv_line(line);
    if (header) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        table.columns.emplace(fields[i], i);
      header = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

}  // namespace uavisac::exp
