#include "sac/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sac/errors.hpp"

namespace sac {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw UsageError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw UsageError("rename failed: " + tmp + " -> " + path);
}

void write_csv_atomic(const std::string& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < header.size(); ++i)
    ss << header[i] << (i + 1 < header.size() ? "," : "");
  ss << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      ss << r[i] << (i + 1 < r.size() ? "," : "");
    ss << "\n";
  }
  write_text_atomic(path, ss.str());
}

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open: " + path);
  Csv csv;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      csv.header = cells;
      first = false;
    } else {
      csv.rows.push_back(cells);
    }
  }
  return csv;
}

}  // namespace sac
