#pragma once

#include <string>
#include <vector>

namespace sac {

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// %.17g — round-trips doubles exactly.
std::string fmt(double v);

// Atomic writes: temp file next to the target, then rename.
void write_text_atomic(const std::string& path, const std::string& content);
void write_csv_atomic(const std::string& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

Csv read_csv(const std::string& path);

}  // namespace sac
