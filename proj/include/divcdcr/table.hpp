#pragma once

#include <string>
#include <vector>

namespace divcdcr {

// Left-aligned text table; columns separated by two spaces, widths measured
// in code points. Trailing spaces are trimmed from each line.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  bool empty() const noexcept { return rows_.empty(); }
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fixed4(double value);

}  // namespace divcdcr
