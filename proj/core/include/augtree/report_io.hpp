#pragma once

#include <string>
#include <vector>

namespace augtree {

/// Fixed 17-significant-digit text ("%.17g"), so equal doubles print equally.
std::string format_double(double x);

/// Comma-separated table with a header row; fields holding commas or quotes
/// are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& row(const std::vector<std::string>& fields);
  std::size_t rows() const { return rows_; }
  const std::string& str() const { return text_; }

 private:
  void append(const std::vector<std::string>& fields);

  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

}  // namespace augtree
