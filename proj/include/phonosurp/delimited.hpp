#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phonosurp {

// Minimal reader for header-bearing tab- or comma-separated text. The
// delimiter is picked from the header line (tab wins if present). Comma
// files honour double-quoted fields with "" escapes; quoted fields may not
// span lines.
class DelimitedReader {
 public:
  explicit DelimitedReader(std::istream& in, std::optional<char> delimiter = std::nullopt,
                           bool has_header = true);

  char delimiter() const { return delimiter_; }
  const std::vector<std::string>& header() const { return header_; }

  // Index of a header column (exact match first, then case-insensitive).
  std::optional<std::size_t> column(std::string_view name) const;
  // Same, but throws SchemaError listing the available headers.
  std::size_t require_column(std::string_view name) const;

  // Reads the next non-blank record. Returns false at end of input.
  bool next(std::vector<std::string>& fields);
  // 1-based line number of the record last returned by next().
  std::size_t line() const { return line_; }

 private:
  std::vector<std::string> split(std::string_view line) const;
  bool read_line(std::string& line);

  std::istream& in_;
  char delimiter_ = '\t';
  std::vector<std::string> header_;
  std::size_t line_ = 0;
  std::optional<std::string> pending_;
};

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);

}  // namespace phonosurp
