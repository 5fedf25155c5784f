#include "phonosurp/delimited.hpp"

#include <cctype>

#include "phonosurp/errors.hpp"

namespace phonosurp {

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

DelimitedReader::DelimitedReader(std::istream& in, std::optional<char> delimiter, bool has_header)
    : in_(in) {
  std::string first;
  if (!read_line(first)) {
    if (has_header) throw SchemaError("delimited input is empty (no header row)");
    delimiter_ = delimiter.value_or('\t');
    return;
  }
  if (first.starts_with("\xEF\xBB\xBF")) first.erase(0, 3);
  delimiter_ = delimiter.value_or(first.find('\t') != std::string::npos ? '\t' : ',');
  if (has_header) {
    for (auto& h : split(first)) header_.push_back(trim(h));
  } else {
    pending_ = std::move(first);
    line_ = 0;
  }
}

bool DelimitedReader::read_line(std::string& line) {
  if (!std::getline(in_, line)) return false;
  ++line_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> DelimitedReader::split(std::string_view line) const {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (delimiter_ == ',' && c == '"') {
      if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else {
        quoted = !quoted;
      }
    } else if (c == delimiter_ && !quoted) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::optional<std::size_t> DelimitedReader::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == name) return i;
  auto lowered = to_lower_ascii(name);
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (to_lower_ascii(header_[i]) == lowered) return i;
  return std::nullopt;
}

std::size_t DelimitedReader::require_column(std::string_view name) const {
  if (auto c = column(name)) return *c;
  std::string available;
  for (const auto& h : header_) {
    if (!available.empty()) available += ", ";
    available += h;
  }
  throw SchemaError("missing column '" + std::string(name) + "'; available headers: " + available);
}

bool DelimitedReader::next(std::vector<std::string>& fields) {
  std::string line;
  for (;;) {
    if (pending_) {
      line = std::move(*pending_);
      pending_.reset();
      line_ = 1;
    } else if (!read_line(line)) {
      return false;
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fields = split(line);
    return true;
  }
}

}  // namespace phonosurp
