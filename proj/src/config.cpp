#include "phonosurp/config.hpp"

#include <fstream>
#include <sstream>

#include "phonosurp/delimited.hpp"
#include "phonosurp/errors.hpp"

namespace phonosurp {

namespace {

ConfigError config_error(std::size_t line, const std::string& what) {
  return ConfigError("config line " + std::to_string(line) + ": " + what);
}

bool parse_bool(const std::string& v, std::size_t line) {
  auto lower = to_lower_ascii(v);
  if (lower == "true" || lower == "yes" || lower == "1") return true;
  if (lower == "false" || lower == "no" || lower == "0") return false;
  throw config_error(line, "expected true or false, got '" + v + "'");
}

std::set<Format> parse_formats(const std::string& v, std::size_t line) {
  std::set<Format> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    auto name = trim(item);
    if (name.empty()) continue;
    try {
      out.insert(format_from_name(name));
    } catch (const ConfigError& e) {
      throw config_error(line, e.what());
    }
  }
  if (out.empty()) throw config_error(line, "formats must list at least one of text, csv, json");
  return out;
}

}  // namespace

std::filesystem::path RunConfig::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

bool RunConfig::operator==(const RunConfig& o) const {
  return dictionary_path == o.dictionary_path && frequency_path == o.frequency_path &&
         frequency_word_column == o.frequency_word_column && frequency_count_column == o.frequency_count_column &&
         norms == o.norms && inventory_path == o.inventory_path && weighting == o.weighting &&
         word_boundaries == o.word_boundaries && add_one_smoothing == o.add_one_smoothing &&
         leave_one_out == o.leave_one_out && suite == o.suite && expect_path == o.expect_path &&
         output_dir == o.output_dir && formats == o.formats;
}

RunConfig parse_config(std::istream& in, std::filesystem::path base_dir) {
  RunConfig config;
  config.base_dir = std::move(base_dir);
  enum class Section { none, run, dictionary, frequency, norms } section = Section::none;
  NormDatasetConfig* norm = nullptr;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto text = trim(raw);
    if (text.empty() || text.front() == '#' || text.front() == ';') continue;

    if (text.front() == '[') {
      if (text.back() != ']') throw config_error(line, "unterminated section header");
      auto name = trim(std::string_view(text).substr(1, text.size() - 2));
      norm = nullptr;
      if (name == "run") section = Section::run;
      else if (name == "dictionary") section = Section::dictionary;
      else if (name == "frequency") section = Section::frequency;
      else if (name.starts_with("norms ")) {
        section = Section::norms;
        auto dataset = trim(std::string_view(name).substr(6));
        if (dataset.empty()) throw config_error(line, "norms section needs a name");
        for (const auto& n : config.norms)
          if (n.name == dataset) throw config_error(line, "duplicate norms section '" + dataset + "'");
        config.norms.push_back({dataset, {}, {}});
        norm = &config.norms.back();
      } else {
        throw config_error(line, "unknown section [" + name + "]");
      }
      continue;
    }

    auto eq = text.find('=');
    if (eq == std::string::npos) throw config_error(line, "expected 'key = value'");
    auto key = trim(std::string_view(text).substr(0, eq));
    auto value = trim(std::string_view(text).substr(eq + 1));

    switch (section) {
      case Section::none:
        throw config_error(line, "key outside of any section");
      case Section::run:
        if (key == "weighting") {
          try {
            config.weighting = weighting_from_name(value);
          } catch (const ConfigError& e) {
            throw config_error(line, e.what());
          }
        } else if (key == "suite") config.suite = value;
        else if (key == "expect") config.expect_path = value;
        else if (key == "output_dir") config.output_dir = value;
        else if (key == "formats") config.formats = parse_formats(value, line);
        else if (key == "inventory") config.inventory_path = value;
        else if (key == "word_boundaries") config.word_boundaries = parse_bool(value, line);
        else if (key == "add_one_smoothing") config.add_one_smoothing = parse_bool(value, line);
        else if (key == "leave_one_out") config.leave_one_out = parse_bool(value, line);
        else throw config_error(line, "unknown [run] key '" + key + "'");
        break;
      case Section::dictionary:
        if (key == "path") config.dictionary_path = value;
        else throw config_error(line, "unknown [dictionary] key '" + key + "'");
        break;
      case Section::frequency:
        if (key == "path") config.frequency_path = value;
        else if (key == "word_column") config.frequency_word_column = value;
        else if (key == "count_column") config.frequency_count_column = value;
        else throw config_error(line, "unknown [frequency] key '" + key + "'");
        break;
      case Section::norms:
        if (key == "path") norm->path = value;
        else if (key == "word_column") norm->schema.word_column = value;
        else if (key == "layout") {
          if (value == "wide") norm->schema.layout = NormLayout::wide;
          else if (value == "long") norm->schema.layout = NormLayout::long_binary;
          else throw config_error(line, "layout must be wide or long");
        } else if (auto field = field_from_name(key)) {
          if (!is_norm_field(*field))
            throw config_error(line, std::string(field_name(*field)) + " cannot come from a norm table");
          norm->schema.columns[*field] = value;
        } else {
          throw config_error(line, "unknown norms key '" + key + "'");
        }
        break;
    }
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.parent_path());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  out << "weighting = " << weighting_name(c.weighting) << '\n';
  out << "suite = " << c.suite << '\n';
  if (c.expect_path) out << "expect = " << *c.expect_path << '\n';
  out << "output_dir = " << c.output_dir << '\n';
  out << "formats = ";
  bool first = true;
  for (Format f : c.formats) {
    out << (first ? "" : ", ") << format_name(f);
    first = false;
  }
  out << '\n';
  if (c.inventory_path) out << "inventory = " << *c.inventory_path << '\n';
  out << "word_boundaries = " << (c.word_boundaries ? "true" : "false") << '\n';
  out << "add_one_smoothing = " << (c.add_one_smoothing ? "true" : "false") << '\n';
  out << "leave_one_out = " << (c.leave_one_out ? "true" : "false") << '\n';
  out << "\n[dictionary]\npath = " << c.dictionary_path << '\n';
  out << "\n[frequency]\npath = " << c.frequency_path << '\n';
  out << "word_column = " << c.frequency_word_column << '\n';
  out << "count_column = " << c.frequency_count_column << '\n';
  for (const auto& n : c.norms) {
    out << "\n[norms " << n.name << "]\npath = " << n.path << '\n';
    out << "layout = " << (n.schema.layout == NormLayout::wide ? "wide" : "long") << '\n';
    out << "word_column = " << n.schema.word_column << '\n';
    for (const auto& [field, column] : n.schema.columns) out << field_name(field) << " = " << column << '\n';
  }
  return out.str();
}

void validate_config(const RunConfig& c) {
  auto require = [&](const std::string& what, const std::string& path) {
    if (path.empty()) throw ConfigError(what + " path is not set");
    auto resolved = c.resolve(path);
    if (!std::filesystem::is_regular_file(resolved))
      throw ConfigError(what + " file does not exist: " + resolved.string());
  };
  require("dictionary", c.dictionary_path);
  require("frequency", c.frequency_path);
  for (const auto& n : c.norms) {
    require("norms '" + n.name + "'", n.path);
    if (n.schema.columns.empty() && n.schema.layout == NormLayout::wide)
      throw ConfigError("norms '" + n.name + "' maps no fields");
  }
  if (c.inventory_path) require("inventory", *c.inventory_path);
  if (c.expect_path) require("expectation", *c.expect_path);
  select_suites(c.suite);
}

}  // namespace phonosurp
