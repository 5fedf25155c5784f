#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phonosurp/ingest.hpp"
#include "phonosurp/render.hpp"
#include "phonosurp/surprisal.hpp"

namespace phonosurp {

struct NormDatasetConfig {
  std::string name;
  std::string path;
  NormSchema schema;

  bool operator==(const NormDatasetConfig&) const = default;
};

// Everything a reproducible run needs. Paths are stored as written and
// resolved against `base_dir` (the config file's directory) when used.
struct RunConfig {
  std::string dictionary_path;
  std::string frequency_path;
  std::string frequency_word_column = "Word";
  std::string frequency_count_column = "FREQcount";
  std::vector<NormDatasetConfig> norms;

  std::optional<std::string> inventory_path;
  Weighting weighting = Weighting::token;
  bool word_boundaries = false;
  bool add_one_smoothing = false;
  bool leave_one_out = false;

  std::string suite = "all";
  std::optional<std::string> expect_path;
  std::string output_dir = "out";
  std::set<Format> formats = {Format::text, Format::csv};

  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& path) const;

  // base_dir is not part of the serialized form.
  bool operator==(const RunConfig& other) const;
};

// INI-style text:
//   [run]        weighting, suite, expect, output_dir, formats, inventory,
//                word_boundaries, add_one_smoothing, leave_one_out
//   [dictionary] path
//   [frequency]  path, word_column, count_column
//   [norms NAME] path, layout (wide | long), word_column, and one
//                "<Field> = <source column or category>" line per field
// '#' and ';' start comments.
RunConfig parse_config(std::istream& in, std::filesystem::path base_dir = {});
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

// Every referenced file must exist. Throws ConfigError naming the first missing path.
void validate_config(const RunConfig& config);

}  // namespace phonosurp
