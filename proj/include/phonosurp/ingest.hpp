#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phonosurp/lexicon.hpp"
#include "phonosurp/phonemes.hpp"

namespace phonosurp {

// Collects non-fatal issues (duplicate keys and the like) for the caller to report.
using Warnings = std::vector<std::string>;

struct DictionaryEntry {
  std::string word;
  // Source-file order; the first one is canonical.
  std::vector<PhonemeSequence> variants;

  const PhonemeSequence& canonical() const { return variants.front(); }
};

// Reads CMU-style dictionary text. Accepts both the classic layout
// (";;;" comments, upper-case words, "WORD(1)" variants) and the newer one
// (lower-case, "word(2)" variants, trailing "# ..." comments).
std::vector<DictionaryEntry> parse_dictionary(std::istream& in,
                                              const PhonemeInventory& inventory = PhonemeInventory::arpabet(),
                                              Warnings* warnings = nullptr);

struct FrequencyRecord {
  std::string word;
  std::uint64_t count = 0;
};

// Words differing only in case are merged by summing their counts.
std::vector<FrequencyRecord> parse_frequency_table(std::istream& in, const std::string& word_column,
                                                   const std::string& count_column,
                                                   Warnings* warnings = nullptr);

enum class NormLayout {
  // Header row; one column per field.
  wide,
  // No header; "word <tab> category <tab> 0|1" per line, as distributed
  // for the NRC emotion lexicon.
  long_binary,
};

struct NormSchema {
  NormLayout layout = NormLayout::wide;
  std::string word_column = "word";
  // Source column (wide) or category label (long) for each field supplied.
  std::map<Field, std::string> columns;

  bool operator==(const NormSchema&) const = default;
};

struct NormValue {
  Field field;
  std::optional<double> number;
  std::optional<std::string> label;

  bool missing() const { return !number && !label; }
};

struct NormRecord {
  std::string word;
  std::vector<NormValue> values;

  const NormValue* find(Field f) const;
};

// Validates every value against its field's range; empty cells and NA become
// missing. Duplicate words keep the last occurrence.
std::vector<NormRecord> parse_norm_table(std::istream& in, const NormSchema& schema,
                                         Warnings* warnings = nullptr);

struct NormTable {
  std::string name;
  std::vector<NormRecord> records;
};

struct FieldRange {
  std::size_t present = 0;
  double min = 0;
  double max = 0;
};

struct TableJoinStats {
  std::string name;
  std::size_t records = 0;
  std::size_t matched = 0;
  std::map<Field, FieldRange> observed;
};

struct JoinReport {
  std::size_t dictionary_entries = 0;
  std::size_t frequency_records = 0;
  std::size_t joined_rows = 0;
  std::vector<TableJoinStats> tables;
  Warnings warnings;
};

struct JoinResult {
  std::vector<LexiconRow> rows;  // sorted by word
  JoinReport report;
};

// Inner join of dictionary and frequencies on the lower-cased word, then a
// left join of each norm table. Average surprisal is left missing.
JoinResult join_lexicon(const std::vector<DictionaryEntry>& dictionary,
                        const std::vector<FrequencyRecord>& frequencies,
                        const std::vector<NormTable>& norms);

}  // namespace phonosurp
