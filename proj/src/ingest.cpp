#include "phonosurp/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "phonosurp/delimited.hpp"
#include "phonosurp/errors.hpp"

namespace phonosurp {

namespace {

void warn(Warnings* warnings, std::string message) {
  if (warnings) warnings->push_back(std::move(message));
}

// "word(2)" -> ("word", true); anything else is returned verbatim.
std::pair<std::string, bool> split_variant(const std::string& token) {
  if (token.size() >= 4 && token.back() == ')') {
    auto open = token.rfind('(');
    if (open != std::string::npos && open > 0 && open + 2 < token.size()) {
      bool digits = std::all_of(token.begin() + open + 1, token.end() - 1,
                                [](char c) { return c >= '0' && c <= '9'; });
      if (digits) return {token.substr(0, open), true};
    }
  }
  return {token, false};
}

std::optional<std::uint64_t> parse_count(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

NormValue parse_norm_cell(Field field, const std::string& raw, std::size_t line) {
  NormValue value{field, std::nullopt, std::nullopt};
  std::string cell = trim(raw);
  if (cell.empty() || cell == "NA") return value;
  if (is_categorical(field)) {
    validate_category(field, cell, line);
    value.label = std::move(cell);
    return value;
  }
  auto v = parse_real(cell);
  if (!v) throw RowError("non-numeric " + std::string(field_name(field)) + " '" + cell + "'", line);
  validate_field_value(field, *v, line);
  value.number = *v;
  return value;
}

std::vector<NormRecord> dedupe(std::vector<NormRecord> records, Warnings* warnings) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<NormRecord> out;
  for (auto& r : records) {
    auto [it, inserted] = index.emplace(r.word, out.size());
    if (inserted) {
      out.push_back(std::move(r));
    } else {
      warn(warnings, "duplicate norm entry for '" + r.word + "'; keeping the last occurrence");
      out[it->second] = std::move(r);
    }
  }
  return out;
}

}  // namespace

const NormValue* NormRecord::find(Field f) const {
  for (const auto& v : values)
    if (v.field == f) return &v;
  return nullptr;
}

std::vector<DictionaryEntry> parse_dictionary(std::istream& in, const PhonemeInventory& inventory,
                                              Warnings* warnings) {
  std::vector<DictionaryEntry> entries;
  std::unordered_map<std::string, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.starts_with(";;;")) continue;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;
    std::string transcription;
    std::getline(tokens, transcription);
    if (trim(transcription).empty())
      throw DictionaryFormatError("entry '" + head + "' has no transcription", line_no);

    auto [base, is_variant] = split_variant(head);
    std::string word = to_lower_ascii(base);
    auto seq = inventory.parse_transcription(transcription, word, line_no);

    auto it = index.find(word);
    if (it == index.end()) {
      index.emplace(word, entries.size());
      entries.push_back({word, {std::move(seq)}});
    } else if (is_variant) {
      entries[it->second].variants.push_back(std::move(seq));
    } else {
      warn(warnings, "line " + std::to_string(line_no) + ": duplicate dictionary word '" + word +
                         "'; keeping the last occurrence");
      entries[it->second].variants = {std::move(seq)};
    }
  }
  return entries;
}

std::vector<FrequencyRecord> parse_frequency_table(std::istream& in, const std::string& word_column,
                                                   const std::string& count_column,
                                                   Warnings* warnings) {
  DelimitedReader reader(in);
  const auto word_col = reader.require_column(word_column);
  const auto count_col = reader.require_column(count_column);
  const auto width = std::max(word_col, count_col) + 1;

  std::vector<FrequencyRecord> records;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> cells;
  while (reader.next(cells)) {
    if (cells.size() < width)
      throw RowError("row has " + std::to_string(cells.size()) + " columns", reader.line());
    std::string word = to_lower_ascii(trim(cells[word_col]));
    if (word.empty()) throw RowError("empty word", reader.line());
    std::string raw = trim(cells[count_col]);
    auto count = parse_count(raw);
    if (!count) throw RowError("count '" + raw + "' is not a non-negative integer", reader.line());

    auto [it, inserted] = index.emplace(word, records.size());
    if (inserted) {
      records.push_back({word, *count});
    } else {
      warn(warnings, "line " + std::to_string(reader.line()) + ": '" + word +
                         "' repeats after case folding; counts summed");
      records[it->second].count += *count;
    }
  }
  return records;
}

std::vector<NormRecord> parse_norm_table(std::istream& in, const NormSchema& schema,
                                         Warnings* warnings) {
  for (const auto& [field, column] : schema.columns)
    if (!is_norm_field(field))
      throw ConfigError(std::string(field_name(field)) + " cannot be supplied by a norm table");

  std::vector<NormRecord> records;
  std::vector<std::string> cells;

  if (schema.layout == NormLayout::wide) {
    DelimitedReader reader(in);
    const auto word_col = reader.require_column(schema.word_column);
    std::vector<std::pair<Field, std::size_t>> mapped;
    for (const auto& [field, column] : schema.columns)
      mapped.emplace_back(field, reader.require_column(column));

    while (reader.next(cells)) {
      const auto line = reader.line();
      if (cells.size() < reader.header().size()) cells.resize(reader.header().size());
      NormRecord rec{to_lower_ascii(trim(cells[word_col])), {}};
      if (rec.word.empty()) throw RowError("empty word", line);
      for (const auto& [field, col] : mapped) rec.values.push_back(parse_norm_cell(field, cells[col], line));
      records.push_back(std::move(rec));
    }
    return dedupe(std::move(records), warnings);
  }

  // Long binary layout: fold per-category lines into one record per word.
  std::map<std::string, Field> by_label;
  if (schema.columns.empty()) {
    for (Field f : kEmotionFields) by_label.emplace(to_lower_ascii(field_name(f)), f);
  } else {
    for (const auto& [field, label] : schema.columns) by_label.emplace(to_lower_ascii(label), field);
  }
  DelimitedReader reader(in, '\t', false);
  std::unordered_map<std::string, std::size_t> index;
  while (reader.next(cells)) {
    const auto line = reader.line();
    if (cells.size() != 3) throw RowError("expected word, category and value", line);
    auto label = by_label.find(to_lower_ascii(trim(cells[1])));
    if (label == by_label.end()) continue;
    std::string word = to_lower_ascii(trim(cells[0]));
    if (word.empty()) throw RowError("empty word", line);
    NormValue value = parse_norm_cell(label->second, cells[2], line);

    auto [it, inserted] = index.emplace(word, records.size());
    if (inserted) records.push_back({word, {}});
    auto& rec = records[it->second];
    auto existing = std::find_if(rec.values.begin(), rec.values.end(),
                                 [&](const NormValue& v) { return v.field == value.field; });
    if (existing != rec.values.end()) {
      warn(warnings, "line " + std::to_string(line) + ": duplicate " +
                         std::string(field_name(value.field)) + " for '" + word +
                         "'; keeping the last occurrence");
      *existing = value;
    } else {
      rec.values.push_back(value);
    }
  }
  return records;
}

JoinResult join_lexicon(const std::vector<DictionaryEntry>& dictionary,
                        const std::vector<FrequencyRecord>& frequencies,
                        const std::vector<NormTable>& norms) {
  JoinResult result;
  auto& report = result.report;
  report.dictionary_entries = dictionary.size();
  report.frequency_records = frequencies.size();

  std::map<Field, std::string> supplier;
  for (const auto& table : norms) {
    std::set<Field> fields;
    for (const auto& rec : table.records)
      for (const auto& v : rec.values) fields.insert(v.field);
    for (Field f : fields) {
      auto [it, inserted] = supplier.emplace(f, table.name);
      if (!inserted)
        throw ConfigError(std::string(field_name(f)) + " is supplied by both '" + it->second +
                          "' and '" + table.name + "'");
    }
  }

  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& r : frequencies) counts[to_lower_ascii(r.word)] += r.count;

  std::map<std::string, const DictionaryEntry*> pronunciations;
  for (const auto& e : dictionary) pronunciations[to_lower_ascii(e.word)] = &e;

  for (const auto& [word, entry] : pronunciations) {
    auto c = counts.find(word);
    if (c == counts.end()) continue;
    PhonemeSequence pron(entry->canonical().phonemes(), word);
    result.rows.push_back(LexiconRow{word, std::move(pron), c->second});
  }
  report.joined_rows = result.rows.size();
  if (result.rows.empty())
    throw ConfigError("dictionary and frequency table share no words; nothing to analyse");

  std::unordered_map<std::string, std::size_t> row_index;
  for (std::size_t i = 0; i < result.rows.size(); ++i) row_index.emplace(result.rows[i].word, i);

  for (const auto& table : norms) {
    TableJoinStats stats{table.name, table.records.size(), 0, {}};
    for (const auto& rec : table.records) {
      auto it = row_index.find(to_lower_ascii(rec.word));
      if (it == row_index.end()) continue;
      ++stats.matched;
      auto& row = result.rows[it->second];
      for (const auto& v : rec.values) {
        if (is_categorical(v.field)) {
          set_category(row, v.field, v.label);
          continue;
        }
        set_numeric(row, v.field, v.number);
        if (!v.number) continue;
        auto& range = stats.observed[v.field];
        if (range.present == 0) range.min = range.max = *v.number;
        range.min = std::min(range.min, *v.number);
        range.max = std::max(range.max, *v.number);
        ++range.present;
      }
    }
    report.tables.push_back(std::move(stats));
  }
  return result;
}

}  // namespace phonosurp
