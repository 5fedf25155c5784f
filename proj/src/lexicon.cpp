#include "phonosurp/lexicon.hpp"

#include <charconv>
#include <cmath>

#include "phonosurp/delimited.hpp"
#include "phonosurp/errors.hpp"

namespace phonosurp {

namespace {

constexpr std::string_view kMissing = "NA";

struct FieldInfo {
  Field field;
  std::string_view name;
};

constexpr std::array<FieldInfo, kAllFields.size()> kFieldInfo = {{
    {Field::Frequency, "Frequency"},
    {Field::Phoneme_Length, "Phoneme_Length"},
    {Field::Morpheme_Length, "Morpheme_Length"},
    {Field::PoS, "PoS"},
    {Field::Average_Surprisal, "Average_Surprisal"},
    {Field::Iconicity_Rating, "Iconicity_Rating"},
    {Field::Humor, "Humor"},
    {Field::Anger, "Anger"},
    {Field::Anticipation, "Anticipation"},
    {Field::Disgust, "Disgust"},
    {Field::Fear, "Fear"},
    {Field::Joy, "Joy"},
    {Field::Negative, "Negative"},
    {Field::Positive, "Positive"},
    {Field::Sadness, "Sadness"},
    {Field::Surprise, "Surprise"},
    {Field::Trust, "Trust"},
    {Field::NRC_Valence, "NRC_Valence"},
    {Field::G_Valence, "G_Valence"},
    {Field::Recall_Accuracy, "Recall_Accuracy"},
}};

std::optional<double> parse_number(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> parse_unsigned(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

std::string_view field_name(Field f) { return kFieldInfo[static_cast<std::size_t>(f)].name; }

std::optional<Field> field_from_name(std::string_view name) {
  auto lowered = to_lower_ascii(name);
  for (const auto& info : kFieldInfo)
    if (to_lower_ascii(info.name) == lowered) return info.field;
  return std::nullopt;
}

bool is_emotion(Field f) { return f >= Field::Anger && f <= Field::Trust; }

bool is_categorical(Field f) { return f == Field::PoS; }

bool is_norm_field(Field f) {
  return f != Field::Frequency && f != Field::Phoneme_Length && f != Field::Average_Surprisal;
}

std::size_t emotion_index(Field f) {
  return static_cast<std::size_t>(f) - static_cast<std::size_t>(Field::Anger);
}

void validate_field_value(Field f, double value, std::size_t line) {
  auto reject = [&](const std::string& why) {
    throw RowError(std::string(field_name(f)) + " value " + format_double(value) + " " + why, line);
  };
  if (!std::isfinite(value)) reject("is not finite");
  if (is_emotion(f)) {
    if (value != 0.0 && value != 1.0) reject("must be 0 or 1");
    return;
  }
  switch (f) {
    case Field::Humor:
      if (value < 1.0 || value > 5.0) reject("outside [1, 5]");
      break;
    case Field::Morpheme_Length:
      if (value < 1.0 || value != std::floor(value)) reject("must be a positive integer");
      break;
    case Field::Average_Surprisal:
      if (value < 0.0) reject("must be non-negative");
      break;
    case Field::Frequency:
    case Field::Phoneme_Length:
      if (value < 0.0 || value != std::floor(value)) reject("must be a non-negative integer");
      break;
    case Field::PoS:
      throw RowError("PoS is categorical", line);
    default:
      break;
  }
}

void validate_category(Field f, const std::string& label, std::size_t line) {
  if (!is_categorical(f)) throw RowError(std::string(field_name(f)) + " is not categorical", line);
  if (label.empty() || label == kMissing || label.find_first_of("\t\r\n") != std::string::npos)
    throw RowError("invalid " + std::string(field_name(f)) + " label '" + label + "'", line);
}

std::optional<double> LexiconRow::numeric(Field f) const {
  auto opt = [](const auto& o) -> std::optional<double> {
    if (!o) return std::nullopt;
    return static_cast<double>(*o);
  };
  if (is_emotion(f)) return opt(emotions[emotion_index(f)]);
  switch (f) {
    case Field::Frequency: return static_cast<double>(frequency);
    case Field::Phoneme_Length: return static_cast<double>(phoneme_length());
    case Field::Morpheme_Length: return opt(morpheme_length);
    case Field::Average_Surprisal: return average_surprisal;
    case Field::Iconicity_Rating: return iconicity;
    case Field::Humor: return humor;
    case Field::NRC_Valence: return nrc_valence;
    case Field::G_Valence: return g_valence;
    case Field::Recall_Accuracy: return recall_accuracy;
    default: return std::nullopt;
  }
}

std::optional<std::string> LexiconRow::category(Field f) const {
  if (f == Field::PoS) return pos;
  return std::nullopt;
}

bool LexiconRow::has(Field f) const {
  return is_categorical(f) ? category(f).has_value() : numeric(f).has_value();
}

void set_numeric(LexiconRow& row, Field f, std::optional<double> value) {
  if (value) validate_field_value(f, *value);
  if (is_emotion(f)) {
    row.emotions[emotion_index(f)] =
        value ? std::optional<int>(static_cast<int>(*value)) : std::nullopt;
    return;
  }
  switch (f) {
    case Field::Morpheme_Length:
      row.morpheme_length =
          value ? std::optional<std::int64_t>(static_cast<std::int64_t>(*value)) : std::nullopt;
      break;
    case Field::Average_Surprisal: row.average_surprisal = value; break;
    case Field::Iconicity_Rating: row.iconicity = value; break;
    case Field::Humor: row.humor = value; break;
    case Field::NRC_Valence: row.nrc_valence = value; break;
    case Field::G_Valence: row.g_valence = value; break;
    case Field::Recall_Accuracy: row.recall_accuracy = value; break;
    default:
      throw Error("field " + std::string(field_name(f)) + " cannot be assigned directly");
  }
}

void set_category(LexiconRow& row, Field f, std::optional<std::string> label) {
  if (label) validate_category(f, *label);
  row.pos = std::move(label);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::string> lexicon_header() {
  std::vector<std::string> h = {"word", "pronunciation"};
  for (Field f : kAllFields) h.emplace_back(field_name(f));
  return h;
}

void write_lexicon(std::ostream& out, std::span<const LexiconRow> rows) {
  auto header = lexicon_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "\t" : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    out << row.word << '\t' << row.pronunciation.render();
    for (Field f : kAllFields) {
      out << '\t';
      if (f == Field::Frequency) {
        out << row.frequency;
      } else if (f == Field::Phoneme_Length) {
        out << row.phoneme_length();
      } else if (f == Field::Morpheme_Length) {
        if (row.morpheme_length) out << *row.morpheme_length; else out << kMissing;
      } else if (is_categorical(f)) {
        auto c = row.category(f);
        out << (c ? *c : std::string(kMissing));
      } else if (is_emotion(f)) {
        auto e = row.emotions[emotion_index(f)];
        if (e) out << *e; else out << kMissing;
      } else {
        auto v = row.numeric(f);
        out << (v ? format_double(*v) : std::string(kMissing));
      }
    }
    out << '\n';
  }
}

std::vector<LexiconRow> read_lexicon(std::istream& in, const PhonemeInventory& inventory) {
  DelimitedReader reader(in, '\t');
  auto expected = lexicon_header();
  if (reader.header() != expected) {
    for (const auto& name : expected) reader.require_column(name);
    throw SchemaError("lexicon header columns are out of order");
  }
  std::vector<LexiconRow> rows;
  std::vector<std::string> cells;
  while (reader.next(cells)) {
    const auto line = reader.line();
    if (cells.size() != expected.size())
      throw RowError("expected " + std::to_string(expected.size()) + " columns, found " +
                         std::to_string(cells.size()),
                     line);
    if (cells[0].empty()) throw RowError("empty word", line);
    LexiconRow row{cells[0], inventory.parse_transcription(cells[1], cells[0], line)};
    for (std::size_t k = 0; k < kAllFields.size(); ++k) {
      const Field f = kAllFields[k];
      const std::string& cell = cells[k + 2];
      if (f == Field::Frequency) {
        auto n = parse_unsigned(cell);
        if (!n) throw RowError("invalid Frequency '" + cell + "'", line);
        row.frequency = *n;
        continue;
      }
      if (f == Field::Phoneme_Length) {
        auto n = parse_unsigned(cell);
        if (!n || *n != row.phoneme_length())
          throw RowError("Phoneme_Length '" + cell + "' does not match pronunciation", line);
        continue;
      }
      if (cell == kMissing) continue;
      try {
        if (is_categorical(f)) {
          set_category(row, f, cell);
        } else {
          auto v = parse_number(cell);
          if (!v) throw RowError("invalid " + std::string(field_name(f)) + " '" + cell + "'", line);
          set_numeric(row, f, *v);
        }
      } catch (const RowError& e) {
        if (e.line() != 0) throw;
        throw RowError(e.what(), line);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace phonosurp
