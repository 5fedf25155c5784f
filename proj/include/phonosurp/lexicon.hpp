#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phonosurp/phonemes.hpp"

namespace phonosurp {

// Every variable a lexicon row can carry. Names (see field_name) double as
// lexicon file column headers, model term names and CLI field arguments.
enum class Field {
  Frequency,
  Phoneme_Length,
  Morpheme_Length,
  PoS,
  Average_Surprisal,
  Iconicity_Rating,
  Humor,
  Anger,
  Anticipation,
  Disgust,
  Fear,
  Joy,
  Negative,
  Positive,
  Sadness,
  Surprise,
  Trust,
  NRC_Valence,
  G_Valence,
  Recall_Accuracy,
};

inline constexpr std::array kAllFields = {
    Field::Frequency,        Field::Phoneme_Length, Field::Morpheme_Length, Field::PoS,
    Field::Average_Surprisal, Field::Iconicity_Rating, Field::Humor,         Field::Anger,
    Field::Anticipation,     Field::Disgust,        Field::Fear,            Field::Joy,
    Field::Negative,         Field::Positive,       Field::Sadness,         Field::Surprise,
    Field::Trust,            Field::NRC_Valence,    Field::G_Valence,       Field::Recall_Accuracy,
};

// The ten NRC emotions in the lexicon's alphabetical order.
inline constexpr std::array kEmotionFields = {
    Field::Anger, Field::Anticipation, Field::Disgust, Field::Fear,     Field::Joy,
    Field::Negative, Field::Positive,  Field::Sadness, Field::Surprise, Field::Trust,
};

std::string_view field_name(Field f);
// Case-insensitive lookup.
std::optional<Field> field_from_name(std::string_view name);

bool is_emotion(Field f);
bool is_categorical(Field f);
// Fields that a norm table may supply.
bool is_norm_field(Field f);

struct LexiconRow {
  std::string word;
  PhonemeSequence pronunciation;
  std::uint64_t frequency = 0;
  std::optional<std::int64_t> morpheme_length;
  std::optional<std::string> pos;
  std::optional<double> average_surprisal;
  std::optional<double> iconicity;
  std::optional<double> humor;
  std::array<std::optional<int>, kEmotionFields.size()> emotions;
  std::optional<double> nrc_valence;
  std::optional<double> g_valence;
  std::optional<double> recall_accuracy;

  std::size_t phoneme_length() const { return pronunciation.size(); }

  // Numeric view of any non-categorical field; nullopt when missing.
  std::optional<double> numeric(Field f) const;
  std::optional<std::string> category(Field f) const;
  bool has(Field f) const;

  bool operator==(const LexiconRow&) const = default;
};

std::size_t emotion_index(Field f);

// Rejects values outside the field's declared range; `line` annotates errors.
void validate_field_value(Field f, double value, std::size_t line = 0);
void validate_category(Field f, const std::string& label, std::size_t line = 0);

// Assigns a parsed norm value. Numeric fields take `number`, PoS takes `label`.
void set_numeric(LexiconRow& row, Field f, std::optional<double> value);
void set_category(LexiconRow& row, Field f, std::optional<std::string> label);

// Tab-separated lexicon with a header row and literal NA for missing values.
// Rows are written in the order given; doubles use shortest round-trip form.
void write_lexicon(std::ostream& out, std::span<const LexiconRow> rows);
std::vector<LexiconRow> read_lexicon(std::istream& in,
                                     const PhonemeInventory& inventory = PhonemeInventory::arpabet());

std::vector<std::string> lexicon_header();

// Shortest representation that reads back to the same double.
std::string format_double(double v);

}  // namespace phonosurp
