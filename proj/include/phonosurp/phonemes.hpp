#pragma once

#include <compare>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phonosurp {

// A stress-free phoneme symbol. Construction does not validate; validated
// phonemes come from PhonemeInventory::parse_transcription.
class Phoneme {
 public:
  explicit Phoneme(std::string symbol) : symbol_(std::move(symbol)) {}

  // Pseudo-phoneme marking a word edge when boundary bigrams are enabled.
  static Phoneme boundary() { return Phoneme("#"); }

  const std::string& symbol() const { return symbol_; }
  bool is_boundary() const { return symbol_ == "#"; }

  auto operator<=>(const Phoneme&) const = default;
  bool operator==(const Phoneme&) const = default;

 private:
  std::string symbol_;
};

using Bigram = std::pair<Phoneme, Phoneme>;

// A word's canonical pronunciation. Never empty.
class PhonemeSequence {
 public:
  PhonemeSequence(std::vector<Phoneme> phonemes, std::string source_word = {});

  const std::vector<Phoneme>& phonemes() const { return phonemes_; }
  const std::string& source_word() const { return source_word_; }
  std::size_t size() const { return phonemes_.size(); }
  const Phoneme& front() const { return phonemes_.front(); }
  const Phoneme& back() const { return phonemes_.back(); }

  // Space-separated symbols, e.g. "K AE T".
  std::string render() const;

  // Equality ignores the source word.
  bool operator==(const PhonemeSequence& other) const { return phonemes_ == other.phonemes_; }

 private:
  std::vector<Phoneme> phonemes_;
  std::string source_word_;
};

struct BigramOptions {
  // Add (#, first) and (last, #) pairs around each word. Off by default.
  bool word_boundaries = false;

  bool operator==(const BigramOptions&) const = default;
};

// Adjacent ordered pairs; n-1 of them for an n-phoneme sequence (n+1 with
// word boundaries enabled).
std::vector<Bigram> extract_bigrams(const PhonemeSequence& seq, BigramOptions options = {});

// The set of symbols a transcription may use after stress digits are removed.
class PhonemeInventory {
 public:
  explicit PhonemeInventory(std::set<std::string> symbols);

  // The 39-symbol ARPABET inventory of the CMU Pronouncing Dictionary.
  static const PhonemeInventory& arpabet();

  // One symbol per line; blank lines and lines starting with '#' are ignored.
  static PhonemeInventory from_stream(std::istream& in);
  static PhonemeInventory from_file(const std::string& path);

  bool contains(std::string_view symbol) const;
  std::size_t size() const { return symbols_.size(); }
  const std::set<std::string, std::less<>>& symbols() const { return symbols_; }

  // Splits on whitespace, strips trailing stress digits (0/1/2) and validates
  // each token. `line` is only used to annotate errors.
  PhonemeSequence parse_transcription(std::string_view raw, std::string source_word = {},
                                      std::size_t line = 0) const;

 private:
  std::set<std::string, std::less<>> symbols_;
};

// Convenience over the ARPABET inventory.
PhonemeSequence parse_transcription(std::string_view raw);

}  // namespace phonosurp
