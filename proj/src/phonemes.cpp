#include "phonosurp/phonemes.hpp"

#include <cctype>
#include <fstream>

#include "phonosurp/errors.hpp"

namespace phonosurp {

namespace {

bool valid_symbol(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (std::isspace(u) || std::isdigit(u)) return false;
  }
  return true;
}

}  // namespace

PhonemeSequence::PhonemeSequence(std::vector<Phoneme> phonemes, std::string source_word)
    : phonemes_(std::move(phonemes)), source_word_(std::move(source_word)) {
  if (phonemes_.empty()) throw EmptyTranscriptionError("phoneme sequence must not be empty");
}

std::string PhonemeSequence::render() const {
  std::string out;
  for (const auto& p : phonemes_) {
    if (!out.empty()) out += ' ';
    out += p.symbol();
  }
  return out;
}

std::vector<Bigram> extract_bigrams(const PhonemeSequence& seq, BigramOptions options) {
  const auto& ph = seq.phonemes();
  std::vector<Bigram> out;
  out.reserve(ph.size() + 1);
  if (options.word_boundaries) out.emplace_back(Phoneme::boundary(), ph.front());
  for (std::size_t i = 1; i < ph.size(); ++i) out.emplace_back(ph[i - 1], ph[i]);
  if (options.word_boundaries) out.emplace_back(ph.back(), Phoneme::boundary());
  return out;
}

PhonemeInventory::PhonemeInventory(std::set<std::string> symbols) {
  for (auto& s : symbols) {
    if (!valid_symbol(s) || s == "#") throw ConfigError("invalid inventory symbol '" + s + "'");
    symbols_.insert(s);
  }
  if (symbols_.empty()) throw ConfigError("phoneme inventory is empty");
}

const PhonemeInventory& PhonemeInventory::arpabet() {
  static const PhonemeInventory inventory({
      "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH", "EH", "ER", "EY",
      "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG", "OW", "OY",
      "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH",
  });
  return inventory;
}

PhonemeInventory PhonemeInventory::from_stream(std::istream& in) {
  std::set<std::string> symbols;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    symbols.insert(line.substr(b, e - b + 1));
  }
  return PhonemeInventory(std::move(symbols));
}

PhonemeInventory PhonemeInventory::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open phoneme inventory '" + path + "'");
  return from_stream(in);
}

bool PhonemeInventory::contains(std::string_view symbol) const {
  return symbols_.find(symbol) != symbols_.end();
}

PhonemeSequence PhonemeInventory::parse_transcription(std::string_view raw, std::string source_word,
                                                      std::size_t line) const {
  std::vector<Phoneme> phonemes;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    if (i == raw.size()) break;
    std::size_t j = i;
    while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
    std::string_view token = raw.substr(i, j - i);
    std::string_view stripped = token;
    while (!stripped.empty() && stripped.back() >= '0' && stripped.back() <= '2') {
      stripped.remove_suffix(1);
    }
    if (!contains(stripped)) throw RejectedSymbolError(std::string(token), line);
    phonemes.emplace_back(std::string(stripped));
    i = j;
  }
  if (phonemes.empty()) throw EmptyTranscriptionError("empty transcription", line);
  return PhonemeSequence(std::move(phonemes), std::move(source_word));
}

PhonemeSequence parse_transcription(std::string_view raw) {
  return PhonemeInventory::arpabet().parse_transcription(raw);
}

}  // namespace phonosurp
