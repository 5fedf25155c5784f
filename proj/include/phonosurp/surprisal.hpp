#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "phonosurp/lexicon.hpp"
#include "phonosurp/phonemes.hpp"

namespace phonosurp {

enum class Weighting {
  token,  // each bigram weighted by the word's corpus frequency
  type,   // each word counted once
};

std::string_view weighting_name(Weighting w);
Weighting weighting_from_name(std::string_view name);

// Information content in bits. Never negative.
struct SurprisalValue {
  double bits = 0.0;
};

// Exact integer phoneme-bigram counts. Probabilities are only formed when a
// surprisal is requested.
class BigramModel {
 public:
  using PairCounts = std::map<Bigram, std::uint64_t>;
  using ContextCounts = std::map<Phoneme, std::uint64_t>;

  BigramModel(Weighting weighting, BigramOptions options = {}) : weighting_(weighting), options_(options) {}

  void add(const PhonemeSequence& seq, std::uint64_t weight);
  // Exact, order-independent combination of two shards counted with the same settings.
  void merge(const BigramModel& other);

  Weighting weighting() const { return weighting_; }
  const BigramOptions& bigram_options() const { return options_; }
  const PairCounts& pair_counts() const { return pairs_; }
  const ContextCounts& context_counts() const { return contexts_; }
  std::uint64_t corpus_size() const { return corpus_size_; }

  std::uint64_t pair_count(const Phoneme& a, const Phoneme& b) const;
  std::uint64_t context_count(const Phoneme& a) const;

  // Weight a row contributes under this model's weighting.
  std::uint64_t weight_of(const LexiconRow& row) const;

  bool operator==(const BigramModel&) const = default;

 private:
  Weighting weighting_;
  BigramOptions options_;
  PairCounts pairs_;
  ContextCounts contexts_;
  std::uint64_t corpus_size_ = 0;
};

BigramModel count_bigrams(std::span<const LexiconRow> lexicon, Weighting weighting = Weighting::token,
                          BigramOptions options = {});

struct ScoringOptions {
  // Add-one smoothing over `vocabulary_size` possible successors.
  bool add_one_smoothing = false;
  std::size_t vocabulary_size = PhonemeInventory::arpabet().size();
  // Remove the scored word's own contribution from the counts before scoring.
  bool leave_one_out = false;
};

// -log2 P(b | a).
SurprisalValue bigram_surprisal(const BigramModel& model, const Phoneme& a, const Phoneme& b,
                                const ScoringOptions& options = {});

// Mean of the word's bigram surprisals, summed left to right. With
// leave_one_out, `own_weight` is subtracted from every count the word touched.
SurprisalValue word_average_surprisal(const BigramModel& model, const PhonemeSequence& seq,
                                      const ScoringOptions& options = {}, std::uint64_t own_weight = 0);

struct AnnotationReport {
  std::size_t annotated = 0;
  std::size_t missing = 0;
  std::vector<std::string> failures;  // "word: reason"
};

// Recomputes average_surprisal for every row; rows that cannot be scored get
// a missing value.
std::vector<LexiconRow> annotate_lexicon(std::vector<LexiconRow> lexicon, const BigramModel& model,
                                         const ScoringOptions& options = {},
                                         AnnotationReport* report = nullptr);

// Tab-separated "context next pair_count context_count surprisal_bits",
// sorted lexicographically by (context, next).
void write_model_dump(std::ostream& out, const BigramModel& model, const ScoringOptions& options = {});

}  // namespace phonosurp
