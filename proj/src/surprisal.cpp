#include "phonosurp/surprisal.hpp"

#include <cmath>

#include "phonosurp/errors.hpp"

namespace phonosurp {

std::string_view weighting_name(Weighting w) { return w == Weighting::token ? "token" : "type"; }

Weighting weighting_from_name(std::string_view name) {
  if (name == "token") return Weighting::token;
  if (name == "type") return Weighting::type;
  throw ConfigError("unknown weighting '" + std::string(name) + "' (expected token or type)");
}

void BigramModel::add(const PhonemeSequence& seq, std::uint64_t weight) {
  if (weight == 0) return;
  for (const auto& [a, b] : extract_bigrams(seq, options_)) {
    pairs_[{a, b}] += weight;
    contexts_[a] += weight;
    corpus_size_ += weight;
  }
}

void BigramModel::merge(const BigramModel& other) {
  if (other.weighting_ != weighting_ || other.options_.word_boundaries != options_.word_boundaries)
    throw Error("cannot merge bigram models counted with different settings");
  for (const auto& [k, v] : other.pairs_) pairs_[k] += v;
  for (const auto& [k, v] : other.contexts_) contexts_[k] += v;
  corpus_size_ += other.corpus_size_;
}

std::uint64_t BigramModel::pair_count(const Phoneme& a, const Phoneme& b) const {
  auto it = pairs_.find({a, b});
  return it == pairs_.end() ? 0 : it->second;
}

std::uint64_t BigramModel::context_count(const Phoneme& a) const {
  auto it = contexts_.find(a);
  return it == contexts_.end() ? 0 : it->second;
}

std::uint64_t BigramModel::weight_of(const LexiconRow& row) const {
  return weighting_ == Weighting::token ? row.frequency : 1;
}

BigramModel count_bigrams(std::span<const LexiconRow> lexicon, Weighting weighting, BigramOptions options) {
  if (lexicon.empty()) throw ConfigError("cannot count bigrams over an empty lexicon");
  BigramModel model(weighting, options);
  for (const auto& row : lexicon) model.add(row.pronunciation, model.weight_of(row));
  return model;
}

namespace {

double surprisal_from_counts(std::uint64_t pair, std::uint64_t context, const Phoneme& a,
                             const Phoneme& b, const ScoringOptions& options) {
  if (options.add_one_smoothing) {
    const double p = (static_cast<double>(pair) + 1.0) /
                     (static_cast<double>(context) + static_cast<double>(options.vocabulary_size));
    return -std::log2(p);
  }
  if (context == 0) throw UnknownContextError("context '" + a.symbol() + "' is not attested");
  if (pair == 0)
    throw InfiniteSurprisalError("bigram (" + a.symbol() + ", " + b.symbol() +
                                 ") is unattested; surprisal is infinite");
  if (pair == context) return 0.0;
  return -std::log2(static_cast<double>(pair) / static_cast<double>(context));
}

}  // namespace

SurprisalValue bigram_surprisal(const BigramModel& model, const Phoneme& a, const Phoneme& b,
                                const ScoringOptions& options) {
  return {surprisal_from_counts(model.pair_count(a, b), model.context_count(a), a, b, options)};
}

SurprisalValue word_average_surprisal(const BigramModel& model, const PhonemeSequence& seq,
                                      const ScoringOptions& options, std::uint64_t own_weight) {
  const auto bigrams = extract_bigrams(seq, model.bigram_options());
  if (bigrams.empty())
    throw UndefinedAverageError("'" + seq.render() + "' has no bigrams; average surprisal is undefined");

  std::map<Bigram, std::uint64_t> own_pairs;
  std::map<Phoneme, std::uint64_t> own_contexts;
  if (options.leave_one_out) {
    for (const auto& bg : bigrams) {
      own_pairs[bg] += own_weight;
      own_contexts[bg.first] += own_weight;
    }
  }
  auto held_out = [](std::uint64_t total, const auto& own, const auto& key) -> std::uint64_t {
    auto it = own.find(key);
    if (it == own.end()) return total;
    if (it->second > total) throw Error("leave-one-out weight exceeds the model's counts");
    return total - it->second;
  };

  double sum = 0.0;
  for (const auto& bg : bigrams) {
    const auto pair = held_out(model.pair_count(bg.first, bg.second), own_pairs, bg);
    const auto context = held_out(model.context_count(bg.first), own_contexts, bg.first);
    sum += surprisal_from_counts(pair, context, bg.first, bg.second, options);
  }
  return {sum / static_cast<double>(bigrams.size())};
}

std::vector<LexiconRow> annotate_lexicon(std::vector<LexiconRow> lexicon, const BigramModel& model,
                                         const ScoringOptions& options, AnnotationReport* report) {
  AnnotationReport local;
  for (auto& row : lexicon) {
    row.average_surprisal.reset();
    try {
      row.average_surprisal =
          word_average_surprisal(model, row.pronunciation, options, model.weight_of(row)).bits;
      ++local.annotated;
    } catch (const Error& e) {
      ++local.missing;
      local.failures.push_back(row.word + ": " + e.what());
    }
  }
  if (report) *report = std::move(local);
  return lexicon;
}

void write_model_dump(std::ostream& out, const BigramModel& model, const ScoringOptions& options) {
  ScoringOptions plain = options;
  plain.leave_one_out = false;
  out << "context\tnext\tpair_count\tcontext_count\tsurprisal_bits\n";
  for (const auto& [bg, count] : model.pair_counts()) {
    const auto context = model.context_count(bg.first);
    out << bg.first.symbol() << '\t' << bg.second.symbol() << '\t' << count << '\t' << context << '\t'
        << format_double(bigram_surprisal(model, bg.first, bg.second, plain).bits) << '\n';
  }
}

}  // namespace phonosurp
