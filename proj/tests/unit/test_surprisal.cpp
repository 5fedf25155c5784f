#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "phonosurp/errors.hpp"
#include "phonosurp/surprisal.hpp"
#include "support/oracles.hpp"

using namespace phonosurp;

namespace {

LexiconRow row(const std::string& word, const std::string& pron, std::uint64_t freq) {
  return LexiconRow{.word = word, .pronunciation = parse_transcription(pron), .frequency = freq};
}

// {ab x3, ac x1} using real symbols: ab = K AE, ac = K T.
std::vector<LexiconRow> toy() { return {row("kae", "K AE", 3), row("kt", "K T", 1)}; }

Phoneme P(const char* s) { return Phoneme(s); }

std::vector<oracle::Word> to_oracle(const std::vector<LexiconRow>& rows) {
  std::vector<oracle::Word> out;
  for (const auto& r : rows) {
    oracle::Word w{{}, static_cast<unsigned>(r.frequency)};
    for (const auto& p : r.pronunciation.phonemes()) w.phonemes.push_back(p.symbol());
    out.push_back(w);
  }
  return out;
}

std::vector<LexiconRow> random_lexicon(std::mt19937& rng, std::size_t n_words) {
  static const char* syms[] = {"K", "AE", "T", "S", "IH", "N", "M"};
  std::uniform_int_distribution<int> len(2, 6), pick(0, 6), freq(1, 20);
  std::vector<LexiconRow> out;
  for (std::size_t i = 0; i < n_words; ++i) {
    std::string pron;
    for (int j = 0, n = len(rng); j < n; ++j) pron += std::string(syms[pick(rng)]) + " ";
    out.push_back(row("w" + std::to_string(i), pron, freq(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("token and type counts on a two-word lexicon") {
  auto tok = count_bigrams(toy(), Weighting::token);
  CHECK(tok.pair_count(P("K"), P("AE")) == 3);
  CHECK(tok.pair_count(P("K"), P("T")) == 1);
  CHECK(tok.context_count(P("K")) == 4);
  CHECK(tok.corpus_size() == 4);

  auto type = count_bigrams(toy(), Weighting::type);
  CHECK(type.pair_count(P("K"), P("AE")) == 1);
  CHECK(type.context_count(P("K")) == 2);
}

TEST_CASE("hand-computed surprisals") {
  auto tok = count_bigrams(toy(), Weighting::token);
  // -log2(3/4), frozen from a 50-digit evaluation.
  CHECK(bigram_surprisal(tok, P("K"), P("AE")).bits == doctest::Approx(0.41503749927884381).epsilon(1e-15));
  CHECK(bigram_surprisal(tok, P("K"), P("T")).bits == doctest::Approx(2.0).epsilon(1e-15));

  auto type = count_bigrams(toy(), Weighting::type);
  CHECK(bigram_surprisal(type, P("K"), P("AE")).bits == doctest::Approx(1.0).epsilon(1e-15));

  auto certain = count_bigrams(std::vector<LexiconRow>{row("x", "UW M F", 9)});
  CHECK(bigram_surprisal(certain, P("UW"), P("M")).bits == 0.0);
  CHECK_FALSE(std::signbit(bigram_surprisal(certain, P("UW"), P("M")).bits));
}

TEST_CASE("word averages are the mean of bigram surprisals") {
  std::vector<LexiconRow> lex = {row("kae", "K AE T", 3), row("kt", "K T", 1)};
  auto m = count_bigrams(lex);
  // K->AE: 3/4, AE->T: 3/3
  double expected = (-std::log2(0.75) + 0.0) / 2;
  CHECK(word_average_surprisal(m, lex[0].pronunciation).bits == doctest::Approx(expected).epsilon(1e-15));
  CHECK_THROWS_AS(word_average_surprisal(m, parse_transcription("K")), UndefinedAverageError);
}

TEST_CASE("unseen contexts and pairs are errors unless smoothing is enabled") {
  auto m = count_bigrams(toy());
  CHECK_THROWS_AS(bigram_surprisal(m, P("Z"), P("K")), UnknownContextError);
  CHECK_THROWS_AS(bigram_surprisal(m, P("K"), P("Z")), InfiniteSurprisalError);

  ScoringOptions smooth{.add_one_smoothing = true};
  CHECK(bigram_surprisal(m, P("K"), P("Z"), smooth).bits == doctest::Approx(-std::log2(1.0 / 43)));
  CHECK(bigram_surprisal(m, P("K"), P("AE"), smooth).bits == doctest::Approx(-std::log2(4.0 / 43)));
  CHECK(bigram_surprisal(m, P("Z"), P("K"), smooth).bits == doctest::Approx(std::log2(39.0)));
}

TEST_CASE("empty lexicons cannot be counted") {
  CHECK_THROWS(count_bigrams(std::vector<LexiconRow>{}));
}

TEST_CASE("word boundaries add start and end pairs") {
  auto m = count_bigrams(toy(), Weighting::token, {.word_boundaries = true});
  CHECK(m.pair_count(Phoneme::boundary(), P("K")) == 4);
  CHECK(m.pair_count(P("AE"), Phoneme::boundary()) == 3);
  CHECK(bigram_surprisal(m, Phoneme::boundary(), P("K")).bits == 0.0);
}

TEST_CASE("leave-one-out removes the word's own weight") {
  std::vector<LexiconRow> lex = {row("kae", "K AE", 3), row("kt", "K T", 1), row("kt2", "K T", 2)};
  auto m = count_bigrams(lex);
  ScoringOptions loo{.leave_one_out = true};
  // Without kae: K->AE 0 of 3 -> infinite.
  CHECK_THROWS_AS(word_average_surprisal(m, lex[0].pronunciation, loo, 3), InfiniteSurprisalError);
  // Without kt (weight 1): K->T 2 of 5.
  CHECK(word_average_surprisal(m, lex[1].pronunciation, loo, 1).bits == doctest::Approx(-std::log2(2.0 / 5)));

  AnnotationReport report;
  auto annotated = annotate_lexicon(lex, m, loo, &report);
  CHECK(report.annotated == 2);
  CHECK(report.missing == 1);
  CHECK_FALSE(annotated[0].average_surprisal.has_value());
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].rfind("kae:", 0) == 0);
}

TEST_CASE("annotation matches an independent token-by-token count") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto lex = random_lexicon(rng, 30);
    for (bool type : {false, true}) {
      auto model = count_bigrams(lex, type ? Weighting::type : Weighting::token);
      auto tally = oracle::enumerate_tokens(to_oracle(lex), type);
      for (const auto& [pair, count] : tally.pairs) CHECK(model.pair_count(P(pair.first.c_str()), P(pair.second.c_str())) == count);
      auto annotated = annotate_lexicon(lex, model);
      auto words = to_oracle(lex);
      for (std::size_t i = 0; i < lex.size(); ++i) {
        REQUIRE(annotated[i].average_surprisal.has_value());
        double expected = static_cast<double>(oracle::average_surprisal(tally, words[i].phonemes));
        CHECK(std::fabs(*annotated[i].average_surprisal - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("scaling all frequencies leaves surprisals unchanged") {
  std::mt19937 rng(5);
  auto lex = random_lexicon(rng, 25);
  auto scaled = lex;
  for (auto& r : scaled) r.frequency *= 7;
  auto a = annotate_lexicon(lex, count_bigrams(lex));
  auto b = annotate_lexicon(scaled, count_bigrams(scaled));
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(*a[i].average_surprisal == doctest::Approx(*b[i].average_surprisal).epsilon(1e-12));
}

TEST_CASE("counts do not depend on row order, and shards merge exactly") {
  std::mt19937 rng(9);
  auto lex = random_lexicon(rng, 40);
  auto whole = count_bigrams(lex);
  auto shuffled = lex;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(count_bigrams(shuffled) == whole);

  std::span<const LexiconRow> all(lex);
  auto left = count_bigrams(all.first(17));
  auto right = count_bigrams(all.subspan(17));
  right.merge(left);
  CHECK(right == whole);
}

TEST_CASE("raising a pair's frequency lowers its surprisal") {
  std::vector<LexiconRow> lex = {row("kae", "K AE", 3), row("kt", "K T", 1)};
  double prev = bigram_surprisal(count_bigrams(lex), P("K"), P("AE")).bits;
  for (int i = 0; i < 10; ++i) {
    lex[0].frequency += 1;
    double now = bigram_surprisal(count_bigrams(lex), P("K"), P("AE")).bits;
    CHECK(now < prev);
    CHECK(now >= 0.0);
    prev = now;
  }
}

TEST_CASE("model dump lists every observed pair in order") {
  std::ostringstream out;
  write_model_dump(out, count_bigrams(toy()));
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "context\tnext\tpair_count\tcontext_count\tsurprisal_bits");
  CHECK(lines[1].rfind("K\tAE\t3\t4\t0.41503749927884", 0) == 0);
  CHECK(lines[2].rfind("K\tT\t1\t4\t2", 0) == 0);
}

TEST_CASE("weighting names") {
  CHECK(weighting_from_name("token") == Weighting::token);
  CHECK(weighting_from_name("type") == Weighting::type);
  CHECK(weighting_name(Weighting::type) == "type");
  CHECK_THROWS(weighting_from_name("lemma"));
}
