#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "phonosurp/errors.hpp"
#include "phonosurp/ingest.hpp"
#include "phonosurp/io.hpp"
#include "phonosurp/pipeline.hpp"

using namespace phonosurp;

namespace {

std::vector<DictionaryEntry> dict(const std::string& text, Warnings* w = nullptr) {
  std::istringstream in(text);
  return parse_dictionary(in, PhonemeInventory::arpabet(), w);
}

std::vector<FrequencyRecord> freq(const std::string& text, Warnings* w = nullptr) {
  std::istringstream in(text);
  return parse_frequency_table(in, "Word", "FREQcount", w);
}

std::vector<NormRecord> norms(const std::string& text, NormSchema schema, Warnings* w = nullptr) {
  std::istringstream in(text);
  return parse_norm_table(in, schema, w);
}

NormSchema humor_schema() { return {NormLayout::wide, "word", {{Field::Humor, "mean"}}}; }

const LexiconRow& row_for(const std::vector<LexiconRow>& rows, const std::string& word) {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const LexiconRow& r) { return r.word == word; });
  REQUIRE(it != rows.end());
  return *it;
}

}  // namespace

TEST_CASE("dictionary: comments skipped, variants folded, words lower-cased") {
  auto entries = dict(";;; comment\nCAT  K AE1 T\nCAT(1)  K AA1 T\nOOMPH  UW1 M F\n");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].word == "cat");
  REQUIRE(entries[0].variants.size() == 2);
  CHECK(entries[0].canonical().render() == "K AE T");
  CHECK(entries[0].variants[1].render() == "K AA T");
  CHECK(entries[1].word == "oomph");
  CHECK(entries[1].canonical().render() == "UW M F");
}

TEST_CASE("dictionary: the newer lower-case layout with trailing comments") {
  std::ifstream in(PHONOSURP_TEST_DATA "/mini_modern.dict");
  auto entries = parse_dictionary(in);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].variants.size() == 2);
  CHECK(entries[1].word == "d'oh");
  CHECK(entries[1].canonical().render() == "D OW");
}

TEST_CASE("dictionary: malformed lines report their line number") {
  try {
    dict(";;; header\nCAT  K AE1 T\nDOG\n");
    FAIL("expected DictionaryFormatError");
  } catch (const DictionaryFormatError& e) {
    CHECK(e.line() == 3);
  }
  try {
    dict("CAT  K AE1 T\nDOG  D XX1 G\n");
    FAIL("expected RejectedSymbolError");
  } catch (const RejectedSymbolError& e) {
    CHECK(e.line() == 2);
    CHECK(e.token() == "XX1");
  }
}

TEST_CASE("dictionary: duplicate headwords keep the last entry and warn") {
  Warnings w;
  auto entries = dict("CAT  K AE1 T\nDOG  D AO1 G\ncat  K AA1 T\n", &w);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].variants.size() == 1);
  CHECK(entries[0].canonical().render() == "K AA T");
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("line 3") != std::string::npos);
}

TEST_CASE("frequency table: integer counts keyed by lower-cased word") {
  std::ifstream in(PHONOSURP_TEST_DATA "/freq.tsv");
  auto records = parse_frequency_table(in, "Word", "FREQcount");
  REQUIRE(!records.empty());
  CHECK(records[0].word == "the");
  CHECK(records[0].count == 1501908u);
  auto missing = std::find_if(records.begin(), records.end(), [](auto& r) { return r.word == "missing"; });
  REQUIRE(missing != records.end());
  CHECK(missing->count == 0u);
  CHECK(std::any_of(records.begin(), records.end(), [](auto& r) { return r.word == "cat"; }));
}

TEST_CASE("frequency table: bad counts and missing columns") {
  try {
    freq("Word\tFREQcount\nthe\t10\nabc\tx2\n");
    FAIL("expected RowError");
  } catch (const RowError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(freq("Word\tFREQcount\nhalf\t1.5\n"), RowError);
  CHECK_THROWS_AS(freq("Word\tFREQcount\nneg\t-1\n"), RowError);
  try {
    freq("Word\tCount\nthe\t1\n");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    std::string msg = e.what();
    CHECK(msg.find("FREQcount") != std::string::npos);
    CHECK(msg.find("Word, Count") != std::string::npos);
  }
}

TEST_CASE("frequency table: comma delimiter detected and case variants summed") {
  Warnings w;
  auto records = freq("Word,FREQcount\nThe,3\nthe,4\n", &w);
  REQUIRE(records.size() == 1);
  CHECK(records[0].count == 7u);
  CHECK(w.size() == 1);
}

TEST_CASE("norm tables: values, missing cells and ranges") {
  auto records = norms("word,mean\nbooby,4.07\ntorture,1.26\nblank,\nna,NA\n", humor_schema());
  REQUIRE(records.size() == 4);
  CHECK(records[0].word == "booby");
  CHECK(*records[0].find(Field::Humor)->number == doctest::Approx(4.07));
  CHECK(*records[1].find(Field::Humor)->number == doctest::Approx(1.26));
  CHECK(records[2].find(Field::Humor)->missing());
  CHECK(records[3].find(Field::Humor)->missing());

  CHECK_THROWS_AS(norms("word,mean\nx,5.5\n", humor_schema()), RowError);
  CHECK_THROWS_AS(norms("word,mean\nx,0.9\n", humor_schema()), RowError);
  CHECK_THROWS_AS(norms("word,mean\nx,funny\n", humor_schema()), RowError);
  CHECK_THROWS_AS(norms("word,score\nx,2\n", humor_schema()), SchemaError);

  NormSchema nrc{NormLayout::wide, "word", {{Field::Fear, "fear"}}};
  try {
    norms("word,fear\nok,1\nbad,2\n", nrc);
    FAIL("expected RowError");
  } catch (const RowError& e) {
    CHECK(e.line() == 3);
  }

  NormSchema morph{NormLayout::wide, "word", {{Field::Morpheme_Length, "nmorph"}}};
  CHECK_THROWS_AS(norms("word,nmorph\nx,0\n", morph), RowError);
  CHECK_THROWS_AS(norms("word,nmorph\nx,1.5\n", morph), RowError);
  CHECK(*norms("word,nmorph\nx,2\n", morph)[0].find(Field::Morpheme_Length)->number == 2.0);
}

TEST_CASE("norm tables: duplicates keep the last occurrence") {
  Warnings w;
  auto records = norms("word,mean\ncat,2\ndog,3\ncat,4\n", humor_schema(), &w);
  REQUIRE(records.size() == 2);
  CHECK(*records[0].find(Field::Humor)->number == 4.0);
  CHECK(w.size() == 1);
}

TEST_CASE("norm tables: quoted CSV and PoS labels") {
  NormSchema s{NormLayout::wide, "Word", {{Field::PoS, "Dom_PoS"}, {Field::Humor, "h"}}};
  auto records = norms("Word,Dom_PoS,h\n\"cat, the\",Noun,2\n", s);
  REQUIRE(records.size() == 1);
  CHECK(records[0].word == "cat, the");
  CHECK(*records[0].find(Field::PoS)->label == "Noun");
}

TEST_CASE("norm tables: long binary layout") {
  std::ifstream in(PHONOSURP_TEST_DATA "/nrc_long.txt");
  auto records = parse_norm_table(in, NormSchema{NormLayout::long_binary, "word", {}});
  REQUIRE(records.size() == 2);
  CHECK(records[0].word == "cat");
  CHECK(*records[0].find(Field::Joy)->number == 1.0);
  CHECK(*records[1].find(Field::Anger)->number == 1.0);
  CHECK(records[1].find(Field::Trust) == nullptr);

  std::istringstream bad("cat\tanger\t2\n");
  CHECK_THROWS_AS(parse_norm_table(bad, NormSchema{NormLayout::long_binary, "word", {}}), RowError);
}

TEST_CASE("join: inner join of dictionary and frequency, left join of norms") {
  auto d = dict("CAT  K AE1 T\nDOG  D AO1 G\nOOMPH  UW1 M F\nNOFREQ  N OW1\n");
  auto f = freq("Word\tFREQcount\nCat\t5\ndog\t2\noomph\t1\nnopron\t9\n");
  NormTable humor{"humor", norms("word,mean\nOOMPH,3.93\nghost,2\n", humor_schema())};
  NormTable icon{"iconicity",
                 norms("word,rating\noomph,6.92\n", NormSchema{NormLayout::wide, "word", {{Field::Iconicity_Rating, "rating"}}})};

  auto result = join_lexicon(d, f, {humor, icon});
  REQUIRE(result.rows.size() == 3);
  CHECK(result.rows.size() <= std::min(d.size(), f.size()));
  CHECK(result.rows[0].word == "cat");
  CHECK(result.rows[0].frequency == 5u);
  CHECK_FALSE(result.rows[0].humor.has_value());
  CHECK_FALSE(result.rows[0].average_surprisal.has_value());

  const auto& oomph = row_for(result.rows, "oomph");
  CHECK(*oomph.humor == doctest::Approx(3.93));
  CHECK(*oomph.iconicity == doctest::Approx(6.92));
  CHECK(oomph.phoneme_length() == 3);

  REQUIRE(result.report.tables.size() == 2);
  CHECK(result.report.tables[0].records == 2);
  CHECK(result.report.tables[0].matched == 1);
  CHECK(result.report.tables[0].observed.at(Field::Humor).max == doctest::Approx(3.93));
}

TEST_CASE("join: empty intersection and conflicting suppliers are configuration errors") {
  auto d = dict("CAT  K AE1 T\n");
  CHECK_THROWS_AS(join_lexicon(d, freq("Word\tFREQcount\ndog\t1\n"), {}), ConfigError);

  NormTable a{"a", norms("word,mean\ncat,2\n", humor_schema())};
  NormTable b{"b", norms("word,mean\ncat,3\n", humor_schema())};
  CHECK_THROWS_AS(join_lexicon(d, freq("Word\tFREQcount\ncat\t1\n"), {a, b}), ConfigError);
}

TEST_CASE("join: deterministic regardless of input order") {
  const std::string dict_lines[] = {"CAT  K AE1 T\n", "DOG  D AO1 G\n", "OOMPH  UW1 M F\n", "TAT  T AE1 T\n"};
  const std::string freq_lines[] = {"cat\t5\n", "dog\t2\n", "oomph\t1\n", "tat\t4\n"};
  std::string baseline;
  std::mt19937 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<int> order = {0, 1, 2, 3};
    if (trial) std::shuffle(order.begin(), order.end(), rng);
    std::string dtext, ftext = "Word\tFREQcount\n";
    for (int i : order) dtext += dict_lines[i];
    for (int i : order) ftext += freq_lines[i];
    std::ostringstream out;
    write_lexicon(out, join_lexicon(dict(dtext), freq(ftext), {}).rows);
    if (trial == 0) baseline = out.str();
    CHECK(out.str() == baseline);
  }
}

TEST_CASE("lexicon serialization matches the golden file and reads back") {
  auto config = load_config(PHONOSURP_TEST_DATA "/config.ini");
  Warnings w;
  auto result = ingest_datasets(config, &w);
  std::ostringstream out;
  write_lexicon(out, result.rows);
  CHECK(out.str() == read_file(PHONOSURP_TEST_DATA "/../golden/mini_lexicon.tsv"));

  std::istringstream in(out.str());
  auto back = read_lexicon(in);
  CHECK(back == result.rows);

  const auto& dog = row_for(back, "dog");
  CHECK_FALSE(dog.humor.has_value());  // empty cell, not zero
  const auto& cancer = row_for(back, "cancer");
  CHECK(cancer.emotions[emotion_index(Field::Fear)] == 1);
  CHECK_FALSE(cancer.emotions[emotion_index(Field::Trust)].has_value());
}

TEST_CASE("lexicon reader rejects malformed rows") {
  auto header = [] {
    std::string h;
    for (const auto& c : lexicon_header()) h += (h.empty() ? "" : "\t") + c;
    return h + "\n";
  }();
  auto row = [](const std::string& phon_len, const std::string& humor, const std::string& fear) {
    std::string r = "cat\tK AE T\t5\t" + phon_len + "\tNA\tNA\tNA\tNA\t" + humor;
    // ten emotions, Fear is the fourth
    const char* emotions[] = {"NA", "NA", "NA", nullptr, "NA", "NA", "NA", "NA", "NA", "NA"};
    for (auto* e : emotions) r += "\t" + (e ? std::string(e) : fear);
    return r + "\tNA\tNA\tNA\n";
  };
  {
    std::istringstream ok(header + row("3", "2.5", "1"));
    auto rows = read_lexicon(ok);
    REQUIRE(rows.size() == 1);
    CHECK(*rows[0].humor == 2.5);
  }
  {
    std::istringstream bad(header + row("4", "NA", "NA"));
    CHECK_THROWS_AS(read_lexicon(bad), RowError);
  }
  {
    std::istringstream bad(header + row("3", "NA", "2"));
    try {
      read_lexicon(bad);
      FAIL("expected RowError");
    } catch (const RowError& e) {
      CHECK(e.line() == 2);
    }
  }
  {
    std::istringstream bad("word\tpronunciation\n");
    CHECK_THROWS_AS(read_lexicon(bad), SchemaError);
  }
}
