#pragma once

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phonosurp/lexicon.hpp"
#include "phonosurp/regress.hpp"

namespace phonosurp {

enum class Orientation {
  emotion_dependent,  // norm as response; surprisal, iconicity, lengths and PoS as predictors
  recall_dependent,   // recall accuracy as response; one norm added to the same block
  simple,             // one-predictor regressions
};

std::string_view orientation_name(Orientation o);

struct NamedModel {
  std::string name;
  ModelSpec spec;
};

struct SuiteDefinition {
  std::string name;
  Orientation orientation;
  std::vector<NamedModel> models;
};

// Predictor block shared by every multiple-regression model.
std::vector<Field> shared_predictor_block();

// valence, emotions, humor, memory-valence, memory-emotions, memory-humor.
std::vector<SuiteDefinition> builtin_suites();
// Humor regressed on each valence measure alone.
SuiteDefinition humor_valence_suite();

// "all" gives the six built-in suites followed by humor-valence; otherwise a
// single suite by name. Throws ConfigError for unknown names.
std::vector<SuiteDefinition> select_suites(std::string_view selection);

struct ModelOutcome {
  std::string name;
  ModelSpec spec;
  std::optional<FitResult> fit;
  std::string error;  // set when fit is empty
};

struct SuiteReport {
  std::string suite;
  Orientation orientation = Orientation::emotion_dependent;
  std::vector<ModelOutcome> models;
  // Free-form provenance (dataset digests, config hash, ...), copied into outputs.
  std::map<std::string, std::string> metadata;

  const ModelOutcome* find(std::string_view model) const;
};

// Fits every model independently (concurrently when `parallel`); a failing
// model is recorded, not fatal. Throws ConfigError if the lexicon is empty
// or lacks a required field on every row.
SuiteReport run_suite(const SuiteDefinition& suite, std::span<const LexiconRow> lexicon,
                      std::map<std::string, std::string> metadata = {}, bool parallel = true);

// Significance tiers: 3 = p < 0.001, 2 = p < 0.01, 1 = p < 0.05, 0 otherwise.
int significance_tier(double p);

struct Expectation {
  std::string suite;
  std::string model;
  std::string term;
  int sign = 0;       // +1 or -1; 0 when only non-significance is expected
  int min_tier = 1;   // 1..3, or 0 for "ns" (p >= 0.05 expected)
  std::size_t line = 0;
};

// Whitespace-separated "suite model term sign tier" lines; '#' starts a
// comment. sign is +, - or ? (unchecked); tier is *, ** or *** (a minimum),
// or ns for p >= 0.05.
std::vector<Expectation> parse_expectations(std::istream& in);

struct ExpectationCheck {
  Expectation expectation;
  enum class Status { pass, fail, skipped } status = Status::fail;
  std::string observed;
};

struct Comparison {
  std::vector<ExpectationCheck> checks;
  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t skipped() const;
  bool ok() const { return failed() == 0; }
};

// Expectations for suites absent from `reports` are skipped. A term that the
// model can never produce (e.g. the reference level) is an ExpectationFileError.
Comparison compare_to_expected(std::span<const SuiteReport> reports, std::span<const Expectation> expectations);

std::string render_comparison(const Comparison& comparison);

}  // namespace phonosurp
