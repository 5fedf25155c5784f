#include "phonosurp/suites.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "phonosurp/delimited.hpp"
#include "phonosurp/errors.hpp"

namespace phonosurp {

namespace {

// Column order of the emotion tables: negative emotions, then positive ones.
constexpr std::array kTableEmotionOrder = {
    Field::Anger,        Field::Disgust, Field::Fear,     Field::Negative, Field::Sadness,
    Field::Anticipation, Field::Joy,     Field::Positive, Field::Surprise, Field::Trust,
};

ModelSpec block_model(Field dependent, std::optional<Field> extra) {
  ModelSpec spec{dependent, {}, {Field::PoS}, true, {}};
  if (extra) spec.predictors.push_back(*extra);
  for (Field f : shared_predictor_block()) spec.predictors.push_back(f);
  return spec;
}

SuiteDefinition emotion_suite(std::string name, std::span<const Field> fields) {
  SuiteDefinition suite{std::move(name), Orientation::emotion_dependent, {}};
  for (Field f : fields) suite.models.push_back({std::string(field_name(f)), block_model(f, std::nullopt)});
  return suite;
}

SuiteDefinition recall_suite(std::string name, std::span<const Field> fields) {
  SuiteDefinition suite{std::move(name), Orientation::recall_dependent, {}};
  for (Field f : fields)
    suite.models.push_back({std::string(field_name(f)), block_model(Field::Recall_Accuracy, f)});
  return suite;
}

std::string describe(const ExpectationCheck& check) {
  const auto& e = check.expectation;
  std::string sign = e.sign > 0 ? "+" : e.sign < 0 ? "-" : "?";
  std::string tier = e.min_tier == 0 ? "ns" : std::string(static_cast<std::size_t>(e.min_tier), '*');
  return e.suite + " " + e.model + " " + e.term + " " + sign + " " + tier;
}

}  // namespace

std::string_view orientation_name(Orientation o) {
  switch (o) {
    case Orientation::emotion_dependent: return "emotion-as-dependent";
    case Orientation::recall_dependent: return "recall-as-dependent";
    case Orientation::simple: return "simple";
  }
  return "unknown";
}

std::vector<Field> shared_predictor_block() {
  return {Field::Average_Surprisal, Field::Iconicity_Rating, Field::Phoneme_Length, Field::Morpheme_Length,
          Field::PoS};
}

std::vector<SuiteDefinition> builtin_suites() {
  const std::array valence = {Field::G_Valence, Field::NRC_Valence};
  const std::array humor = {Field::Humor};
  return {
      emotion_suite("valence", valence),
      emotion_suite("emotions", kTableEmotionOrder),
      emotion_suite("humor", humor),
      recall_suite("memory-valence", valence),
      recall_suite("memory-emotions", kTableEmotionOrder),
      recall_suite("memory-humor", humor),
  };
}

SuiteDefinition humor_valence_suite() {
  SuiteDefinition suite{"humor-valence", Orientation::simple, {}};
  for (Field x : {Field::NRC_Valence, Field::G_Valence})
    suite.models.push_back({std::string(field_name(x)), ModelSpec{Field::Humor, {x}, {}, true, {}}});
  return suite;
}

std::vector<SuiteDefinition> select_suites(std::string_view selection) {
  auto all = builtin_suites();
  all.push_back(humor_valence_suite());
  if (selection == "all") return all;
  for (auto& s : all)
    if (s.name == selection) return {s};
  throw ConfigError("unknown suite '" + std::string(selection) +
                    "' (expected all, valence, emotions, humor, memory-valence, memory-emotions, "
                    "memory-humor or humor-valence)");
}

const ModelOutcome* SuiteReport::find(std::string_view model) const {
  for (const auto& m : models)
    if (m.name == model) return &m;
  return nullptr;
}

SuiteReport run_suite(const SuiteDefinition& suite, std::span<const LexiconRow> lexicon,
                      std::map<std::string, std::string> metadata, bool parallel) {
  if (lexicon.empty()) throw ConfigError("suite '" + suite.name + "' run on an empty lexicon");
  std::set<Field> required;
  for (const auto& m : suite.models) {
    required.insert(m.spec.dependent);
    required.insert(m.spec.predictors.begin(), m.spec.predictors.end());
  }
  for (Field f : required) {
    bool any = std::any_of(lexicon.begin(), lexicon.end(), [f](const LexiconRow& r) { return r.has(f); });
    if (!any)
      throw ConfigError("suite '" + suite.name + "' needs " + std::string(field_name(f)) +
                        ", which no lexicon row provides");
  }

  auto fit_one = [lexicon](const NamedModel& m) {
    ModelOutcome out{m.name, m.spec, std::nullopt, {}};
    try {
      out.fit = ols_fit(build_design_matrix(lexicon, m.spec));
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  };

  SuiteReport report{suite.name, suite.orientation, {}, std::move(metadata)};
  if (parallel) {
    std::vector<std::future<ModelOutcome>> pending;
    for (const auto& m : suite.models) pending.push_back(std::async(std::launch::async, fit_one, std::cref(m)));
    for (auto& f : pending) report.models.push_back(f.get());
  } else {
    for (const auto& m : suite.models) report.models.push_back(fit_one(m));
  }
  return report;
}

int significance_tier(double p) {
  if (std::isnan(p)) return 0;
  if (p < 0.001) return 3;
  if (p < 0.01) return 2;
  if (p < 0.05) return 1;
  return 0;
}

std::vector<Expectation> parse_expectations(std::istream& in) {
  std::vector<Expectation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty()) continue;
    if (parts.size() != 5)
      throw ExpectationFileError("expected 'suite model term sign tier', got " + std::to_string(parts.size()) +
                                     " fields",
                                 line_no);
    Expectation e{parts[0], parts[1], parts[2], 0, 0, line_no};
    if (parts[3] == "+") e.sign = 1;
    else if (parts[3] == "-") e.sign = -1;
    else if (parts[3] != "?") throw ExpectationFileError("sign must be +, - or ?", line_no);
    const auto& tier = parts[4];
    if (tier == "*" || tier == "**" || tier == "***") e.min_tier = static_cast<int>(tier.size());
    else if (tier == "ns") e.min_tier = 0;
    else throw ExpectationFileError("tier must be *, ** , *** or ns (marginal '.' is not checkable)", line_no);
    if (e.min_tier > 0 && e.sign == 0)
      throw ExpectationFileError("a significance expectation needs a sign", line_no);
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t Comparison::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.status == ExpectationCheck::Status::pass;
  }));
}

std::size_t Comparison::failed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.status == ExpectationCheck::Status::fail;
  }));
}

std::size_t Comparison::skipped() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.status == ExpectationCheck::Status::skipped;
  }));
}

Comparison compare_to_expected(std::span<const SuiteReport> reports, std::span<const Expectation> expectations) {
  auto known = select_suites("all");
  Comparison cmp;
  for (const auto& e : expectations) {
    auto def = std::find_if(known.begin(), known.end(), [&](const auto& s) { return s.name == e.suite; });
    if (def == known.end()) throw ExpectationFileError("unknown suite '" + e.suite + "'", e.line);
    auto model_def = std::find_if(def->models.begin(), def->models.end(),
                                  [&](const auto& m) { return m.name == e.model; });
    if (model_def == def->models.end())
      throw ExpectationFileError("suite '" + e.suite + "' has no model '" + e.model + "'", e.line);

    const auto& spec = model_def->spec;
    bool plausible = (e.term == kInterceptName && spec.include_intercept);
    for (Field f : spec.predictors) {
      const std::string name(field_name(f));
      if (is_categorical(f) ? e.term.starts_with(name + "_") : e.term == name) plausible = true;
    }
    if (!plausible)
      throw ExpectationFileError("model '" + e.suite + "/" + e.model + "' has no term '" + e.term + "'", e.line);

    ExpectationCheck check{e, ExpectationCheck::Status::fail, {}};
    auto report = std::find_if(reports.begin(), reports.end(), [&](const auto& r) { return r.suite == e.suite; });
    if (report == reports.end()) {
      check.status = ExpectationCheck::Status::skipped;
      check.observed = "suite not run";
      cmp.checks.push_back(std::move(check));
      continue;
    }
    const ModelOutcome* outcome = report->find(e.model);
    if (!outcome || !outcome->fit) {
      check.observed = "model failed: " + (outcome ? outcome->error : std::string("missing"));
      cmp.checks.push_back(std::move(check));
      continue;
    }
    const auto& fit = *outcome->fit;
    auto idx = fit.index_of(e.term);
    if (!idx) {
      bool dropped = std::find(fit.dropped_columns.begin(), fit.dropped_columns.end(), e.term) !=
                     fit.dropped_columns.end();
      if (!dropped)
        throw ExpectationFileError("term '" + e.term + "' is not a column of " + e.suite + "/" + e.model +
                                       " (reference levels have no column)",
                                   e.line);
      check.observed = "column dropped";
      cmp.checks.push_back(std::move(check));
      continue;
    }
    const double est = fit.coefficients[*idx];
    const double p = fit.p_values[*idx];
    const int tier = significance_tier(p);
    const int sign = est > 0 ? 1 : est < 0 ? -1 : 0;
    std::ostringstream obs;
    obs << "estimate=" << format_double(est) << " t=" << format_double(fit.t_statistics[*idx])
        << " p=" << format_double(p) << " tier=" << tier;
    check.observed = obs.str();
    bool ok = e.min_tier == 0 ? tier == 0 : tier >= e.min_tier;
    if (e.sign != 0) ok = ok && sign == e.sign;
    check.status = ok ? ExpectationCheck::Status::pass : ExpectationCheck::Status::fail;
    cmp.checks.push_back(std::move(check));
  }
  return cmp;
}

std::string render_comparison(const Comparison& comparison) {
  std::ostringstream out;
  for (const auto& c : comparison.checks) {
    const char* status = c.status == ExpectationCheck::Status::pass   ? "PASS"
                         : c.status == ExpectationCheck::Status::fail ? "FAIL"
                                                                      : "SKIP";
    out << status << '\t' << describe(c) << '\t' << c.observed << '\n';
  }
  out << "passed " << comparison.passed() << ", failed " << comparison.failed() << ", skipped "
      << comparison.skipped() << '\n';
  return out.str();
}

}  // namespace phonosurp
