#include "phonosurp/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "phonosurp/delimited.hpp"
#include "phonosurp/errors.hpp"
#include "phonosurp/io.hpp"
#include "phonosurp/lexicon.hpp"
#include "phonosurp/regress.hpp"
#include "phonosurp/render.hpp"
#include "phonosurp/suites.hpp"
#include "phonosurp/surprisal.hpp"

namespace phonosurp {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

PhonemeInventory inventory_for(const RunConfig& config) {
  if (config.inventory_path) return PhonemeInventory::from_file(config.resolve(*config.inventory_path).string());
  return PhonemeInventory::arpabet();
}

JoinResult ingest_datasets(const RunConfig& config, Warnings* warnings) {
  validate_config(config);
  const auto inventory = inventory_for(config);

  auto open = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + p.string() + "'");
    return in;
  };
  auto with_file = [](const fs::path& p, const auto& body) {
    try {
      return body();
    } catch (const ParseError& e) {
      throw ParseError(p.string() + ": " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError(p.string() + ": " + e.what());
    }
  };

  auto dict_task = std::async(std::launch::async, [&] {
    auto path = config.resolve(config.dictionary_path);
    return with_file(path, [&] {
      auto in = open(path);
      Warnings w;
      auto entries = parse_dictionary(in, inventory, &w);
      return std::make_pair(std::move(entries), std::move(w));
    });
  });
  auto freq_task = std::async(std::launch::async, [&] {
    auto path = config.resolve(config.frequency_path);
    return with_file(path, [&] {
      auto in = open(path);
      Warnings w;
      auto records = parse_frequency_table(in, config.frequency_word_column, config.frequency_count_column, &w);
      return std::make_pair(std::move(records), std::move(w));
    });
  });
  std::vector<std::future<std::pair<NormTable, Warnings>>> norm_tasks;
  for (const auto& n : config.norms) {
    norm_tasks.push_back(std::async(std::launch::async, [&config, &n, open, with_file] {
      auto path = config.resolve(n.path);
      return with_file(path, [&] {
        auto in = open(path);
        Warnings w;
        NormTable table{n.name, parse_norm_table(in, n.schema, &w)};
        return std::make_pair(std::move(table), std::move(w));
      });
    }));
  }

  auto [dictionary, dict_warnings] = dict_task.get();
  auto [frequencies, freq_warnings] = freq_task.get();
  std::vector<NormTable> tables;
  Warnings all = std::move(dict_warnings);
  all.insert(all.end(), freq_warnings.begin(), freq_warnings.end());
  for (auto& t : norm_tasks) {
    auto [table, w] = t.get();
    for (auto& msg : w) all.push_back(table.name + ": " + msg);
    tables.push_back(std::move(table));
  }

  auto result = join_lexicon(dictionary, frequencies, tables);
  result.report.warnings = all;
  if (warnings) warnings->insert(warnings->end(), all.begin(), all.end());
  return result;
}

void write_join_report(std::ostream& out, const JoinReport& report) {
  out << "dictionary entries: " << report.dictionary_entries << '\n'
      << "frequency records: " << report.frequency_records << '\n'
      << "joined rows: " << report.joined_rows << '\n';
  for (const auto& t : report.tables) {
    out << "norms " << t.name << ": " << t.matched << " of " << t.records << " records matched\n";
    for (const auto& [field, range] : t.observed)
      out << "  " << field_name(field) << ": " << range.present << " values, observed range ["
          << format_double(range.min) << ", " << format_double(range.max) << "]\n";
  }
}

namespace {

constexpr int kExitOk = 0;
constexpr int kExitExpectations = 1;
constexpr int kExitUsage = 2;

ordered_json input_entry(const std::string& role, const fs::path& path) {
  auto bytes = read_file(path);
  ordered_json j;
  j["role"] = role;
  j["path"] = path.string();
  j["bytes"] = bytes.size();
  j["sha256"] = sha256_hex(bytes);
  return j;
}

ordered_json make_manifest(const std::string& command, ordered_json inputs, ordered_json settings,
                           ordered_json results) {
  ordered_json j;
  j["toolkit"] = "phonosurp";
  j["version"] = kToolkitVersion;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["settings"] = std::move(settings);
  j["results"] = std::move(results);
  return j;
}

std::vector<LexiconRow> load_lexicon(const fs::path& path, const PhonemeInventory& inventory) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open lexicon '" + path.string() + "'");
  try {
    return read_lexicon(in, inventory);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

Field require_field(const std::string& name) {
  auto f = field_from_name(name);
  if (!f) throw ConfigError("unknown field '" + name + "'");
  return *f;
}

std::string lexicon_bytes(std::span<const LexiconRow> rows) {
  std::ostringstream out;
  write_lexicon(out, rows);
  return out.str();
}

std::string safe_name(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

struct Options {
  std::string config;
  std::string out;
  std::string lexicon;
  std::string weighting;
  std::string model_dump;
  std::string inventory;
  bool boundaries = false;
  bool add_one = false;
  bool leave_one_out = false;
  std::string dependent;
  std::string predictors;
  std::string categorical;
  std::string format = "text";
  bool no_intercept = false;
  std::string suite;
  std::string expect;
  std::string formats;
  bool serial = false;
  std::string summary;
  std::string values = "t";
};

std::optional<RunConfig> maybe_config(const Options& o) {
  if (o.config.empty()) return std::nullopt;
  return load_config(o.config);
}

int cmd_validate_config(const Options& o, std::ostream& out) {
  auto config = load_config(o.config);
  validate_config(config);
  out << "config ok: " << o.config << '\n';
  return kExitOk;
}

int cmd_ingest(const Options& o, std::ostream& err) {
  auto config = load_config(o.config);
  Warnings warnings;
  auto result = ingest_datasets(config, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  write_join_report(err, result.report);

  auto bytes = lexicon_bytes(result.rows);
  write_file_atomic(o.out, bytes);

  ordered_json inputs = ordered_json::array();
  inputs.push_back(input_entry("config", o.config));
  inputs.push_back(input_entry("dictionary", config.resolve(config.dictionary_path)));
  inputs.push_back(input_entry("frequency", config.resolve(config.frequency_path)));
  for (const auto& n : config.norms) inputs.push_back(input_entry("norms:" + n.name, config.resolve(n.path)));
  ordered_json settings;
  settings["config"] = serialize_config(config);
  ordered_json results;
  results["lexicon"] = o.out;
  results["lexicon_sha256"] = sha256_hex(bytes);
  results["joined_rows"] = result.report.joined_rows;
  ordered_json tables = ordered_json::array();
  for (const auto& t : result.report.tables) {
    ordered_json tj;
    tj["name"] = t.name;
    tj["records"] = t.records;
    tj["matched"] = t.matched;
    for (const auto& [field, range] : t.observed) {
      tj["observed"][std::string(field_name(field))] = {{"present", range.present}, {"min", range.min}, {"max", range.max}};
    }
    tables.push_back(std::move(tj));
  }
  results["norm_tables"] = std::move(tables);
  results["warnings"] = warnings.size();
  write_file_atomic(o.out + ".manifest.json",
                    make_manifest("ingest", std::move(inputs), std::move(settings), std::move(results)).dump(2) + "\n");
  return kExitOk;
}

int cmd_surprisal(const Options& o, std::ostream& err) {
  auto config = maybe_config(o);
  Weighting weighting = config ? config->weighting : Weighting::token;
  if (!o.weighting.empty()) weighting = weighting_from_name(o.weighting);
  BigramOptions bigram_opts{o.boundaries || (config && config->word_boundaries)};
  ScoringOptions scoring;
  scoring.add_one_smoothing = o.add_one || (config && config->add_one_smoothing);
  scoring.leave_one_out = o.leave_one_out || (config && config->leave_one_out);

  PhonemeInventory inventory = PhonemeInventory::arpabet();
  if (!o.inventory.empty()) inventory = PhonemeInventory::from_file(o.inventory);
  else if (config) inventory = inventory_for(*config);
  scoring.vocabulary_size = inventory.size() + (bigram_opts.word_boundaries ? 1 : 0);

  auto rows = load_lexicon(o.lexicon, inventory);
  auto model = count_bigrams(rows, weighting, bigram_opts);
  AnnotationReport report;
  rows = annotate_lexicon(std::move(rows), model, scoring, &report);
  for (const auto& f : report.failures) err << "warning: " << f << '\n';
  err << "annotated " << report.annotated << " rows, " << report.missing << " missing\n";

  auto bytes = lexicon_bytes(rows);
  write_file_atomic(o.out, bytes);
  if (!o.model_dump.empty()) {
    std::ostringstream dump;
    write_model_dump(dump, model, scoring);
    write_file_atomic(o.model_dump, dump.str());
  }

  ordered_json inputs = ordered_json::array();
  inputs.push_back(input_entry("lexicon", o.lexicon));
  if (!o.config.empty()) inputs.push_back(input_entry("config", o.config));
  ordered_json settings;
  settings["weighting"] = weighting_name(weighting);
  settings["word_boundaries"] = bigram_opts.word_boundaries;
  settings["add_one_smoothing"] = scoring.add_one_smoothing;
  settings["leave_one_out"] = scoring.leave_one_out;
  settings["inventory_size"] = inventory.size();
  ordered_json results;
  results["lexicon"] = o.out;
  results["lexicon_sha256"] = sha256_hex(bytes);
  results["annotated_rows"] = report.annotated;
  results["missing_rows"] = report.missing;
  results["corpus_size"] = model.corpus_size();
  results["distinct_bigrams"] = model.pair_counts().size();
  ordered_json spot = ordered_json::object();
  for (const char* word : {"oomph", "cancer"}) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const LexiconRow& r) { return r.word == word; });
    if (it != rows.end() && it->average_surprisal) spot[word] = *it->average_surprisal;
  }
  results["spot_checks"] = std::move(spot);
  write_file_atomic(o.out + ".manifest.json",
                    make_manifest("surprisal", std::move(inputs), std::move(settings), std::move(results)).dump(2) + "\n");
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  auto rows = load_lexicon(o.lexicon, PhonemeInventory::arpabet());
  ModelSpec spec{require_field(o.dependent), {}, {}, !o.no_intercept, {}};
  for (const auto& name : split_list(o.predictors)) {
    Field f = require_field(name);
    spec.predictors.push_back(f);
    if (is_categorical(f)) spec.categorical.insert(f);
  }
  for (const auto& name : split_list(o.categorical)) spec.categorical.insert(require_field(name));
  if (spec.predictors.empty()) throw ConfigError("--predictors must list at least one field");

  auto fit = ols_fit(build_design_matrix(rows, spec));
  auto rendered = render_table(fit, format_from_name(o.format));
  if (o.out.empty() || o.out == "-") {
    out << rendered;
  } else {
    write_file_atomic(o.out, rendered);
  }
  return kExitOk;
}

int cmd_suite(const Options& o, std::ostream& err) {
  auto config = maybe_config(o);
  std::string selection = !o.suite.empty() ? o.suite : config ? config->suite : "all";
  std::string expect = o.expect;
  if (expect.empty() && config && config->expect_path) expect = config->resolve(*config->expect_path).string();
  std::set<Format> formats = config ? config->formats : std::set<Format>{Format::text, Format::csv};
  if (!o.formats.empty()) {
    formats.clear();
    for (const auto& f : split_list(o.formats)) formats.insert(format_from_name(f));
  }
  std::string out_dir = !o.out.empty() ? o.out : config ? config->resolve(config->output_dir).string() : "";
  if (out_dir.empty()) throw ConfigError("--out is required");

  auto suites = select_suites(selection);
  std::vector<Expectation> expectations;
  if (!expect.empty()) {
    std::ifstream in(expect);
    if (!in) throw ConfigError("cannot open expectation file '" + expect + "'");
    expectations = parse_expectations(in);
  }

  auto rows = load_lexicon(o.lexicon, PhonemeInventory::arpabet());
  const auto lexicon_sha = sha256_file(o.lexicon);
  std::map<std::string, std::string> metadata{{"lexicon_sha256", lexicon_sha}};
  if (config) metadata["config_sha256"] = sha256_hex(serialize_config(*config));

  std::vector<SuiteReport> reports;
  for (const auto& s : suites) reports.push_back(run_suite(s, rows, metadata, !o.serial));

  const fs::path dir(out_dir);
  std::string grids;
  for (const auto& r : reports) {
    for (const auto& m : r.models) {
      if (!m.fit) {
        err << "model " << r.suite << "/" << m.name << " failed: " << m.error << '\n';
        continue;
      }
      for (Format f : formats)
        write_file_atomic(dir / r.suite / (safe_name(m.name) + std::string(format_extension(f))),
                          render_table(*m.fit, f));
    }
    grids += render_suite_grid(r);
  }
  write_file_atomic(dir / "summary.tsv", render_summary(reports));
  write_file_atomic(dir / "tables.txt", grids);

  int status = kExitOk;
  ordered_json results;
  ordered_json models = ordered_json::array();
  for (const auto& r : reports)
    for (const auto& m : r.models) {
      ordered_json mj;
      mj["suite"] = r.suite;
      mj["model"] = m.name;
      mj["orientation"] = orientation_name(r.orientation);
      mj["dependent"] = field_name(m.spec.dependent);
      ordered_json preds = ordered_json::array();
      for (Field f : m.spec.predictors) preds.push_back(field_name(f));
      mj["predictors"] = std::move(preds);
      if (m.fit) {
        mj["status"] = "ok";
        mj["n_rows_used"] = m.fit->n_rows_used;
        mj["n_rows_dropped_missing"] = m.fit->n_rows_dropped_missing;
        mj["dropped_columns"] = m.fit->dropped_columns;
      } else {
        mj["status"] = "failed";
        mj["error"] = m.error;
      }
      models.push_back(std::move(mj));
    }
  results["models"] = std::move(models);

  if (!expectations.empty()) {
    auto cmp = compare_to_expected(reports, expectations);
    auto text = render_comparison(cmp);
    write_file_atomic(dir / "comparison.txt", text);
    err << "expectations: passed " << cmp.passed() << ", failed " << cmp.failed() << ", skipped " << cmp.skipped()
        << '\n';
    for (const auto& c : cmp.checks)
      if (c.status == ExpectationCheck::Status::fail)
        err << "  mismatch: " << c.expectation.suite << " " << c.expectation.model << " " << c.expectation.term
            << " (" << c.observed << ")\n";
    results["expectations"] = {{"passed", cmp.passed()}, {"failed", cmp.failed()}, {"skipped", cmp.skipped()}};
    if (!cmp.ok()) status = kExitExpectations;
  }

  ordered_json inputs = ordered_json::array();
  inputs.push_back(input_entry("lexicon", o.lexicon));
  if (!expect.empty()) inputs.push_back(input_entry("expectations", expect));
  if (!o.config.empty()) inputs.push_back(input_entry("config", o.config));
  ordered_json settings;
  settings["suite"] = selection;
  ordered_json fmts = ordered_json::array();
  for (Format f : formats) fmts.push_back(format_name(f));
  settings["formats"] = std::move(fmts);
  settings["parallel"] = !o.serial;
  write_file_atomic(dir / "manifest.json",
                    make_manifest("suite", std::move(inputs), std::move(settings), std::move(results)).dump(2) + "\n");
  return status;
}

int cmd_report(const Options& o, std::ostream& out) {
  std::ifstream in(o.summary);
  if (!in) throw ConfigError("cannot open summary '" + o.summary + "'");
  auto rows = read_summary(in);
  if (o.values != "t" && o.values != "estimate") throw ConfigError("--values must be t or estimate");
  auto text = render_grid_from_summary(rows, o.values == "t");
  if (o.out.empty() || o.out == "-") out << text;
  else write_file_atomic(o.out, text);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phonemic bigram surprisal and psycholinguistic norm regressions", "phonosurp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);
  Options o;

  auto* validate = app.add_subcommand("validate-config", "Check a run config and the files it names");
  validate->add_option("--config", o.config, "Config file")->required();

  auto* ingest = app.add_subcommand("ingest", "Join dictionary, frequency and norm files into a lexicon");
  ingest->add_option("--config", o.config, "Config file")->required();
  ingest->add_option("--out", o.out, "Output lexicon (TSV)")->required();

  auto* surprisal = app.add_subcommand("surprisal", "Annotate a lexicon with average bigram surprisal");
  surprisal->add_option("--lexicon", o.lexicon, "Input lexicon")->required();
  surprisal->add_option("--out", o.out, "Annotated lexicon")->required();
  surprisal->add_option("--weighting", o.weighting, "token or type")->check(CLI::IsMember({"token", "type"}));
  surprisal->add_option("--model-dump", o.model_dump, "Write bigram counts and surprisals here");
  surprisal->add_option("--inventory", o.inventory, "Phoneme inventory file");
  surprisal->add_option("--config", o.config, "Take defaults from a config file");
  surprisal->add_flag("--boundaries", o.boundaries, "Add word-boundary bigrams");
  surprisal->add_flag("--add-one", o.add_one, "Add-one smoothing");
  surprisal->add_flag("--leave-one-out", o.leave_one_out, "Exclude each word's own tokens when scoring it");

  auto* fit = app.add_subcommand("fit", "Fit one OLS model");
  fit->add_option("--lexicon", o.lexicon, "Annotated lexicon")->required();
  fit->add_option("--dependent", o.dependent, "Dependent field")->required();
  fit->add_option("--predictors", o.predictors, "Comma-separated predictor fields")->required();
  fit->add_option("--categorical", o.categorical, "Comma-separated categorical predictors");
  fit->add_option("--out", o.out, "Report file (default: standard output)");
  fit->add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  fit->add_flag("--no-intercept", o.no_intercept, "Fit without an intercept");

  auto* suite = app.add_subcommand("suite", "Run the built-in model suites");
  suite->add_option("--lexicon", o.lexicon, "Annotated lexicon")->required();
  suite->add_option("--suite", o.suite,
                    "all, valence, emotions, humor, memory-valence, memory-emotions, memory-humor, humor-valence");
  suite->add_option("--expect", o.expect, "Expectation file of signs and significance tiers");
  suite->add_option("--out", o.out, "Output directory");
  suite->add_option("--formats", o.formats, "Comma-separated formats for per-model tables");
  suite->add_option("--config", o.config, "Take defaults from a config file");
  suite->add_flag("--serial", o.serial, "Fit models one at a time");

  auto* report = app.add_subcommand("report", "Render result grids from a suite summary");
  report->add_option("--summary", o.summary, "summary.tsv written by `suite`")->required();
  report->add_option("--values", o.values, "t or estimate")->check(CLI::IsMember({"t", "estimate"}));
  report->add_option("--out", o.out, "Output file (default: standard output)");

  std::vector<std::string> argv_store{"phonosurp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolkitVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate_config(o, out);
    if (ingest->parsed()) return cmd_ingest(o, err);
    if (surprisal->parsed()) return cmd_surprisal(o, err);
    if (fit->parsed()) return cmd_fit(o, out);
    if (suite->parsed()) return cmd_suite(o, err);
    if (report->parsed()) return cmd_report(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace phonosurp
