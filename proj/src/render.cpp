#include "phonosurp/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "phonosurp/delimited.hpp"
#include "phonosurp/errors.hpp"

namespace phonosurp {

namespace {

std::string full(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  return format_double(v);
}

nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string clean(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return s;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string text_table(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> widths;
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (widths.size() <= c) widths.push_back(0);
      widths[c] = std::max(widths[c], row[c].size());
    }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += c == 0 ? pad_right(row[c], widths[c]) : pad_left(row[c], widths[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

std::optional<double> parse_full(const std::string& s) {
  if (s == "NA") return std::numeric_limits<double>::quiet_NaN();
  if (s == "Inf") return std::numeric_limits<double>::infinity();
  if (s == "-Inf") return -std::numeric_limits<double>::infinity();
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<SummaryRow> to_summary_rows(const SuiteReport& report) {
  std::vector<SummaryRow> rows;
  const double na = std::numeric_limits<double>::quiet_NaN();
  for (const auto& m : report.models) {
    if (!m.fit) {
      rows.push_back({report.suite, m.name, "failed", "NA", na, na, na, na});
      continue;
    }
    const auto& f = *m.fit;
    for (std::size_t i = 0; i < f.column_names.size(); ++i)
      rows.push_back({report.suite, m.name, "ok", f.column_names[i], f.coefficients[i], f.std_errors[i],
                      f.t_statistics[i], f.p_values[i]});
  }
  return rows;
}

}  // namespace

std::string_view format_name(Format f) {
  switch (f) {
    case Format::text: return "text";
    case Format::csv: return "csv";
    case Format::json: return "json";
  }
  return "text";
}

Format format_from_name(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected text, csv or json)");
}

std::string_view format_extension(Format f) {
  switch (f) {
    case Format::text: return ".txt";
    case Format::csv: return ".csv";
    case Format::json: return ".json";
  }
  return ".txt";
}

std::string significance_stars(double p) {
  if (std::isnan(p)) return "";
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  if (p < 0.1) return ".";
  return "";
}

std::string format_fixed(double v, int precision) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  if (ec != std::errc()) throw Error("number too large to render");
  std::string s(buf, ptr);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string render_table(const FitResult& fit, Format format, int precision) {
  const std::size_t k = fit.column_names.size();
  if (format == Format::csv) {
    std::string out = "term,estimate,std_error,t_value,p_value,stars\n";
    for (std::size_t i = 0; i < k; ++i) {
      out += "\"" + fit.column_names[i] + "\"," + full(fit.coefficients[i]) + "," + full(fit.std_errors[i]) + "," +
             full(fit.t_statistics[i]) + "," + full(fit.p_values[i]) + "," + significance_stars(fit.p_values[i]) +
             "\n";
    }
    return out;
  }
  if (format == Format::json) {
    nlohmann::ordered_json j;
    j["terms"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < k; ++i) {
      nlohmann::ordered_json t;
      t["term"] = fit.column_names[i];
      t["estimate"] = number_or_null(fit.coefficients[i]);
      t["std_error"] = number_or_null(fit.std_errors[i]);
      t["t_value"] = number_or_null(fit.t_statistics[i]);
      t["p_value"] = number_or_null(fit.p_values[i]);
      t["stars"] = significance_stars(fit.p_values[i]);
      j["terms"].push_back(std::move(t));
    }
    j["n_rows_used"] = fit.n_rows_used;
    j["n_rows_dropped_missing"] = fit.n_rows_dropped_missing;
    j["residual_df"] = fit.residual_df;
    j["residual_variance"] = number_or_null(fit.residual_variance);
    j["r_squared"] = number_or_null(fit.r_squared);
    j["dropped_columns"] = fit.dropped_columns;
    return j.dump(2) + "\n";
  }

  std::vector<std::vector<std::string>> cells;
  cells.push_back({"term", "estimate", "std_error", "t_value", "p_value", "   "});
  for (std::size_t i = 0; i < k; ++i)
    cells.push_back({fit.column_names[i], format_fixed(fit.coefficients[i], precision),
                     format_fixed(fit.std_errors[i], precision), format_fixed(fit.t_statistics[i], precision),
                     format_fixed(fit.p_values[i], precision), pad_right(significance_stars(fit.p_values[i]), 3)});
  std::string out = text_table(cells);
  out += "---\n";
  out += "n = " + std::to_string(fit.n_rows_used) + " (" + std::to_string(fit.n_rows_dropped_missing) +
         " dropped for missing data), residual df = " + format_fixed(fit.residual_df, 0) +
         ", R^2 = " + format_fixed(fit.r_squared, precision) + "\n";
  if (!fit.dropped_columns.empty()) {
    out += "dropped columns:";
    for (const auto& c : fit.dropped_columns) out += " " + c;
    out += "\n";
  }
  out += "*** p < 0.001, ** p < 0.01, * p < 0.05, . p < 0.1\n";
  return out;
}

std::string render_summary(std::span<const SuiteReport> reports) {
  std::ostringstream out;
  out << "suite\tmodel\tstatus\tn_used\tn_dropped_missing\tresidual_df\tr_squared\tterm\testimate\tstd_error\t"
         "t_value\tp_value\tstars\n";
  for (const auto& report : reports) {
    for (const auto& m : report.models) {
      if (!m.fit) {
        out << report.suite << '\t' << m.name << "\tfailed: " << clean(m.error)
            << "\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\t\n";
        continue;
      }
      const auto& f = *m.fit;
      for (std::size_t i = 0; i < f.column_names.size(); ++i) {
        out << report.suite << '\t' << m.name << "\tok\t" << f.n_rows_used << '\t' << f.n_rows_dropped_missing << '\t'
            << full(f.residual_df) << '\t' << full(f.r_squared) << '\t' << f.column_names[i] << '\t'
            << full(f.coefficients[i]) << '\t' << full(f.std_errors[i]) << '\t' << full(f.t_statistics[i]) << '\t'
            << full(f.p_values[i]) << '\t' << significance_stars(f.p_values[i]) << '\n';
      }
    }
  }
  return out.str();
}

std::vector<SummaryRow> read_summary(std::istream& in) {
  DelimitedReader reader(in, '\t');
  const char* names[] = {"suite", "model", "status", "term", "estimate", "std_error", "t_value", "p_value"};
  std::vector<std::size_t> cols;
  for (const char* n : names) cols.push_back(reader.require_column(n));
  std::vector<SummaryRow> rows;
  std::vector<std::string> cells;
  while (reader.next(cells)) {
    if (cells.size() < reader.header().size()) throw RowError("short summary row", reader.line());
    SummaryRow row{cells[cols[0]], cells[cols[1]], cells[cols[2]], cells[cols[3]], 0, 0, 0, 0};
    double* targets[] = {&row.estimate, &row.std_error, &row.t_value, &row.p_value};
    for (std::size_t i = 0; i < 4; ++i) {
      auto v = parse_full(cells[cols[4 + i]]);
      if (!v) throw RowError("bad number '" + cells[cols[4 + i]] + "'", reader.line());
      *targets[i] = *v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_grid_from_summary(std::span<const SummaryRow> rows, bool use_t, int precision) {
  std::vector<std::string> suites;
  for (const auto& r : rows)
    if (std::find(suites.begin(), suites.end(), r.suite) == suites.end()) suites.push_back(r.suite);

  std::string out;
  for (const auto& suite : suites) {
    std::vector<std::string> models;
    std::vector<std::string> terms;
    std::vector<std::string> pos_terms;
    std::map<std::pair<std::string, std::string>, std::string> cell;
    for (const auto& r : rows) {
      if (r.suite != suite) continue;
      if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
      if (r.status != "ok") continue;
      auto& bucket = r.term.starts_with("PoS_") ? pos_terms : terms;
      if (std::find(bucket.begin(), bucket.end(), r.term) == bucket.end()) bucket.push_back(r.term);
      cell[{r.term, r.model}] =
          format_fixed(use_t ? r.t_value : r.estimate, precision) + pad_right(significance_stars(r.p_value), 3);
    }
    std::sort(pos_terms.begin(), pos_terms.end());
    terms.insert(terms.end(), pos_terms.begin(), pos_terms.end());

    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{"Variable"};
    header.insert(header.end(), models.begin(), models.end());
    table.push_back(header);
    for (const auto& t : terms) {
      std::vector<std::string> line{t};
      for (const auto& m : models) {
        auto it = cell.find({t, m});
        line.push_back(it == cell.end() ? "" : it->second);
      }
      table.push_back(std::move(line));
    }
    out += "== " + suite + " (" + (use_t ? "t values" : "estimates") + ")\n";
    out += text_table(table);
    for (const auto& m : models) {
      bool failed = std::any_of(rows.begin(), rows.end(), [&](const SummaryRow& r) {
        return r.suite == suite && r.model == m && r.status != "ok";
      });
      if (failed) out += "model " + m + " failed\n";
    }
    out += "\n";
  }
  return out;
}

std::string render_suite_grid(const SuiteReport& report, bool use_t, int precision) {
  auto rows = to_summary_rows(report);
  return render_grid_from_summary(rows, use_t, precision);
}

}  // namespace phonosurp
