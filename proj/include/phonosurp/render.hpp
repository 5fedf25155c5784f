#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phonosurp/regress.hpp"
#include "phonosurp/suites.hpp"

namespace phonosurp {

enum class Format { text, csv, json };

std::string_view format_name(Format f);
Format format_from_name(std::string_view name);
std::string_view format_extension(Format f);

// "***" p < 0.001, "**" p < 0.01, "*" p < 0.05, "." p < 0.1, "" otherwise.
std::string significance_stars(double p);

// Fixed-point, locale independent; NaN renders as NA and infinities as Inf/-Inf.
// Values that round to zero never carry a minus sign.
std::string format_fixed(double v, int precision = 3);

// One fitted model as a table: term, estimate, std_error, t_value, p_value, stars.
// Text uses `precision` decimals; CSV and JSON carry full precision.
std::string render_table(const FitResult& fit, Format format, int precision = 3);

// Combined long-format summary of every model in the reports (tab separated).
std::string render_summary(std::span<const SuiteReport> reports);

// Terms down, models across, each cell "value" + stars, in the layout of the
// published result tables. `use_t` selects t-statistics instead of estimates.
std::string render_suite_grid(const SuiteReport& report, bool use_t = true, int precision = 3);

struct SummaryRow {
  std::string suite, model, status, term;
  double estimate, std_error, t_value, p_value;
};

// Reads back the tab-separated summary written by render_summary.
std::vector<SummaryRow> read_summary(std::istream& in);
std::string render_grid_from_summary(std::span<const SummaryRow> rows, bool use_t = true, int precision = 3);

}  // namespace phonosurp
