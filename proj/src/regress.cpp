#include "phonosurp/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phonosurp/errors.hpp"
#include "phonosurp/student_t.hpp"

namespace phonosurp {

namespace {

constexpr double kAliasTolerance = 1e-7;

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double norm2(std::span<const double> v) {
  // Scaled to avoid overflow on large columns.
  double scale = 0.0, ssq = 1.0;
  for (double x : v) {
    if (x == 0.0) continue;
    const double ax = std::fabs(x);
    if (scale < ax) {
      ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
      scale = ax;
    } else {
      ssq += (ax / scale) * (ax / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

}  // namespace

void Matrix::append_column(std::span<const double> values) {
  if (cols_ == 0 && rows_ == 0) rows_ = values.size();
  if (values.size() != rows_) throw Error("column length does not match matrix rows");
  data_.insert(data_.end(), values.begin(), values.end());
  ++cols_;
}

void Matrix::remove_column(std::size_t c) {
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(c * rows_);
  data_.erase(first, first + static_cast<std::ptrdiff_t>(rows_));
  --cols_;
}

void ModelSpec::validate() const {
  std::set<Field> seen;
  for (Field f : predictors) {
    if (f == dependent)
      throw ConfigError(std::string(field_name(f)) + " is both the dependent variable and a predictor");
    if (!seen.insert(f).second) throw ConfigError("duplicate predictor " + std::string(field_name(f)));
    if (is_categorical(f) != (categorical.count(f) > 0))
      throw ConfigError(std::string(field_name(f)) +
                        (is_categorical(f) ? " must be declared categorical" : " is not categorical"));
  }
  for (Field f : categorical)
    if (!seen.count(f))
      throw ConfigError("categorical field " + std::string(field_name(f)) + " is not a predictor");
  if (is_categorical(dependent))
    throw ConfigError("dependent variable " + std::string(field_name(dependent)) + " is categorical");
}

DesignMatrix build_design_matrix(std::span<const LexiconRow> lexicon, const ModelSpec& spec) {
  spec.validate();

  std::vector<const LexiconRow*> kept;
  for (const auto& row : lexicon) {
    bool complete = row.has(spec.dependent);
    for (Field f : spec.predictors) complete = complete && row.has(f);
    if (complete) kept.push_back(&row);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const LexiconRow* a, const LexiconRow* b) { return a->word < b->word; });

  DesignMatrix dm;
  dm.has_intercept = spec.include_intercept;
  dm.n_rows_used = kept.size();
  dm.n_rows_dropped_missing = lexicon.size() - kept.size();
  dm.columns = Matrix(kept.size(), 0);
  for (const auto* row : kept) {
    dm.row_words.push_back(row->word);
    dm.response.push_back(*row->numeric(spec.dependent));
  }

  std::vector<double> values(kept.size());
  if (spec.include_intercept) {
    std::fill(values.begin(), values.end(), 1.0);
    dm.columns.append_column(values);
    dm.column_names.emplace_back(kInterceptName);
  }
  auto add_column = [&](std::string name) {
    if (!values.empty() && constant(values)) {
      dm.dropped_columns.push_back(std::move(name));
      return;
    }
    dm.columns.append_column(values);
    dm.column_names.push_back(std::move(name));
  };

  for (Field f : spec.predictors) {
    if (is_categorical(f)) continue;
    for (std::size_t i = 0; i < kept.size(); ++i) values[i] = *kept[i]->numeric(f);
    add_column(std::string(field_name(f)));
  }
  for (Field f : spec.predictors) {
    if (!is_categorical(f)) continue;
    std::set<std::string> levels;
    for (const auto* row : kept) levels.insert(*row->category(f));
    if (levels.empty()) continue;
    std::string reference = *levels.begin();
    if (auto it = spec.reference_levels.find(f); it != spec.reference_levels.end() && levels.count(it->second))
      reference = it->second;
    for (const auto& level : levels) {
      if (level == reference) continue;
      for (std::size_t i = 0; i < kept.size(); ++i) values[i] = *kept[i]->category(f) == level ? 1.0 : 0.0;
      add_column(std::string(field_name(f)) + "_" + level);
    }
  }

  if (dm.n_rows_used < dm.column_names.size() || dm.n_rows_used == 0)
    throw UnderdeterminedModelError(std::to_string(dm.n_rows_used) + " complete rows for " +
                                    std::to_string(dm.column_names.size()) + " columns");
  if (constant(dm.response))
    throw DegenerateResponseError("dependent variable " + std::string(field_name(spec.dependent)) +
                                  " is constant over the retained rows");
  return dm;
}

std::optional<std::size_t> FitResult::index_of(const std::string& term) const {
  auto it = std::find(column_names.begin(), column_names.end(), term);
  if (it == column_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - column_names.begin());
}

FitResult ols_fit(const DesignMatrix& dm) {
  const Matrix& x = dm.columns;
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (dm.response.size() != n || dm.column_names.size() != p)
    throw Error("design matrix dimensions are inconsistent");
  if (p == 0) throw UnderdeterminedModelError("design matrix has no columns");

  Matrix a = x;
  std::vector<double> qty = dm.response;
  std::vector<std::size_t> kept;
  std::vector<std::size_t> aliased;
  std::vector<double> v(n);

  std::size_t rank = 0;
  for (std::size_t j = 0; j < p && rank < n; ++j) {
    auto col = a.column(j);
    const double original = norm2(x.column(j));
    const double remaining = norm2(col.subspan(rank));
    if (original == 0.0 || remaining <= kAliasTolerance * original) {
      aliased.push_back(j);
      continue;
    }
    // Householder reflector mapping col[rank:] onto alpha * e1.
    const double alpha = col[rank] > 0.0 ? -remaining : remaining;
    const std::size_t len = n - rank;
    for (std::size_t i = 0; i < len; ++i) v[i] = col[rank + i];
    v[0] -= alpha;
    double vtv = 0.0;
    for (std::size_t i = 0; i < len; ++i) vtv += v[i] * v[i];
    auto reflect = [&](std::span<double> target) {
      double dot = 0.0;
      for (std::size_t i = 0; i < len; ++i) dot += v[i] * target[rank + i];
      const double s = 2.0 * dot / vtv;
      for (std::size_t i = 0; i < len; ++i) target[rank + i] -= s * v[i];
    };
    for (std::size_t k = j + 1; k < p; ++k) reflect(a.column(k));
    reflect(qty);
    col[rank] = alpha;
    for (std::size_t i = rank + 1; i < n; ++i) col[i] = 0.0;
    kept.push_back(j);
    ++rank;
  }
  for (std::size_t j = kept.empty() ? 0 : kept.back() + 1; j < p; ++j)
    if (std::find(aliased.begin(), aliased.end(), j) == aliased.end()) aliased.push_back(j);
  std::sort(aliased.begin(), aliased.end());

  if (rank == 0) throw UnderdeterminedModelError("every design column is aliased");
  if (n <= rank)
    throw UnderdeterminedModelError("no residual degrees of freedom (" + std::to_string(n) + " rows, " +
                                    std::to_string(rank) + " estimable columns)");

  // R is upper triangular in the kept columns: R(i, k) = a(i, kept[k]).
  auto r_at = [&](std::size_t i, std::size_t k) { return a(i, kept[k]); };
  std::vector<double> beta(rank);
  for (std::size_t k = rank; k-- > 0;) {
    double s = qty[k];
    for (std::size_t m = k + 1; m < rank; ++m) s -= r_at(k, m) * beta[m];
    beta[k] = s / r_at(k, k);
  }

  // Inverse of R, column by column (upper triangular).
  std::vector<double> rinv(rank * rank, 0.0);
  auto ri = [&](std::size_t i, std::size_t k) -> double& { return rinv[k * rank + i]; };
  for (std::size_t k = 0; k < rank; ++k) {
    ri(k, k) = 1.0 / r_at(k, k);
    for (std::size_t i = k; i-- > 0;) {
      double s = 0.0;
      for (std::size_t m = i + 1; m <= k; ++m) s += r_at(i, m) * ri(m, k);
      ri(i, k) = -s / r_at(i, i);
    }
  }

  FitResult fit;
  fit.n_rows_used = dm.n_rows_used;
  fit.n_rows_dropped_missing = dm.n_rows_dropped_missing;
  fit.dropped_columns = dm.dropped_columns;
  for (std::size_t j : aliased) fit.dropped_columns.push_back(dm.column_names[j]);

  fit.fitted.assign(n, 0.0);
  for (std::size_t k = 0; k < rank; ++k) {
    auto col = x.column(kept[k]);
    for (std::size_t i = 0; i < n; ++i) fit.fitted[i] += col[i] * beta[k];
  }
  fit.residuals.resize(n);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = dm.response[i] - fit.fitted[i];
    rss += fit.residuals[i] * fit.residuals[i];
  }
  fit.residual_df = static_cast<double>(n - rank);
  fit.residual_variance = rss / fit.residual_df;

  double tss = 0.0;
  const double mean =
      dm.has_intercept ? std::accumulate(dm.response.begin(), dm.response.end(), 0.0) / static_cast<double>(n) : 0.0;
  for (double y : dm.response) tss += (y - mean) * (y - mean);
  fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : std::numeric_limits<double>::quiet_NaN();

  const double sigma = std::sqrt(fit.residual_variance);
  for (std::size_t k = 0; k < rank; ++k) {
    double row_ss = 0.0;
    for (std::size_t m = k; m < rank; ++m) row_ss += ri(k, m) * ri(k, m);
    const double se = sigma * std::sqrt(row_ss);
    double t = std::numeric_limits<double>::quiet_NaN();
    double pv = std::numeric_limits<double>::quiet_NaN();
    if (se > 0.0) {
      t = beta[k] / se;
      pv = student_t_two_sided_p(t, fit.residual_df);
    } else if (beta[k] != 0.0) {
      t = std::copysign(std::numeric_limits<double>::infinity(), beta[k]);
      pv = 0.0;
    }
    fit.column_names.push_back(dm.column_names[kept[k]]);
    fit.coefficients.push_back(beta[k]);
    fit.std_errors.push_back(se);
    fit.t_statistics.push_back(t);
    fit.p_values.push_back(pv);
  }
  return fit;
}

FitResult simple_fit(Field y, Field x, std::span<const LexiconRow> lexicon) {
  ModelSpec spec{y, {x}, {}, true, {}};
  if (is_categorical(x)) spec.categorical.insert(x);
  auto dm = build_design_matrix(lexicon, spec);
  if (dm.n_rows_used < 3)
    throw UnderdeterminedModelError("simple regression needs at least 3 complete rows");
  return ols_fit(dm);
}

}  // namespace phonosurp
