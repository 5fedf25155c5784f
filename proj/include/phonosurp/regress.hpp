#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "phonosurp/lexicon.hpp"

namespace phonosurp {

// Dense column-major matrix; just enough for design matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }
  std::span<double> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const double> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  void append_column(std::span<const double> values);
  void remove_column(std::size_t c);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct ModelSpec {
  Field dependent;
  std::vector<Field> predictors;
  // Predictors expanded into indicator columns (only PoS is categorical).
  std::set<Field> categorical;
  bool include_intercept = true;
  // Optional reference level per categorical predictor. When absent, or not
  // present in the retained sample, the alphabetically first level is used.
  std::map<Field, std::string> reference_levels;

  // Throws ConfigError on a duplicate predictor, a dependent listed as a
  // predictor, or a categorical/numeric mismatch.
  void validate() const;
};

struct DesignMatrix {
  std::vector<double> response;
  // Intercept first, then numeric predictors in ModelSpec order, then indicator columns.
  std::vector<std::string> column_names;
  Matrix columns;
  std::vector<std::string> row_words;
  std::size_t n_rows_used = 0;
  std::size_t n_rows_dropped_missing = 0;
  // Columns removed for zero variance (and later, by the fit, for aliasing).
  std::vector<std::string> dropped_columns;
  bool has_intercept = true;
};

inline constexpr const char* kInterceptName = "(Intercept)";

// Listwise deletion, indicator coding and zero-variance pruning. Retained rows
// are ordered by word so the matrix does not depend on input row order.
DesignMatrix build_design_matrix(std::span<const LexiconRow> lexicon, const ModelSpec& spec);

struct FitResult {
  std::vector<std::string> column_names;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_statistics;
  std::vector<double> p_values;
  double residual_df = 0;
  double residual_variance = 0;
  double r_squared = 0;
  std::size_t n_rows_used = 0;
  std::size_t n_rows_dropped_missing = 0;
  std::vector<std::string> dropped_columns;
  std::vector<double> fitted;
  std::vector<double> residuals;

  std::optional<std::size_t> index_of(const std::string& term) const;
};

// Householder QR in column order; a column whose remaining norm falls below
// 1e-7 of its original norm is aliased, dropped and the fit continues.
FitResult ols_fit(const DesignMatrix& dm);

// One-predictor model y ~ x with intercept.
FitResult simple_fit(Field y, Field x, std::span<const LexiconRow> lexicon);

}  // namespace phonosurp
