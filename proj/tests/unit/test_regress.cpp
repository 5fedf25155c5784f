#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "phonosurp/errors.hpp"
#include "phonosurp/regress.hpp"
#include "support/oracles.hpp"

using namespace phonosurp;

namespace {

DesignMatrix design(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                    std::vector<std::string> names) {
  DesignMatrix dm;
  dm.response = y;
  dm.column_names = std::move(names);
  dm.columns = Matrix(y.size(), 0);
  for (std::size_t c = 0; c < x.front().size(); ++c) {
    std::vector<double> col;
    for (const auto& r : x) col.push_back(r[c]);
    dm.columns.append_column(col);
  }
  dm.n_rows_used = y.size();
  return dm;
}

LexiconRow word(const std::string& w, double humor, double surprisal, double iconicity, const std::string& pos) {
  LexiconRow r{.word = w, .pronunciation = parse_transcription("K AE T"), .frequency = 1};
  set_numeric(r, Field::Humor, humor);
  set_numeric(r, Field::Average_Surprisal, surprisal);
  set_numeric(r, Field::Iconicity_Rating, iconicity);
  set_category(r, Field::PoS, pos);
  return r;
}

std::vector<LexiconRow> synthetic_lexicon(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> noise(0, 0.3);
  std::uniform_real_distribution<double> s(1, 6), ic(-2, 4);
  const char* tags[] = {"Adjective", "Noun", "Verb"};
  std::vector<LexiconRow> out;
  for (std::size_t i = 0; i < n; ++i) {
    double a = s(rng), b = ic(rng);
    std::string pos = tags[i % 3];
    double h = 2.5 + 0.2 * a - 0.1 * b + (pos == "Verb" ? 0.3 : 0.0) + noise(rng);
    h = std::clamp(h, 1.0, 5.0);
    out.push_back(word("w" + std::to_string(1000 + i), h, a, b, pos));
  }
  return out;
}

ModelSpec humor_spec() {
  return ModelSpec{Field::Humor,
                   {Field::Average_Surprisal, Field::Iconicity_Rating, Field::PoS},
                   {Field::PoS},
                   true,
                   {}};
}

}  // namespace

TEST_CASE("an exact line is recovered") {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 6; ++i) {
    x.push_back({1.0, double(i)});
    y.push_back(1.0 + 2.0 * i);
  }
  auto fit = ols_fit(design(x, y, {kInterceptName, "x"}));
  CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.residual_df == 4);
}

TEST_CASE("a constant response is rejected") {
  std::vector<LexiconRow> lex;
  for (int i = 0; i < 5; ++i) lex.push_back(word("w" + std::to_string(i), 3.0, 1.0 + i, 0.5 * i, "Noun"));
  CHECK_THROWS_AS(simple_fit(Field::Humor, Field::Average_Surprisal, lex), DegenerateResponseError);
}

TEST_CASE("fits agree with a high-precision normal-equations reference") {
  std::mt19937 rng(2024);
  std::normal_distribution<double> z(0, 1);
  const std::size_t n = 200;
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < n; ++i) {
    double a = z(rng), b = 10 + 3 * z(rng), c = i % 4 == 0 ? 1.0 : 0.0;
    x.push_back({1.0, a, b, c});
    y.push_back(0.5 + 1.5 * a - 0.2 * b + 0.8 * c + z(rng));
  }
  auto fit = ols_fit(design(x, y, {kInterceptName, "a", "b", "c"}));
  auto ref = oracle::ols(x, y);
  CHECK(fit.residual_df == ref.residual_df);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::fabs(fit.coefficients[k] - ref.beta[k]) <= 1e-8);
    CHECK(std::fabs(fit.std_errors[k] - ref.se[k]) <= 1e-8);
    CHECK(std::fabs(fit.t_statistics[k] - ref.t[k]) <= 1e-8);
    CHECK(std::fabs(fit.p_values[k] - ref.p[k]) <= 1e-8);
  }

  // Residuals are orthogonal to every column.
  for (std::size_t k = 0; k < 4; ++k) {
    double dot = 0, scale = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += x[i][k] * fit.residuals[i];
      scale += std::fabs(x[i][k]);
    }
    CHECK(std::fabs(dot) <= 1e-9 * scale);
  }

  // Rescaling a predictor rescales its coefficient and leaves t alone.
  auto scaled = x;
  for (auto& r : scaled) r[1] *= 1000.0;
  auto fit2 = ols_fit(design(scaled, y, {kInterceptName, "a", "b", "c"}));
  CHECK(fit2.coefficients[1] * 1000.0 == doctest::Approx(fit.coefficients[1]).epsilon(1e-10));
  CHECK(fit2.t_statistics[1] == doctest::Approx(fit.t_statistics[1]).epsilon(1e-10));
  CHECK(fit2.r_squared == doctest::Approx(fit.r_squared).epsilon(1e-12));
}

TEST_CASE("design matrix: listwise deletion, column order and dummy names") {
  std::mt19937 rng(1);
  auto lex = synthetic_lexicon(rng, 30);
  lex[4].iconicity.reset();
  lex[9].pos.reset();
  auto dm = build_design_matrix(lex, humor_spec());
  CHECK(dm.n_rows_used == 28);
  CHECK(dm.n_rows_dropped_missing == 2);
  CHECK(dm.column_names ==
        std::vector<std::string>{kInterceptName, "Average_Surprisal", "Iconicity_Rating", "PoS_Noun", "PoS_Verb"});
  CHECK(std::is_sorted(dm.row_words.begin(), dm.row_words.end()));
}

TEST_CASE("the choice of reference level changes only the dummy parameterization") {
  std::mt19937 rng(4);
  auto lex = synthetic_lexicon(rng, 90);
  auto base = ols_fit(build_design_matrix(lex, humor_spec()));
  auto spec = humor_spec();
  spec.reference_levels[Field::PoS] = "Verb";
  auto alt = ols_fit(build_design_matrix(lex, spec));
  CHECK(alt.column_names.back() == "PoS_Noun");
  CHECK(alt.r_squared == doctest::Approx(base.r_squared).epsilon(1e-12));
  for (std::size_t k : {1u, 2u}) {
    CHECK(alt.coefficients[k] == doctest::Approx(base.coefficients[k]).epsilon(1e-10));
    CHECK(alt.t_statistics[k] == doctest::Approx(base.t_statistics[k]).epsilon(1e-10));
  }
  for (std::size_t i = 0; i < base.fitted.size(); ++i)
    CHECK(alt.fitted[i] == doctest::Approx(base.fitted[i]).epsilon(1e-10));
  // Verb vs Adjective is the negated Adjective vs Verb contrast.
  CHECK(alt.coefficients[*alt.index_of("PoS_Adjective")] ==
        doctest::Approx(-base.coefficients[*base.index_of("PoS_Verb")]).epsilon(1e-10));
}

TEST_CASE("row order does not affect the fit") {
  std::mt19937 rng(8);
  auto lex = synthetic_lexicon(rng, 40);
  auto a = ols_fit(build_design_matrix(lex, humor_spec()));
  std::shuffle(lex.begin(), lex.end(), rng);
  auto b = ols_fit(build_design_matrix(lex, humor_spec()));
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.p_values == b.p_values);
}

TEST_CASE("zero-variance and aliased columns are dropped and reported") {
  std::mt19937 rng(6);
  auto lex = synthetic_lexicon(rng, 30);
  for (auto& r : lex) set_numeric(r, Field::Iconicity_Rating, 2.0);
  auto dm = build_design_matrix(lex, humor_spec());
  CHECK(dm.dropped_columns == std::vector<std::string>{"Iconicity_Rating"});

  std::vector<std::vector<double>> x;
  std::vector<double> y;
  std::normal_distribution<double> z(0, 1);
  for (int i = 0; i < 20; ++i) {
    double a = z(rng);
    x.push_back({1.0, a, 2.0 * a - 1.0});
    y.push_back(a + z(rng));
  }
  auto fit = ols_fit(design(x, y, {kInterceptName, "a", "a2"}));
  CHECK(fit.column_names == std::vector<std::string>{kInterceptName, "a"});
  CHECK(fit.dropped_columns == std::vector<std::string>{"a2"});
  CHECK(fit.residual_df == 18);
}

TEST_CASE("model specification and size errors") {
  std::mt19937 rng(2);
  auto lex = synthetic_lexicon(rng, 10);
  ModelSpec dup{Field::Humor, {Field::Average_Surprisal, Field::Average_Surprisal}, {}, true, {}};
  CHECK_THROWS_AS(build_design_matrix(lex, dup), ConfigError);
  ModelSpec self{Field::Humor, {Field::Humor}, {}, true, {}};
  CHECK_THROWS_AS(build_design_matrix(lex, self), ConfigError);
  ModelSpec undeclared{Field::Humor, {Field::PoS}, {}, true, {}};
  CHECK_THROWS_AS(build_design_matrix(lex, undeclared), ConfigError);

  std::vector<LexiconRow> two(lex.begin(), lex.begin() + 2);
  CHECK_THROWS_AS(simple_fit(Field::Humor, Field::Average_Surprisal, two), UnderdeterminedModelError);
  std::vector<LexiconRow> four(lex.begin(), lex.begin() + 4);
  CHECK_THROWS_AS(ols_fit(build_design_matrix(four, humor_spec())), UnderdeterminedModelError);
}

TEST_CASE("a perfect fit with zero standard error") {
  std::vector<std::vector<double>> x = {{1, 0}, {1, 1}, {1, 2}, {1, 3}};
  std::vector<double> y = {0, 0, 0, 1e-300};
  auto dm = design(x, y, {kInterceptName, "x"});
  auto fit = ols_fit(dm);
  CHECK(fit.p_values.size() == 2);
  for (double p : fit.p_values) CHECK((std::isnan(p) || (p >= 0 && p <= 1)));
}
