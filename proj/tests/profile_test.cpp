#include "modelsel/error.hpp"
#include "modelsel/profile.hpp"
#include "modelsel/table.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

namespace ms = modelsel;
using testsupport::fixture;
using testsupport::slurp;

namespace {

std::vector<ms::Cell> nums(std::initializer_list<double> xs) {
  std::vector<ms::Cell> out;
  for (double x : xs) out.emplace_back(x);
  return out;
}

// Splits an unquoted CSV into rows of raw fields.
std::vector<std::vector<std::string>> naive_split(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

std::string join_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
    out += "\n";
  }
  return out;
}

} // namespace

// ---- CSV ----------------------------------------------------------------------

TEST(Csv, TwoLineFile) {
  auto t = ms::load_table("a,b\n1,2");
  EXPECT_EQ(t.column_names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(t.n_rows(), 1u);
  EXPECT_EQ(std::get<double>(t.column(1)[0]), 2.0);
}

TEST(Csv, RaggedRowIsSyntaxError) { EXPECT_THROW(ms::load_table("a,b\n1"), ms::SyntaxError); }

TEST(Csv, EmptyInputIsSyntaxError) { EXPECT_THROW(ms::load_table(""), ms::SyntaxError); }

TEST(Csv, InvalidUtf8IsIoError) { EXPECT_THROW(ms::load_table("a\n\xff\xfe\n"), ms::IoError); }

TEST(Csv, QuotedFieldsWithDelimitersQuotesAndNewlines) {
  auto t = ms::load_table("name,note\n\"Smith, J\",\"said \"\"hi\"\"\nthen left\"\n");
  ASSERT_EQ(t.n_rows(), 1u);
  EXPECT_EQ(std::get<std::string>(t.column(0)[0]), "Smith, J");
  EXPECT_EQ(std::get<std::string>(t.column(1)[0]), "said \"hi\"\nthen left");
}

TEST(Csv, CrlfLineEndings) {
  auto t = ms::load_table("a,b\r\n1,x\r\n2,y\r\n");
  EXPECT_EQ(t.n_rows(), 2u);
  EXPECT_EQ(std::get<std::string>(t.column(1)[1]), "y");
}

TEST(Csv, NullSpellings) {
  auto t = ms::load_table("a,b\n,1\nNA,2\nnan,3\nNULL,4\nna,5\n3,6\n");
  ASSERT_EQ(t.n_rows(), 6u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_TRUE(ms::is_null(t.column(0)[i])) << i;
  EXPECT_EQ(std::get<double>(t.column(0)[5]), 3.0);
}

TEST(Csv, NoHeaderGivesSyntheticNames) {
  auto t = ms::load_table("1;2\n3;4\n", {';', false});
  EXPECT_EQ(t.column_names(), (std::vector<std::string>{"col_0", "col_1"}));
  EXPECT_EQ(t.n_rows(), 2u);
}

TEST(Csv, MissingFileIsIoError) {
  EXPECT_THROW(ms::load_table_file("/nonexistent/file.csv"), ms::IoError);
}

TEST(Csv, HeartFixtureShape) {
  auto t = ms::load_table_file(fixture("heart_failure_clinical_records_dataset.csv").string());
  EXPECT_EQ(t.n_rows(), 299u);
  EXPECT_EQ(t.n_columns(), 13u);
}

// ---- type inference --------------------------------------------------------

TEST(Infer, ZeroOneIsBinary) {
  EXPECT_EQ(ms::infer_column_type(nums({0, 1, 1, 0})), ms::ColumnType::BinaryCategorical);
}

TEST(Infer, YesNoIsBinary) {
  std::vector<ms::Cell> v{std::string("yes"), std::string("no"), std::monostate{}, std::string("yes")};
  EXPECT_EQ(ms::infer_column_type(v), ms::ColumnType::BinaryCategorical);
}

TEST(Infer, RealsAreNumerical) {
  EXPECT_EQ(ms::infer_column_type(nums({1.2, 3.4, 5.6})), ms::ColumnType::Numerical);
}

TEST(Infer, ThousandDistinctStringsAreText) {
  std::vector<ms::Cell> v;
  for (int i = 0; i < 1000; ++i) v.emplace_back("s" + std::to_string(i));
  EXPECT_EQ(ms::infer_column_type(v), ms::ColumnType::Text);
}

TEST(Infer, SixLevelsInLargeColumnAreCategorical) {
  std::vector<ms::Cell> v;
  for (int i = 0; i < 100000; ++i) v.emplace_back("level" + std::to_string(i % 6));
  EXPECT_EQ(ms::infer_column_type(v), ms::ColumnType::Categorical);
}

TEST(Infer, CategoricalCutoffScalesWithRows) {
  // 30 distinct labels: Text at 100 rows (cutoff 20), Categorical at 1000 rows (cutoff 50).
  auto column = [](int rows) {
    std::vector<ms::Cell> v;
    for (int i = 0; i < rows; ++i) v.emplace_back("c" + std::to_string(i % 30));
    return v;
  };
  EXPECT_EQ(ms::infer_column_type(column(100)), ms::ColumnType::Text);
  EXPECT_EQ(ms::infer_column_type(column(1000)), ms::ColumnType::Categorical);
}

TEST(Infer, AllNullIsDomainError) {
  std::vector<ms::Cell> v(3);
  EXPECT_THROW(ms::infer_column_type(v), ms::DomainError);
}

TEST(Quantile, MatchesOracle) {
  std::vector<double> xs{7, 1, 3, 9, 4};
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  for (double q : {0.0, 0.25, 0.5, 0.75, 1.0})
    EXPECT_DOUBLE_EQ(ms::quantile_sorted(sorted, q), testsupport::oracle_quantile(xs, q)) << q;
}

// ---- profiling -----------------------------------------------------------------

TEST(Profile, HeartFailure) {
  const auto path = fixture("heart_failure_clinical_records_dataset.csv");
  auto p = ms::profile_dataset(ms::load_table_file(path.string()), "DEATH_EVENT", "heart.csv");
  EXPECT_EQ(p.n_rows, 299u);
  EXPECT_EQ(p.n_columns, 13u);
  EXPECT_EQ(p.target_type, ms::ColumnType::BinaryCategorical);
  EXPECT_TRUE(p.quality.unbalanced);
  EXPECT_FALSE(p.quality.missing_data);
  EXPECT_FALSE(p.quality.noise);
  EXPECT_EQ(ms::classify_problem(p), ms::ProblemType::BinaryClassification);

  // Oracles over the raw text: distinct-count typing, class shares, Tukey fences.
  auto rows = naive_split(slurp(path));
  const auto header = rows.front();
  rows.erase(rows.begin());
  std::vector<std::string> expected_outliers;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::map<std::string, int> counts;
    std::vector<double> xs;
    for (const auto& r : rows) {
      ++counts[r[c]];
      xs.push_back(std::stod(r[c]));
    }
    const auto type = p.type_of(header[c]);
    ASSERT_TRUE(type);
    EXPECT_EQ(*type, counts.size() == 2 ? ms::ColumnType::BinaryCategorical : ms::ColumnType::Numerical)
        << header[c];
    if (counts.size() != 2) {
      const double q1 = testsupport::oracle_quantile(xs, 0.25), q3 = testsupport::oracle_quantile(xs, 0.75);
      const double lo = q1 - 1.5 * (q3 - q1), hi = q3 + 1.5 * (q3 - q1);
      if (std::any_of(xs.begin(), xs.end(), [&](double x) { return x < lo || x > hi; }))
        expected_outliers.push_back(header[c]);
    }
    if (header[c] == "DEATH_EVENT") {
      const int minority = std::min(counts.begin()->second, std::next(counts.begin())->second);
      ASSERT_TRUE(p.quality.minority_ratio);
      EXPECT_DOUBLE_EQ(*p.quality.minority_ratio, minority / 299.0);
    }
  }
  EXPECT_EQ(p.quality.affected_columns, expected_outliers);
  EXPECT_EQ(p.quality.outliers, !expected_outliers.empty());
}

TEST(Profile, TenPercentMissing) {
  auto t = ms::load_table("a,b\n1,x\n2,y\n3,\n4,x\n5,y\n6,x\n7,y\n8,x\n9,y\n10,x\n");
  auto p = ms::profile_dataset(t, std::nullopt);
  EXPECT_TRUE(p.quality.missing_data);
  EXPECT_DOUBLE_EQ(p.quality.worst_fraction, 0.10);
  EXPECT_EQ(ms::classify_problem(p), ms::ProblemType::Clustering);
  EXPECT_FALSE(p.quality.minority_ratio);
}

TEST(Profile, UnknownTargetNamesTheColumn) {
  auto t = ms::load_table("a,b\n1,2\n");
  try {
    ms::profile_dataset(t, std::string("nope"));
    FAIL();
  } catch (const ms::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("nope"), std::string::npos);
  }
}

TEST(Profile, NumericTargetIsRegression) {
  auto p = ms::profile_dataset(ms::load_table("x,price\n1,10.5\n2,11\n3,40\n"), std::string("price"));
  EXPECT_EQ(ms::classify_problem(p), ms::ProblemType::Regression);
  EXPECT_FALSE(p.quality.unbalanced);
}

TEST(Profile, MulticlassTarget) {
  auto p = ms::profile_dataset(ms::load_table("x,y\n1,a\n2,b\n3,c\n4,a\n5,b\n"), std::string("y"));
  EXPECT_EQ(ms::classify_problem(p), ms::ProblemType::MulticlassClassification);
  EXPECT_DOUBLE_EQ(*p.quality.minority_ratio, 0.2);
  EXPECT_TRUE(p.quality.unbalanced);
}

TEST(Profile, TextTargetCannotBeClassified) {
  std::string csv = "x,y\n";
  for (int i = 0; i < 30; ++i) csv += std::to_string(i) + ",t" + std::to_string(i) + "\n";
  auto p = ms::profile_dataset(ms::load_table(csv), std::string("y"));
  EXPECT_EQ(p.target_type, ms::ColumnType::Text);
  EXPECT_THROW(ms::classify_problem(p), ms::DomainError);
}

TEST(Profile, IdenticalBytesGiveIdenticalProfiles) {
  const auto text = slurp(fixture("heart_failure_clinical_records_dataset.csv"));
  EXPECT_EQ(ms::profile_dataset(ms::load_table(text), "DEATH_EVENT"),
            ms::profile_dataset(ms::load_table(text), "DEATH_EVENT"));
}

// Row order never changes the profile.
TEST(ProfileProperty, PermutationInvariance) {
  std::mt19937 rng(4242);
  const std::vector<std::string> header{"num", "bin", "cat", "gappy", "target"};
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 60);
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < n; ++i) {
      std::normal_distribution<double> g(0, 10);
      double x = g(rng);
      if (rng() % 25 == 0) x *= 50;
      rows.push_back({std::to_string(x), rng() % 2 ? "yes" : "no", "k" + std::to_string(rng() % 4),
                      rng() % 5 == 0 ? "" : std::to_string(rng() % 7),
                      std::to_string(rng() % (2 + trial % 3))});
    }
    const auto before = ms::profile_dataset(ms::load_table(join_csv(header, rows)), std::string("target"));
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto after = ms::profile_dataset(ms::load_table(join_csv(header, rows)), std::string("target"));
    ASSERT_EQ(before, after) << "trial " << trial;
  }
}

// A column's type depends only on its own cells.
TEST(ProfileProperty, ColumnIndependence) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 40);
    std::vector<std::vector<std::string>> a, b;
    for (int i = 0; i < n; ++i) {
      const std::string fixed = std::to_string(rng() % (1 + trial % 30));
      a.push_back({fixed, std::to_string(rng() % 100)});
      b.push_back({fixed, "w" + std::to_string(rng() % 3)});
    }
    auto pa = ms::profile_dataset(ms::load_table(join_csv({"f", "other"}, a)), std::nullopt);
    auto pb = ms::profile_dataset(ms::load_table(join_csv({"f", "other"}, b)), std::nullopt);
    ASSERT_EQ(pa.type_of("f"), pb.type_of("f")) << trial;
  }
}
