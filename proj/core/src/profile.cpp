#include "modelsel/profile.hpp"

#include "modelsel/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace modelsel {

std::string_view to_string(ColumnType t) {
  switch (t) {
  case ColumnType::Numerical: return "Numerical";
  case ColumnType::BinaryCategorical: return "BinaryCategorical";
  case ColumnType::Categorical: return "Categorical";
  case ColumnType::Text: return "Text";
  case ColumnType::TimeSeries: return "TimeSeries";
  case ColumnType::Image: return "Image";
  }
  return "?";
}

std::string_view to_string(ProblemType t) {
  switch (t) {
  case ProblemType::BinaryClassification: return "BinaryClassification";
  case ProblemType::MulticlassClassification: return "MulticlassClassification";
  case ProblemType::Regression: return "Regression";
  case ProblemType::Clustering: return "Clustering";
  case ProblemType::DimensionalityReduction: return "DimensionalityReduction";
  }
  return "?";
}

std::optional<ColumnType> parse_column_type(std::string_view name) {
  for (auto t : {ColumnType::Numerical, ColumnType::BinaryCategorical, ColumnType::Categorical,
                 ColumnType::Text, ColumnType::TimeSeries, ColumnType::Image})
    if (to_string(t) == name) return t;
  return std::nullopt;
}

std::optional<ProblemType> parse_problem_type(std::string_view name) {
  for (auto t : {ProblemType::BinaryClassification, ProblemType::MulticlassClassification,
                 ProblemType::Regression, ProblemType::Clustering,
                 ProblemType::DimensionalityReduction})
    if (to_string(t) == name) return t;
  return std::nullopt;
}

std::optional<ColumnType> DatasetProfile::type_of(std::string_view column) const {
  for (const auto& [name, type] : column_types)
    if (name == column) return type;
  return std::nullopt;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw DomainError("quantile of empty data");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

ColumnType infer_column_type(std::span<const Cell> values, const ProfileOptions& options) {
  std::set<double> numbers;
  std::set<std::string> texts;
  for (const auto& c : values) {
    if (const auto* d = std::get_if<double>(&c)) numbers.insert(*d);
    else if (const auto* s = std::get_if<std::string>(&c)) texts.insert(*s);
  }
  const std::size_t distinct = numbers.size() + texts.size();
  if (distinct == 0) throw DomainError("cannot infer the type of an all-null column");
  if (distinct == 2) return ColumnType::BinaryCategorical;
  if (texts.empty()) return ColumnType::Numerical;
  const double cutoff = std::max(static_cast<double>(options.min_categorical_cutoff),
                                 options.categorical_fraction * static_cast<double>(values.size()));
  if (static_cast<double>(distinct) <= cutoff) return ColumnType::Categorical;
  return ColumnType::Text;
}

namespace {

bool has_tukey_outliers(const std::vector<Cell>& column, double k) {
  std::vector<double> xs;
  for (const auto& c : column)
    if (const auto* d = std::get_if<double>(&c)) xs.push_back(*d);
  if (xs.empty()) return false;
  std::sort(xs.begin(), xs.end());
  const double q1 = quantile_sorted(xs, 0.25);
  const double q3 = quantile_sorted(xs, 0.75);
  const double iqr = q3 - q1;
  return xs.front() < q1 - k * iqr || xs.back() > q3 + k * iqr;
}

// Smallest class share among non-null cells; nullopt with fewer than 2 classes.
std::optional<double> minority_share(const std::vector<Cell>& column) {
  std::map<double, std::size_t> numeric;
  std::map<std::string, std::size_t> textual;
  std::size_t total = 0;
  for (const auto& c : column) {
    if (const auto* d = std::get_if<double>(&c)) ++numeric[*d];
    else if (const auto* s = std::get_if<std::string>(&c)) ++textual[*s];
    else continue;
    ++total;
  }
  if (numeric.size() + textual.size() < 2) return std::nullopt;
  std::size_t smallest = total;
  for (const auto& [_, n] : numeric) smallest = std::min(smallest, n);
  for (const auto& [_, n] : textual) smallest = std::min(smallest, n);
  return static_cast<double>(smallest) / static_cast<double>(total);
}

} // namespace

DatasetProfile profile_dataset(const DataTable& table, const std::optional<std::string>& target,
                               std::string dataset_name, const ProfileOptions& options) {
  DatasetProfile p;
  p.dataset = std::move(dataset_name);
  p.n_rows = table.n_rows();
  p.n_columns = table.n_columns();

  if (target && table.find(*target) == table.n_columns())
    throw DomainError("unknown target column '" + *target + "'");

  for (std::size_t i = 0; i < table.n_columns(); ++i) {
    const auto& name = table.column_names()[i];
    const auto& col = table.column(i);
    const ColumnType type = infer_column_type(col, options);
    p.column_types.emplace_back(name, type);

    const auto nulls = static_cast<std::size_t>(std::count_if(col.begin(), col.end(), is_null));
    if (!col.empty())
      p.quality.worst_fraction = std::max(p.quality.worst_fraction,
                                          static_cast<double>(nulls) / static_cast<double>(col.size()));

    if (type == ColumnType::Numerical && has_tukey_outliers(col, options.iqr_multiplier))
      p.quality.affected_columns.push_back(name);
  }
  p.quality.missing_data = p.quality.worst_fraction > 0.0;
  p.quality.outliers = !p.quality.affected_columns.empty();

  if (target) {
    p.target = *target;
    p.target_type = p.type_of(*target);
    if (is_categorical(*p.target_type)) {
      p.quality.minority_ratio = minority_share(table.column(table.find(*target)));
      p.quality.unbalanced =
          p.quality.minority_ratio && *p.quality.minority_ratio < options.imbalance_threshold;
    }
  }
  return p;
}

ProblemType classify_problem(const DatasetProfile& profile) {
  if (!profile.target) return ProblemType::Clustering;
  if (!profile.target_type) throw DomainError("profile target has no type");
  switch (*profile.target_type) {
  case ColumnType::BinaryCategorical: return ProblemType::BinaryClassification;
  case ColumnType::Categorical: return ProblemType::MulticlassClassification;
  case ColumnType::Numerical: return ProblemType::Regression;
  default:
    throw DomainError("unsupported prediction target '" + *profile.target + "' of type " +
                      std::string(to_string(*profile.target_type)));
  }
}

} // namespace modelsel
