#pragma once

#include "modelsel/table.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modelsel {

/// TimeSeries and Image are placeholders; inference never produces them.
enum class ColumnType { Numerical, BinaryCategorical, Categorical, Text, TimeSeries, Image };

enum class ProblemType {
  BinaryClassification,
  MulticlassClassification,
  Regression,
  Clustering,
  DimensionalityReduction, // only ever user-requested
};

std::string_view to_string(ColumnType t);
std::string_view to_string(ProblemType t);
/// Inverse of to_string; nullopt for unknown names.
std::optional<ColumnType> parse_column_type(std::string_view name);
std::optional<ProblemType> parse_problem_type(std::string_view name);

inline bool is_classification(ProblemType t) {
  return t == ProblemType::BinaryClassification || t == ProblemType::MulticlassClassification;
}

inline bool is_categorical(ColumnType t) {
  return t == ColumnType::BinaryCategorical || t == ColumnType::Categorical;
}

struct QualityFlags {
  bool missing_data = false;
  double worst_fraction = 0.0; // max per-column null fraction
  bool outliers = false;
  std::vector<std::string> affected_columns;
  bool noise = false; // no observable definition; always false
  bool unbalanced = false;
  /// Smallest class share of a categorical target; absent otherwise.
  std::optional<double> minority_ratio;

  bool operator==(const QualityFlags&) const = default;
};

struct DatasetProfile {
  std::string dataset; // source file name, used by the prompt generator
  std::size_t n_rows = 0;
  std::size_t n_columns = 0;
  std::vector<std::pair<std::string, ColumnType>> column_types; // column order
  std::optional<std::string> target;
  std::optional<ColumnType> target_type;
  QualityFlags quality;

  std::optional<ColumnType> type_of(std::string_view column) const;
  bool operator==(const DatasetProfile&) const = default;
};

struct ProfileOptions {
  double imbalance_threshold = 0.40;
  double iqr_multiplier = 1.5;
  std::size_t min_categorical_cutoff = 20;
  double categorical_fraction = 0.05;
};

/// Throws DomainError when every cell is null.
ColumnType infer_column_type(std::span<const Cell> values, const ProfileOptions& options = {});

/// Throws DomainError when `target` names no column.
DatasetProfile profile_dataset(const DataTable& table, const std::optional<std::string>& target,
                               std::string dataset_name = {}, const ProfileOptions& options = {});

/// Throws DomainError for a Text (or placeholder-typed) target.
ProblemType classify_problem(const DatasetProfile& profile);

/// Linear-interpolation quantile of sorted data, q in [0,1].
double quantile_sorted(std::span<const double> sorted, double q);

} // namespace modelsel
