#pragma once

#include "modelsel/catalog.hpp"
#include "modelsel/error.hpp"
#include "modelsel/formula.hpp"
#include "modelsel/profile.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace modelsel {

/// User-declared facts the profiler cannot observe.
struct Requirements {
  bool nonlinear_suspected = false;
  bool limited_resources = false;
  bool interpretability_required = false;
  bool multicollinearity_suspected = false;
  /// Cheat-sheet regression branch: "few features should be important".
  bool few_important_features = false;
  /// Cheat-sheet clustering branch: "number of categories known".
  bool cluster_count_known = true;
  /// Carried into the trace; never changes a ranking.
  std::set<std::string> ethical_flags;
  std::string objective;
  /// Overrides the problem type inferred from the profile. The only way to
  /// get DimensionalityReduction.
  std::optional<ProblemType> requested_problem;
};

/// Numeric thresholds of the heuristics. All must be positive.
struct HeuristicConfig {
  std::size_t min_size_requirement = 50;
  std::optional<std::size_t> max_features_allowed; // unlimited when absent
  std::size_t large_dataset_threshold = 50'000;
  std::size_t svm_row_limit = 10'000;
  std::size_t cheatsheet_100k_boundary = 100'000; // strict "fewer than"
  std::size_t cheatsheet_10k_boundary = 10'000;   // strict "fewer than"

  /// Throws DomainError when a threshold is zero.
  void validate() const;
};

struct MetricSet {
  std::vector<std::string> metrics;
  std::string primary;

  bool operator==(const MetricSet&) const = default;
};

/// Metric ids for the problem type; primary is roc_auc (binary), accuracy
/// (multiclass), r2, silhouette, explained_variance_ratio.
MetricSet select_metrics(ProblemType pt);

/// The same metric sets under their display names (Accuracy, AUC-ROC, R², ...).
std::vector<std::string> metric_display_names(ProblemType pt);

enum class Heuristic { Gpt, CheatSheet };
enum class Verdict { Fired, FilteredOut, OrderedBy };

std::string_view to_string(Heuristic h);
std::string_view to_string(Verdict v);
std::optional<Heuristic> parse_heuristic(std::string_view name);
std::optional<Verdict> parse_verdict(std::string_view name);

struct TraceEntry {
  std::string rule_id;
  Verdict verdict = Verdict::Fired;
  std::string subject;
  std::string rationale;

  bool operator==(const TraceEntry&) const = default;
};

using ExplanationTrace = std::vector<TraceEntry>;

/// The rule that governs leaving the model at `step` for the next one.
struct TransitionNote {
  std::size_t step = 0;
  std::string model;
  std::string rule;
  std::string note;

  bool operator==(const TransitionNote&) const = default;
};

struct Recommendation {
  Heuristic heuristic = Heuristic::Gpt;
  ProblemType problem_type = ProblemType::BinaryClassification;
  std::vector<std::string> ranked;
  MetricSet metric_set;
  ExplanationTrace trace;
  std::vector<TransitionNote> transition_notes;

  bool operator==(const Recommendation&) const = default;
};

/// Raised when every candidate was filtered out; the message lists the
/// filter chain.
class EmptyRecommendationError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Raised by the cheat-sheet when the dataset is below min_size_requirement
/// (the flowchart's "get more data" outcome).
class InsufficientDataError : public DomainError {
public:
  using DomainError::DomainError;
};

Recommendation recommend_gpt(const DatasetProfile& profile, const Requirements& reqs,
                             const HeuristicConfig& cfg = {});
Recommendation recommend_gpt(const DatasetProfile& profile, const Requirements& reqs,
                             const HeuristicConfig& cfg, const ModelCatalog& catalog);

/// Depends only on the problem type, n_rows, the config, and the two
/// flowchart requirement flags (few_important_features, cluster_count_known).
Recommendation recommend_cheatsheet(const DatasetProfile& profile, const HeuristicConfig& cfg = {},
                                    const Requirements& reqs = {});

/// Human-readable listing: ranked models, then the trace in order, then the
/// transition notes.
std::string explain_text(const Recommendation& rec);

/// Prompt used to elicit GPT's recommendation for a dataset.
std::string generate_prompt(const DatasetProfile& profile, std::string_view objective);

/// Lowers profile numbers and requirement flags to the boolean atoms used by
/// the bundled feature models (SizeAtLeastMin, MissingData, LimitedResources, ...).
Configuration dataset_facts(const DatasetProfile& profile, const Requirements& reqs,
                            const HeuristicConfig& cfg);

} // namespace modelsel
