#pragma once

#include "modelsel/heuristics.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace modelsel {

/// Hyperparameter value as reported by the benchmark harness.
using ParamValue = std::variant<std::monostate, double, std::string, bool>;

/// One evaluated model. `metrics` are test-set values keyed by metric id.
struct MetricReport {
  std::string model;
  std::map<std::string, ParamValue> params;
  std::map<std::string, double> metrics;
  std::optional<double> cv_mean;
  std::optional<std::vector<double>> cv_scores;
  double test_score = 0.0;

  /// Throws DomainError on a non-finite value or an empty cv_scores list.
  void validate() const;
  bool operator==(const MetricReport&) const = default;
};

enum class ScoreSource { TestMetrics, CvMean };

struct TransitionPolicy {
  std::map<std::string, double> satisfaction{{"roc_auc", 0.85}, {"accuracy", 0.80}, {"r2", 0.60}};
  double overfit_cv_std = 0.05;
  double overfit_gap = 0.10;
  /// Defaults to the length of the ranked list.
  std::optional<std::size_t> max_steps;
  ScoreSource score_source = ScoreSource::TestMetrics;

  /// Throws DomainError for out-of-range thresholds.
  void validate() const;
  bool operator==(const TransitionPolicy&) const = default;
};

enum class DecisionKind { Stop, Advance, Escalate };
enum class DecisionReason { Satisfied, Exhausted, Underperformed, OverfittingDetected };

std::string_view to_string(DecisionKind k);
std::string_view to_string(DecisionReason r);
std::optional<DecisionKind> parse_decision_kind(std::string_view s);
std::optional<DecisionReason> parse_decision_reason(std::string_view s);

struct BestSoFar {
  std::string model;
  double value = 0.0;

  bool operator==(const BestSoFar&) const = default;
};

struct TransitionDecision {
  DecisionKind kind = DecisionKind::Stop;
  DecisionReason reason = DecisionReason::Satisfied;
  std::optional<std::string> next_model; // Advance / Escalate
  std::optional<BestSoFar> best;         // Stop(Exhausted)
  std::string rule;                      // rule that fired
  std::string detail;

  bool operator==(const TransitionDecision&) const = default;
};

struct HistoryEntry {
  MetricReport report;
  TransitionDecision decision;

  bool operator==(const HistoryEntry&) const = default;
};

/// Value-type session. observe() never mutates its input state.
struct SelectionState {
  Recommendation recommendation;
  TransitionPolicy policy;
  std::size_t cursor = 0;
  std::vector<HistoryEntry> history;
  std::optional<BestSoFar> best_so_far;

  bool stopped() const {
    return !history.empty() && history.back().decision.kind == DecisionKind::Stop;
  }
  const std::string& current_model() const { return recommendation.ranked.at(cursor); }
  bool operator==(const SelectionState&) const = default;
};

/// Raised for a report naming the wrong model, or observe after Stop.
class SessionError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Throws DomainError for an empty ranked list or a policy without a
/// satisfaction threshold for the primary metric.
SelectionState init_session(Recommendation rec, TransitionPolicy policy = {});

/// High variance across folds, or a large CV-to-test gap.
bool detect_overfitting(const MetricReport& report, const TransitionPolicy& policy);

/// Primary-metric value of a report under the policy's score source.
double primary_value(const MetricReport& report, const std::string& primary, const TransitionPolicy& policy);

struct ObserveResult {
  SelectionState state;
  TransitionDecision decision;
};

ObserveResult observe(const SelectionState& state, const MetricReport& report,
                      const ModelCatalog& catalog = builtin_catalog());

} // namespace modelsel
