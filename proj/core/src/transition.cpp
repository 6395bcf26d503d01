#include "modelsel/transition.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace modelsel {

namespace {

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw DomainError(what + " is not finite");
}

double population_std(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / n);
}

int robustness_of(const ModelCatalog& catalog, std::string_view name) {
  const auto* e = catalog.find(name);
  return e ? e->overfitting_robustness : 0;
}

} // namespace

void MetricReport::validate() const {
  if (model.empty()) throw DomainError("metric report has an empty model name");
  for (const auto& [k, v] : metrics) require_finite(v, "metric '" + k + "'");
  for (const auto& [k, v] : params)
    if (const auto* d = std::get_if<double>(&v)) require_finite(*d, "param '" + k + "'");
  if (cv_mean) require_finite(*cv_mean, "cv_mean");
  if (cv_scores) {
    if (cv_scores->empty()) throw DomainError("cv_scores is empty");
    for (double v : *cv_scores) require_finite(v, "cv score");
  }
  require_finite(test_score, "test_score");
}

void TransitionPolicy::validate() const {
  for (const auto& [metric, t] : satisfaction) {
    require_finite(t, "threshold for '" + metric + "'");
    // r2 and explained variance are unbounded below; the others live in [0, 1]
    const bool bounded_below = metric != "r2" && metric != "explained_variance_ratio" && metric != "silhouette";
    if (t > 1.0 || (bounded_below && t < 0.0) || (metric == "silhouette" && t < -1.0))
      throw DomainError("threshold for '" + metric + "' out of range: " + fmt4(t));
  }
  if (!(overfit_cv_std > 0.0) || !std::isfinite(overfit_cv_std))
    throw DomainError("overfit_cv_std must be positive");
  if (!(overfit_gap > 0.0) || !std::isfinite(overfit_gap)) throw DomainError("overfit_gap must be positive");
  if (max_steps && *max_steps == 0) throw DomainError("max_steps must be positive");
}

std::string_view to_string(DecisionKind k) {
  switch (k) {
  case DecisionKind::Stop: return "Stop";
  case DecisionKind::Advance: return "Advance";
  case DecisionKind::Escalate: return "Escalate";
  }
  return "?";
}

std::string_view to_string(DecisionReason r) {
  switch (r) {
  case DecisionReason::Satisfied: return "Satisfied";
  case DecisionReason::Exhausted: return "Exhausted";
  case DecisionReason::Underperformed: return "Underperformed";
  case DecisionReason::OverfittingDetected: return "OverfittingDetected";
  }
  return "?";
}

std::optional<DecisionKind> parse_decision_kind(std::string_view s) {
  for (auto k : {DecisionKind::Stop, DecisionKind::Advance, DecisionKind::Escalate})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::optional<DecisionReason> parse_decision_reason(std::string_view s) {
  for (auto r : {DecisionReason::Satisfied, DecisionReason::Exhausted, DecisionReason::Underperformed,
                 DecisionReason::OverfittingDetected})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

SelectionState init_session(Recommendation rec, TransitionPolicy policy) {
  if (rec.ranked.empty()) throw DomainError("cannot start a session on an empty recommendation");
  policy.validate();
  if (!policy.satisfaction.contains(rec.metric_set.primary))
    throw DomainError("policy has no satisfaction threshold for primary metric '" + rec.metric_set.primary + "'");
  SelectionState s;
  s.recommendation = std::move(rec);
  s.policy = std::move(policy);
  return s;
}

bool detect_overfitting(const MetricReport& report, const TransitionPolicy& policy) {
  if (report.cv_scores && !report.cv_scores->empty() &&
      population_std(*report.cv_scores) > policy.overfit_cv_std)
    return true;
  return report.cv_mean && *report.cv_mean - report.test_score > policy.overfit_gap;
}

double primary_value(const MetricReport& report, const std::string& primary, const TransitionPolicy& policy) {
  if (policy.score_source == ScoreSource::CvMean) {
    if (!report.cv_mean) throw DomainError("policy scores on cv_mean but the report for '" + report.model + "' has none");
    return *report.cv_mean;
  }
  auto it = report.metrics.find(primary);
  if (it == report.metrics.end())
    throw DomainError("report for '" + report.model + "' lacks primary metric '" + primary + "'");
  return it->second;
}

ObserveResult observe(const SelectionState& state, const MetricReport& report, const ModelCatalog& catalog) {
  if (state.stopped()) throw SessionError("session already stopped");
  const auto& ranked = state.recommendation.ranked;
  if (state.cursor >= ranked.size()) throw SessionError("session cursor is past the ranked list");
  const std::string& current = ranked[state.cursor];
  if (report.model != current)
    throw SessionError("report is for '" + report.model + "' but the session expects '" + current + "'");
  report.validate();

  const auto& primary = state.recommendation.metric_set.primary;
  const double value = primary_value(report, primary, state.policy);
  const double threshold = state.policy.satisfaction.at(primary);
  const bool overfit = detect_overfitting(report, state.policy);

  ObserveResult out{state, {}};
  auto& next = out.state;
  if (!next.best_so_far || value > next.best_so_far->value) next.best_so_far = BestSoFar{current, value};

  TransitionDecision d;
  const std::string cmp = primary + " " + fmt4(value) + (value >= threshold ? " >= " : " < ") + fmt4(threshold);
  if (value >= threshold && !overfit) {
    d.kind = DecisionKind::Stop;
    d.reason = DecisionReason::Satisfied;
    d.rule = "satisfied";
    d.detail = cmp + " and no overfitting signal";
  } else {
    std::size_t target = state.cursor + 1;
    bool escalate = false;
    if (overfit) {
      const int r0 = robustness_of(catalog, current);
      for (std::size_t j = state.cursor + 1; j < ranked.size(); ++j) {
        if (robustness_of(catalog, ranked[j]) > r0) {
          target = j;
          escalate = true;
          break;
        }
      }
    }
    const std::size_t steps = state.history.size() + 1;
    const std::size_t max_steps = state.policy.max_steps.value_or(ranked.size());
    if (target >= ranked.size() || steps >= max_steps) {
      d.kind = DecisionKind::Stop;
      d.reason = DecisionReason::Exhausted;
      d.rule = "exhausted";
      d.best = next.best_so_far;
      d.detail = (target >= ranked.size() ? std::string("no ranked model left") : "max_steps reached (" + std::to_string(max_steps) + ")") +
                 "; best " + next.best_so_far->model + " @ " + fmt4(next.best_so_far->value);
    } else if (escalate) {
      d.kind = DecisionKind::Escalate;
      d.reason = DecisionReason::OverfittingDetected;
      d.rule = "overfitting_escalation";
      d.next_model = ranked[target];
      d.detail = "overfitting detected on " + current + "; consider regularization or tuning, or move to the more robust " +
                 ranked[target];
    } else {
      d.kind = DecisionKind::Advance;
      d.reason = DecisionReason::Underperformed;
      d.rule = overfit ? "overfitting_no_robust_successor" : "poor_performance";
      d.next_model = ranked[target];
      d.detail = (overfit ? "overfitting detected, no more robust ranked model; " : cmp + "; ") + "advance to " +
                 ranked[target];
    }
    if (d.kind != DecisionKind::Stop) next.cursor = target;
  }
  next.history.push_back({report, d});
  out.decision = std::move(d);
  return out;
}

} // namespace modelsel
