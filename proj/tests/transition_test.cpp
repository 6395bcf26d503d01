#include "modelsel/io.hpp"
#include "modelsel/transition.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

namespace ms = modelsel;
using testsupport::fixture;
using K = ms::DecisionKind;
using R = ms::DecisionReason;

namespace {

ms::Recommendation heart_gpt() {
  auto p = ms::profile_from_json(ms::read_json_file(fixture("heart.profile.json")));
  return ms::recommend_gpt(p, {});
}

std::map<std::string, ms::MetricReport> heart_reports() {
  std::map<std::string, ms::MetricReport> out;
  for (const auto& j : ms::read_json_file(fixture("reference_metrics/heart.json")))
    out.emplace(j.at("model").get<std::string>(), ms::metric_report_from_json(j));
  return out;
}

ms::MetricReport report(const std::string& model, double roc_auc) {
  ms::MetricReport r;
  r.model = model;
  r.metrics = {{"roc_auc", roc_auc}, {"accuracy", roc_auc}};
  r.test_score = roc_auc;
  return r;
}

// Observes the report for whatever model is current until the session stops.
std::vector<ms::TransitionDecision> run(ms::SelectionState s, const std::map<std::string, ms::MetricReport>& reports) {
  std::vector<ms::TransitionDecision> out;
  while (!s.stopped()) {
    auto r = ms::observe(s, reports.at(s.current_model()));
    out.push_back(r.decision);
    s = std::move(r.state);
  }
  return out;
}

// ---- reference machine ------------------------------------------------------

struct Step {
  K kind;
  std::optional<std::string> next;
  std::optional<ms::BestSoFar> best;
};

double std_pop(const std::vector<double>& xs) { return testsupport::oracle_population_std(xs); }

std::vector<Step> reference_run(const std::vector<std::string>& ranked, const std::map<std::string, ms::MetricReport>& reports,
                                double threshold, std::size_t max_steps) {
  std::vector<Step> out;
  std::size_t cursor = 0;
  std::optional<ms::BestSoFar> best;
  for (std::size_t step = 1;; ++step) {
    const auto& rep = reports.at(ranked[cursor]);
    const double v = rep.metrics.at("roc_auc");
    if (!best || v > best->value) best = ms::BestSoFar{ranked[cursor], v};
    const bool overfit = (rep.cv_scores && std_pop(*rep.cv_scores) > 0.05) ||
                         (rep.cv_mean && *rep.cv_mean - rep.test_score > 0.10);
    if (v >= threshold && !overfit) {
      out.push_back({K::Stop, {}, {}});
      return out;
    }
    std::size_t target = cursor + 1;
    bool escalate = false;
    if (overfit) {
      const int r0 = ms::builtin_catalog().at(ranked[cursor]).overfitting_robustness;
      for (std::size_t j = cursor + 1; j < ranked.size(); ++j)
        if (ms::builtin_catalog().at(ranked[j]).overfitting_robustness > r0) {
          target = j;
          escalate = true;
          break;
        }
    }
    if (target >= ranked.size() || step >= max_steps) {
      out.push_back({K::Stop, {}, best});
      return out;
    }
    out.push_back({escalate ? K::Escalate : K::Advance, ranked[target], {}});
    cursor = target;
  }
}

struct RandomSession {
  ms::Recommendation rec;
  std::map<std::string, ms::MetricReport> reports;
};

RandomSession random_session(std::mt19937& rng) {
  static const std::vector<std::string> pool{"LogisticRegression", "DecisionTreeClassifier", "RandomForestClassifier",
                                             "GradientBoostingClassifier", "SVC", "NeuralNetwork",
                                             "KNeighborsClassifier", "LinearSVC"};
  RandomSession s;
  auto names = pool;
  std::shuffle(names.begin(), names.end(), rng);
  names.resize(1 + rng() % names.size());
  s.rec.ranked = names;
  s.rec.metric_set = ms::select_metrics(ms::ProblemType::BinaryClassification);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  for (const auto& n : names) {
    auto r = report(n, std::round(u(rng) * 1000) / 1000);
    if (rng() % 3 == 0) r.cv_scores = std::vector<double>{u(rng), u(rng), u(rng)};
    if (rng() % 2) r.cv_mean = r.test_score + (rng() % 2 ? 0.15 : 0.01);
    s.reports.emplace(n, r);
  }
  return s;
}

} // namespace

TEST(Overfitting, Examples) {
  ms::TransitionPolicy pol;
  auto r = report("M", 0.8);
  r.cv_scores = std::vector<double>{0.80, 0.80, 0.80};
  r.cv_mean = 0.80;
  EXPECT_FALSE(ms::detect_overfitting(r, pol));

  auto gap = report("M", 0.8);
  gap.cv_mean = 0.95;
  EXPECT_TRUE(ms::detect_overfitting(gap, pol));

  auto spread = report("M", 0.8);
  spread.cv_scores = std::vector<double>{0.70, 0.90};
  EXPECT_DOUBLE_EQ(testsupport::oracle_population_std(*spread.cv_scores), 0.10);
  EXPECT_TRUE(ms::detect_overfitting(spread, pol));
}

TEST(Session, InitStartsAtLogisticRegression) {
  auto s = ms::init_session(heart_gpt());
  EXPECT_EQ(s.current_model(), "LogisticRegression");
  EXPECT_EQ(s.cursor, 0u);
  EXPECT_TRUE(s.history.empty());
  EXPECT_FALSE(s.stopped());
}

TEST(Session, EmptyRecommendationRejected) {
  ms::Recommendation rec;
  rec.metric_set = ms::select_metrics(ms::ProblemType::BinaryClassification);
  EXPECT_THROW(ms::init_session(rec), ms::DomainError);
}

TEST(Session, MissingThresholdForPrimaryRejected) {
  ms::Recommendation rec;
  rec.ranked = {"KMeans"};
  rec.metric_set = ms::select_metrics(ms::ProblemType::Clustering);
  EXPECT_THROW(ms::init_session(rec), ms::DomainError);
  ms::TransitionPolicy pol;
  pol.satisfaction["silhouette"] = 0.5;
  EXPECT_NO_THROW(ms::init_session(rec, pol));
}

TEST(Session, PolicyValidation) {
  ms::TransitionPolicy pol;
  pol.overfit_gap = 0;
  EXPECT_THROW(pol.validate(), ms::DomainError);
  pol = {};
  pol.satisfaction["roc_auc"] = 1.5;
  EXPECT_THROW(pol.validate(), ms::DomainError);
  pol = {};
  pol.max_steps = 0;
  EXPECT_THROW(pol.validate(), ms::DomainError);
  pol = {};
  pol.satisfaction["r2"] = -3.0;
  EXPECT_NO_THROW(pol.validate());
}

TEST(Session, DefaultsStopSatisfiedOnLogisticRegression) {
  auto decisions = run(ms::init_session(heart_gpt()), heart_reports());
  ASSERT_EQ(decisions.size(), 1u);
  EXPECT_EQ(decisions[0].kind, K::Stop);
  EXPECT_EQ(decisions[0].reason, R::Satisfied);
  EXPECT_EQ(decisions[0].rule, "satisfied");
}

TEST(Session, StrictPolicyReplay) {
  auto cfg = ms::load_config(fixture("replay_policy.json"));
  auto decisions = run(ms::init_session(heart_gpt(), cfg.policy), heart_reports());
  ASSERT_EQ(decisions.size(), 3u);
  EXPECT_EQ(decisions[0].kind, K::Advance);
  EXPECT_EQ(decisions[0].next_model, "RandomForestClassifier");
  EXPECT_EQ(decisions[0].rule, "poor_performance");
  EXPECT_EQ(decisions[1].kind, K::Advance);
  EXPECT_EQ(decisions[1].next_model, "GradientBoostingClassifier");
  EXPECT_EQ(decisions[2].kind, K::Stop);
  EXPECT_EQ(decisions[2].reason, R::Exhausted);
  EXPECT_EQ(decisions[2].best, (ms::BestSoFar{"RandomForestClassifier", 0.8896}));
}

TEST(Session, ExhaustsAtEndOfListUnderDefaultMaxSteps) {
  ms::TransitionPolicy pol;
  pol.satisfaction["roc_auc"] = 0.99;
  auto s = ms::init_session(heart_gpt(), pol);
  std::vector<K> kinds;
  for (double v : {0.70, 0.75, 0.72, 0.74}) {
    auto r = ms::observe(s, report(s.current_model(), v));
    kinds.push_back(r.decision.kind);
    s = r.state;
  }
  EXPECT_EQ(kinds, (std::vector<K>{K::Advance, K::Advance, K::Advance, K::Stop}));
  EXPECT_EQ(s.history.back().decision.reason, R::Exhausted);
  EXPECT_EQ(s.history.back().decision.best, (ms::BestSoFar{"RandomForestClassifier", 0.75}));
}

TEST(Session, SingleModelCanOnlyStop) {
  ms::Recommendation rec;
  rec.ranked = {"LogisticRegression"};
  rec.metric_set = ms::select_metrics(ms::ProblemType::BinaryClassification);
  auto r = ms::observe(ms::init_session(rec), report("LogisticRegression", 0.1));
  EXPECT_EQ(r.decision.kind, K::Stop);
  EXPECT_EQ(r.decision.reason, R::Exhausted);
}

TEST(Session, EscalatesToMoreRobustModel) {
  auto s = ms::init_session(heart_gpt());
  auto lr = report("LogisticRegression", 0.95);
  lr.cv_scores = std::vector<double>{0.70, 0.90};
  auto r = ms::observe(s, lr);
  EXPECT_EQ(r.decision.kind, K::Escalate);
  EXPECT_EQ(r.decision.reason, R::OverfittingDetected);
  EXPECT_EQ(r.decision.next_model, "RandomForestClassifier");
  EXPECT_NE(r.decision.detail.find("regularization"), std::string::npos);
}

TEST(Session, OverfittingWithoutRobustSuccessorAdvances) {
  auto s = ms::init_session(heart_gpt());
  s = ms::observe(s, report("LogisticRegression", 0.5)).state;
  auto rf = report("RandomForestClassifier", 0.95);
  rf.cv_mean = 0.99;
  rf.test_score = 0.80;
  auto r = ms::observe(s, rf);
  EXPECT_EQ(r.decision.kind, K::Advance);
  EXPECT_EQ(r.decision.rule, "overfitting_no_robust_successor");
  EXPECT_EQ(r.decision.next_model, "GradientBoostingClassifier");
  // GBM (robustness 1) overfitting escalates to SVC (robustness 2).
  auto gb = report("GradientBoostingClassifier", 0.95);
  gb.cv_scores = std::vector<double>{0.5, 0.9};
  EXPECT_EQ(ms::observe(r.state, gb).decision.kind, K::Escalate);
}

TEST(Session, WrongModelAndObserveAfterStop) {
  auto s = ms::init_session(heart_gpt());
  EXPECT_THROW(ms::observe(s, report("SVC", 0.9)), ms::SessionError);
  auto stopped = ms::observe(s, report("LogisticRegression", 0.9)).state;
  EXPECT_THROW(ms::observe(stopped, report("LogisticRegression", 0.9)), ms::SessionError);
}

TEST(Session, ObserveDoesNotMutateInput) {
  const auto s = ms::init_session(heart_gpt());
  const auto copy = s;
  auto r = ms::observe(s, report("LogisticRegression", 0.5));
  EXPECT_EQ(s, copy);
  EXPECT_EQ(r.state.history.size(), 1u);
}

TEST(Session, InvalidReportRejected) {
  auto s = ms::init_session(heart_gpt());
  auto r = report("LogisticRegression", std::numeric_limits<double>::quiet_NaN());
  EXPECT_THROW(ms::observe(s, r), ms::DomainError);
  auto empty = report("LogisticRegression", 0.9);
  empty.cv_scores = std::vector<double>{};
  EXPECT_THROW(ms::observe(s, empty), ms::DomainError);
  auto missing = report("LogisticRegression", 0.9);
  missing.metrics.erase("roc_auc");
  EXPECT_THROW(ms::observe(s, missing), ms::DomainError);
}

TEST(Session, CvMeanScoreSource) {
  ms::TransitionPolicy pol;
  pol.score_source = ms::ScoreSource::CvMean;
  auto s = ms::init_session(heart_gpt(), pol);
  auto r = report("LogisticRegression", 0.99);
  r.cv_mean = 0.80;
  r.test_score = 0.80;
  EXPECT_EQ(ms::observe(s, r).decision.kind, K::Advance);
}

// ---- properties -------------------------------------------------------------------

// Decisions match the reference machine; cursor never decreases; a Stop comes
// within |ranked| observations; best_so_far is the running maximum.
TEST(TransitionProperty, AgreesWithReferenceMachine) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto rs = random_session(rng);
    ms::TransitionPolicy pol;
    pol.satisfaction["roc_auc"] = 0.5 + (rng() % 50) / 100.0;
    if (rng() % 2) pol.max_steps = 1 + rng() % rs.rec.ranked.size();
    auto s = ms::init_session(rs.rec, pol);
    const auto expected = reference_run(rs.rec.ranked, rs.reports, pol.satisfaction["roc_auc"],
                                        pol.max_steps.value_or(rs.rec.ranked.size()));
    std::size_t i = 0;
    double running_max = -1;
    while (!s.stopped()) {
      ASSERT_LT(i, rs.rec.ranked.size()) << "no Stop within |ranked| steps";
      const auto& rep = rs.reports.at(s.current_model());
      running_max = std::max(running_max, rep.metrics.at("roc_auc"));
      auto r = ms::observe(s, rep);
      ASSERT_GE(r.state.cursor, s.cursor);
      ASSERT_EQ(r.state.history.size(), s.history.size() + 1);
      ASSERT_TRUE(r.state.best_so_far);
      ASSERT_EQ(r.state.best_so_far->value, running_max);
      ASSERT_LT(i, expected.size());
      ASSERT_EQ(r.decision.kind, expected[i].kind) << "trial " << trial << " step " << i;
      ASSERT_EQ(r.decision.next_model, expected[i].next);
      if (r.decision.reason == R::Exhausted) ASSERT_EQ(r.decision.best, expected[i].best);
      s = r.state;
      ++i;
    }
    ASSERT_EQ(i, expected.size());
  }
}

// Re-running the recorded reports from a fresh session gives identical decisions.
TEST(TransitionProperty, ReplayDeterminism) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    auto rs = random_session(rng);
    ms::TransitionPolicy pol;
    pol.satisfaction["roc_auc"] = 0.5 + (rng() % 50) / 100.0;
    const auto first = run(ms::init_session(rs.rec, pol), rs.reports);
    auto s = ms::init_session(rs.rec, pol);
    auto final_state = s;
    for (const auto& d : first) {
      (void)d;
      final_state = ms::observe(final_state, rs.reports.at(final_state.current_model())).state;
    }
    auto replay = ms::init_session(rs.rec, pol);
    for (const auto& h : final_state.history) replay = ms::observe(replay, h.report).state;
    ASSERT_EQ(replay, final_state) << "trial " << trial;
    // The serialized state replays identically too.
    ASSERT_EQ(ms::state_from_json(ms::to_json(final_state)), final_state);
  }
}

// Raising the threshold never makes a Satisfied stop happen earlier.
TEST(TransitionProperty, ThresholdMonotonicity) {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    auto rs = random_session(rng);
    ms::TransitionPolicy lo, hi;
    lo.satisfaction["roc_auc"] = 0.5 + (rng() % 40) / 100.0;
    hi.satisfaction["roc_auc"] = lo.satisfaction["roc_auc"] + (rng() % 10 + 1) / 100.0;
    auto satisfied_at = [&](const ms::TransitionPolicy& p) -> std::optional<std::size_t> {
      auto ds = run(ms::init_session(rs.rec, p), rs.reports);
      if (ds.back().reason == R::Satisfied) return ds.size();
      return std::nullopt;
    };
    const auto a = satisfied_at(lo), b = satisfied_at(hi);
    if (b) {
      ASSERT_TRUE(a) << "trial " << trial;
      ASSERT_GE(*b, *a) << "trial " << trial;
    }
  }
}
