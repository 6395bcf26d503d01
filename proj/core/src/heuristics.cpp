#include "modelsel/heuristics.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace modelsel {

void HeuristicConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw DomainError(std::string("heuristic threshold ") + name + " must be > 0");
  };
  positive(min_size_requirement, "min_size_requirement");
  if (max_features_allowed) positive(*max_features_allowed, "max_features_allowed");
  positive(large_dataset_threshold, "large_dataset_threshold");
  positive(svm_row_limit, "svm_row_limit");
  positive(cheatsheet_100k_boundary, "cheatsheet_100k_boundary");
  positive(cheatsheet_10k_boundary, "cheatsheet_10k_boundary");
}

MetricSet select_metrics(ProblemType pt) {
  switch (pt) {
  case ProblemType::BinaryClassification:
    return {{"accuracy", "precision", "recall", "f1", "roc_auc"}, "roc_auc"};
  case ProblemType::MulticlassClassification:
    return {{"accuracy", "precision", "recall", "f1", "roc_auc"}, "accuracy"};
  case ProblemType::Regression:
    return {{"rmse", "mae", "r2"}, "r2"};
  case ProblemType::Clustering:
    return {{"silhouette", "davies_bouldin", "calinski_harabasz"}, "silhouette"};
  case ProblemType::DimensionalityReduction:
    return {{"reconstruction_error", "explained_variance_ratio"}, "explained_variance_ratio"};
  }
  return {};
}

std::vector<std::string> metric_display_names(ProblemType pt) {
  switch (pt) {
  case ProblemType::BinaryClassification:
  case ProblemType::MulticlassClassification:
    return {"Accuracy", "Precision", "Recall", "F1Score", "AUC-ROC"};
  case ProblemType::Regression:
    return {"RMSE", "MAE", "R²"};
  case ProblemType::Clustering:
    return {"SilhouetteScore", "DaviesBouldinIndex", "CalinskiHarabaszIndex"};
  case ProblemType::DimensionalityReduction:
    return {"ReconstructionError", "ExplainedVarianceRatio"};
  }
  return {};
}

std::string_view to_string(Heuristic h) { return h == Heuristic::Gpt ? "GPT" : "CheatSheet"; }

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::Fired: return "fired";
  case Verdict::FilteredOut: return "filtered_out";
  case Verdict::OrderedBy: return "ordered_by";
  }
  return "?";
}

std::optional<Heuristic> parse_heuristic(std::string_view name) {
  if (name == "GPT" || name == "gpt") return Heuristic::Gpt;
  if (name == "CheatSheet" || name == "cheatsheet") return Heuristic::CheatSheet;
  return std::nullopt;
}

std::optional<Verdict> parse_verdict(std::string_view name) {
  for (auto v : {Verdict::Fired, Verdict::FilteredOut, Verdict::OrderedBy})
    if (to_string(v) == name) return v;
  return std::nullopt;
}

namespace {

std::string num(std::size_t n) { return std::to_string(n); }

ProblemType resolve_problem(const DatasetProfile& profile, const Requirements& reqs) {
  return reqs.requested_problem ? *reqs.requested_problem : classify_problem(profile);
}

std::string problem_rationale(const DatasetProfile& profile, const Requirements& reqs) {
  if (reqs.requested_problem) return "requested explicitly";
  if (!profile.target) return "no target column: unsupervised grouping";
  return "target '" + *profile.target + "' is " + std::string(to_string(*profile.target_type));
}

std::string fmt_ratio(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// Dataset-level annotations shared by both engines. They explain the input;
// none of them removes a candidate.
void annotate_dataset(const DatasetProfile& profile, const Requirements& reqs,
                      const HeuristicConfig& cfg, ExplanationTrace& trace) {
  const std::size_t n_features = profile.n_columns - (profile.target ? 1 : 0);
  std::string size = "n_rows " + num(profile.n_rows) +
                     (profile.n_rows >= cfg.min_size_requirement ? " >= " : " < ") +
                     "min_size_requirement " + num(cfg.min_size_requirement) + "; features " +
                     num(n_features);
  if (cfg.max_features_allowed)
    size += (n_features <= *cfg.max_features_allowed ? " <= " : " > ") +
            std::string("max_features_allowed ") + num(*cfg.max_features_allowed);
  else
    size += " (max_features_allowed unlimited)";
  trace.push_back({"dataset_size", Verdict::Fired, "dataset", size});

  const auto& q = profile.quality;
  std::string quality = "missing_data=" + std::string(q.missing_data ? "true" : "false") +
                        " outliers=" + (q.outliers ? "true" : "false") +
                        " noise=" + (q.noise ? "true" : "false") +
                        " unbalanced=" + (q.unbalanced ? "true" : "false");
  if (q.minority_ratio) quality += " (minority " + fmt_ratio(*q.minority_ratio) + ")";
  trace.push_back({"dataset_quality", Verdict::Fired, "dataset", quality});

  for (const auto& flag : reqs.ethical_flags)
    trace.push_back({"ethical_considerations", Verdict::Fired, flag,
                     "carried as an annotation; no selection rule depends on it"});
}

struct Gate {
  bool admitted = true;
  std::vector<TraceEntry> entries;
};

bool is_regularised_linear(const ModelCandidate& m) { return m.name == "Ridge" || m.name == "Lasso"; }

Gate gpt_gate(const ModelCandidate& m, ProblemType pt, const DatasetProfile& profile,
              const Requirements& reqs, const HeuristicConfig& cfg) {
  Gate g;
  auto add = [&](std::string rule, Verdict v, std::string why) {
    g.entries.push_back({std::move(rule), v, m.name, std::move(why)});
    if (v == Verdict::FilteredOut) g.admitted = false;
  };
  auto resources = [&](const char* what) {
    if (reqs.limited_resources)
      add("limited_resources", Verdict::FilteredOut,
          std::string("computational resources limited: prioritise simpler models over ") + what);
  };

  switch (m.family) {
  case ModelFamily::Tree:
    if (reqs.nonlinear_suspected)
      add("decision_tree_nonlinear", Verdict::Fired,
          "nonlinear relationships suspected: interpretable nonlinear model considered");
    else
      add("decision_tree_nonlinear", Verdict::FilteredOut, "nonlinear relationships not suspected");
    return g;
  case ModelFamily::NeuralNet: {
    const bool large = profile.n_rows >= cfg.large_dataset_threshold;
    if (reqs.nonlinear_suspected && large)
      add("neural_network_large_data", Verdict::Fired,
          "nonlinear relationships suspected and n_rows >= large_dataset_threshold (" +
              num(profile.n_rows) + " >= " + num(cfg.large_dataset_threshold) + ")");
    else if (!reqs.nonlinear_suspected)
      add("neural_network_large_data", Verdict::FilteredOut, "nonlinear relationships not suspected");
    else
      add("neural_network_large_data", Verdict::FilteredOut,
          "n_rows < large_dataset_threshold (" + num(profile.n_rows) + " < " +
              num(cfg.large_dataset_threshold) + ")");
    if (g.admitted) resources("neural networks");
    return g;
  }
  case ModelFamily::Kernel:
    if (profile.n_rows > cfg.svm_row_limit)
      add("svm_row_limit", Verdict::FilteredOut,
          "n_rows > svm_row_limit (" + num(profile.n_rows) + " > " + num(cfg.svm_row_limit) + ")");
    else
      add("svm_row_limit", Verdict::Fired,
          "n_rows <= svm_row_limit (" + num(profile.n_rows) + " <= " + num(cfg.svm_row_limit) +
              "): computationally affordable");
    if (g.admitted) resources("support vector machines");
    return g;
  default:
    break;
  }
  if (pt == ProblemType::Regression && is_regularised_linear(m)) {
    add("regularized_linear_retained", Verdict::Fired,
        reqs.multicollinearity_suspected
            ? "multicollinearity suspected: regularisation counters it"
            : "always retained for regression: useful under multicollinearity");
    return g;
  }
  add("candidate_admitted", Verdict::Fired,
      "proposed for " + std::string(to_string(pt)) + " with no gating condition");
  return g;
}

// Regression under suspected nonlinearity leads with the tree ensembles,
// then the linear baselines, then everything else.
int regression_tier(const ModelCandidate& m) {
  if (m.family == ModelFamily::Ensemble) return 0;
  if (m.family == ModelFamily::Linear) return 1;
  return 2;
}

std::string join(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + "}";
}

std::vector<TransitionNote> gpt_transition_notes(const std::vector<const ModelCandidate*>& ranked) {
  std::vector<TransitionNote> notes;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& m = *ranked[i];
    TransitionNote note{i, m.name, {}, {}};
    if (i + 1 == ranked.size()) {
      note.rule = "exhausted";
      note.note = "last candidate: stop with the best model observed so far";
      notes.push_back(std::move(note));
      continue;
    }
    // The next step is a set when several ensembles follow back to back.
    std::vector<std::string> consider{ranked[i + 1]->name};
    if (ranked[i + 1]->family == ModelFamily::Ensemble)
      for (std::size_t j = i + 2; j < ranked.size() && ranked[j]->family == ModelFamily::Ensemble; ++j)
        consider.push_back(ranked[j]->name);

    std::string escalate = "none (plain advance)";
    for (std::size_t j = i + 1; j < ranked.size(); ++j) {
      if (ranked[j]->overfitting_robustness > m.overfitting_robustness) {
        escalate = ranked[j]->name;
        break;
      }
    }
    note.rule = i == 0 ? "initial_model" : "poor_performance";
    note.note = (i == 0 ? "start with " + m.name + " (simplest candidate); " : std::string{}) +
                "if " + m.name + " underperforms => consider " + join(consider) +
                "; if overfitting is detected => apply regularization or parameter tuning, "
                "else escalate to " + escalate;
    notes.push_back(std::move(note));
  }
  return notes;
}

} // namespace

Recommendation recommend_gpt(const DatasetProfile& profile, const Requirements& reqs,
                             const HeuristicConfig& cfg) {
  return recommend_gpt(profile, reqs, cfg, builtin_catalog());
}

Recommendation recommend_gpt(const DatasetProfile& profile, const Requirements& reqs,
                             const HeuristicConfig& cfg, const ModelCatalog& catalog) {
  cfg.validate();
  const ProblemType pt = resolve_problem(profile, reqs);
  Recommendation rec;
  rec.heuristic = Heuristic::Gpt;
  rec.problem_type = pt;
  rec.metric_set = select_metrics(pt);
  rec.trace.push_back(
      {"problem_type", Verdict::Fired, std::string(to_string(pt)), problem_rationale(profile, reqs)});
  annotate_dataset(profile, reqs, cfg, rec.trace);

  std::vector<const ModelCandidate*> admitted;
  std::vector<std::string> chain;
  for (const auto& m : catalog.entries()) {
    if (!m.supports(pt)) continue;
    if (!m.in_gpt_pool()) {
      rec.trace.push_back({"gpt_candidate_pool", Verdict::FilteredOut, m.name,
                           "listed as an option but never proposed by the GPT heuristic"});
      chain.push_back(m.name + ": gpt_candidate_pool");
      continue;
    }
    Gate gate = gpt_gate(m, pt, profile, reqs, cfg);
    for (auto& e : gate.entries) {
      if (e.verdict == Verdict::FilteredOut) chain.push_back(m.name + ": " + e.rule_id + " (" + e.rationale + ")");
      rec.trace.push_back(std::move(e));
    }
    if (gate.admitted) admitted.push_back(&m);
  }
  if (admitted.empty()) {
    std::string msg = "no candidate survives filtering for " + std::string(to_string(pt));
    for (const auto& c : chain) msg += "\n  " + c;
    throw EmptyRecommendationError(msg);
  }

  const bool complex_first = pt == ProblemType::Regression && reqs.nonlinear_suspected;
  auto key = [&](const ModelCandidate* m) {
    return std::make_tuple(complex_first ? regression_tier(*m) : 0, m->complexity,
                           -m->interpretability, catalog.index_of(m->name));
  };
  std::stable_sort(admitted.begin(), admitted.end(),
                   [&](const auto* a, const auto* b) { return key(a) < key(b); });

  const std::string order_rule = complex_first ? "order_complex_regressors_first" : "order_complexity_ascending";
  for (std::size_t i = 0; i < admitted.size(); ++i) {
    const auto& m = *admitted[i];
    rec.ranked.push_back(m.name);
    std::string why = "rank " + num(i + 1) + ": complexity " + std::to_string(m.complexity) +
                      ", interpretability " + std::to_string(m.interpretability);
    if (complex_first) why += ", family " + std::string(to_string(m.family));
    rec.trace.push_back({order_rule, Verdict::OrderedBy, m.name, std::move(why)});
  }
  if (reqs.interpretability_required)
    rec.trace.push_back({"interpretability_preference", Verdict::Fired, rec.ranked.front(),
                         "interpretability required: ties already resolved toward interpretable models"});
  rec.transition_notes = gpt_transition_notes(admitted);
  return rec;
}

Recommendation recommend_cheatsheet(const DatasetProfile& profile, const HeuristicConfig& cfg,
                                    const Requirements& reqs) {
  cfg.validate();
  const ProblemType pt = resolve_problem(profile, reqs);
  const std::size_t n = profile.n_rows;
  if (n < cfg.min_size_requirement)
    throw InsufficientDataError("get more data: n_rows " + num(n) + " < min_size_requirement " +
                                num(cfg.min_size_requirement));

  Recommendation rec;
  rec.heuristic = Heuristic::CheatSheet;
  rec.problem_type = pt;
  rec.metric_set = select_metrics(pt);
  auto node = [&](std::string rule, std::string subject, std::string why) {
    rec.trace.push_back({std::move(rule), Verdict::Fired, std::move(subject), std::move(why)});
  };
  node("cs_start", "dataset",
       "n_rows " + num(n) + " >= min_size_requirement " + num(cfg.min_size_requirement));

  const bool under_100k = n < cfg.cheatsheet_100k_boundary;
  const bool under_10k = n < cfg.cheatsheet_10k_boundary;
  const std::string lt100 = num(n) + (under_100k ? " < " : " >= ") + num(cfg.cheatsheet_100k_boundary);
  const std::string lt10 = num(n) + (under_10k ? " < " : " >= ") + num(cfg.cheatsheet_10k_boundary);
  std::vector<std::string> path;

  switch (pt) {
  case ProblemType::BinaryClassification:
  case ProblemType::MulticlassClassification:
    node("cs_predicting_category", std::string(to_string(pt)), "predicting a category with labeled data");
    node("cs_samples_lt_100k", "dataset", "n_rows " + lt100);
    if (under_100k) {
      node("cs_text_data", "dataset", "non-text branch: LinearSVC, then KNeighbors, then SVC/ensembles");
      path = {"LinearSVC", "KNeighborsClassifier", "SVC", "EnsembleClassifiers"};
    } else {
      path = {"SGDClassifier", "KernelApproximation"};
    }
    break;
  case ProblemType::Regression:
    node("cs_predicting_quantity", std::string(to_string(pt)), "predicting a quantity");
    node("cs_samples_lt_100k", "dataset", "n_rows " + lt100);
    if (!under_100k) {
      path = {"SGDRegressor"};
    } else if (reqs.few_important_features) {
      node("cs_few_features_important", "requirements", "few features should be important: sparse linear models");
      path = {"Lasso", "ElasticNet"};
    } else {
      node("cs_few_features_important", "requirements", "not flagged: dense linear, then kernel, then ensembles");
      path = {"Ridge", "SVR_linear", "SVR_rbf", "EnsembleRegressors"};
    }
    break;
  case ProblemType::Clustering:
    node("cs_clustering", std::string(to_string(pt)), "no target: grouping task");
    node("cs_categories_known", "requirements",
         reqs.cluster_count_known ? "number of categories known" : "number of categories unknown");
    node("cs_samples_lt_10k", "dataset", "n_rows " + lt10);
    if (reqs.cluster_count_known)
      path = under_10k ? std::vector<std::string>{"KMeans", "SpectralClustering", "GaussianMixture"}
                       : std::vector<std::string>{"MiniBatchKMeans"};
    else if (under_10k)
      path = {"MeanShift", "VBGMM"};
    else
      throw EmptyRecommendationError(
          "cheat-sheet dead end: unknown category count with n_rows " + lt10);
    break;
  case ProblemType::DimensionalityReduction:
    node("cs_dimensionality_reduction", std::string(to_string(pt)), "just looking: reduce dimensions");
    node("cs_samples_lt_10k", "dataset", "n_rows " + lt10);
    path = under_10k ? std::vector<std::string>{"PCA", "Isomap", "SpectralEmbedding", "LocallyLinearEmbedding"}
                     : std::vector<std::string>{"PCA", "KernelApproximation"};
    break;
  }

  const auto& catalog = builtin_catalog();
  for (std::size_t i = 0; i < path.size(); ++i) {
    catalog.at(path[i]);
    rec.ranked.push_back(path[i]);
    rec.trace.push_back({"cs_leaf", Verdict::OrderedBy, path[i],
                         "flowchart position " + num(i + 1) + " of " + num(path.size())});
    TransitionNote note{i, path[i], {}, {}};
    if (i + 1 < path.size()) {
      note.rule = "cs_not_working";
      note.note = "if " + path[i] + " is not working => try " + path[i + 1];
    } else {
      note.rule = "exhausted";
      note.note = "end of the flowchart path";
    }
    rec.transition_notes.push_back(std::move(note));
  }
  for (const auto& m : catalog.entries()) {
    if (!m.supports(pt) || std::find(path.begin(), path.end(), m.name) != path.end()) continue;
    rec.trace.push_back({"cs_not_on_path", Verdict::FilteredOut, m.name,
                         "not a leaf on the traversed flowchart path"});
  }
  return rec;
}

std::string explain_text(const Recommendation& rec) {
  std::ostringstream os;
  os << to_string(rec.heuristic) << " recommendation for " << to_string(rec.problem_type) << "\n";
  os << "metrics:";
  for (std::size_t i = 0; i < rec.metric_set.metrics.size(); ++i)
    os << (i ? ", " : " ") << rec.metric_set.metrics[i];
  os << " (primary: " << rec.metric_set.primary << ")\n";
  os << "ranked:\n";
  for (std::size_t i = 0; i < rec.ranked.size(); ++i) os << "  " << i + 1 << ". " << rec.ranked[i] << "\n";
  os << "trace:\n";
  for (const auto& e : rec.trace)
    os << "  [" << e.rule_id << "] " << e.subject << " " << to_string(e.verdict) << ": " << e.rationale
       << "\n";
  os << "transitions:\n";
  for (const auto& t : rec.transition_notes)
    os << "  step " << t.step << " " << t.model << " [" << t.rule << "]: " << t.note << "\n";
  return os.str();
}

std::string generate_prompt(const DatasetProfile& profile, std::string_view objective) {
  std::string out = "Given the attached dataset {" + profile.dataset + "}, ";
  if (profile.target) out += "with the target variable in column {'" + *profile.target + "'}, ";
  out += "and the objective of ";
  out += objective;
  out +=
      ", identify the most suitable machine learning model(s) to solve this issue. Explain your "
      "choice(s) and the underlying modeling assumptions and factors that guided your decision. "
      "Outline your decision-making process in detail. If multiple models are viable, rank them "
      "in order of preference, and describe the criteria for transitioning from one model to "
      "another in the evaluation process.";
  return out;
}

Configuration dataset_facts(const DatasetProfile& profile, const Requirements& reqs,
                            const HeuristicConfig& cfg) {
  Configuration facts;
  auto& s = facts.selected;
  const std::size_t n_features = profile.n_columns - (profile.target ? 1 : 0);
  if (profile.n_rows >= cfg.min_size_requirement) s.insert("SizeAtLeastMin");
  if (!cfg.max_features_allowed || n_features <= *cfg.max_features_allowed) s.insert("FeaturesWithinMax");
  for (const auto& [name, type] : profile.column_types) {
    if (profile.target && name == *profile.target) continue;
    switch (type) {
    case ColumnType::Numerical: s.insert("Numerical"); break;
    case ColumnType::BinaryCategorical: s.insert("Binary"); break;
    case ColumnType::Categorical: s.insert("Categorical"); break;
    case ColumnType::Text: s.insert("Text"); break;
    case ColumnType::TimeSeries: s.insert("TimeSeries"); break;
    case ColumnType::Image: s.insert("Image"); break;
    }
  }
  const auto& q = profile.quality;
  if (q.missing_data) s.insert("MissingData");
  if (q.outliers) s.insert("Outliers");
  if (q.noise) s.insert("Noise");
  if (q.unbalanced) s.insert("Unbalanced");
  switch (resolve_problem(profile, reqs)) {
  case ProblemType::BinaryClassification:
  case ProblemType::MulticlassClassification: s.insert("Classification"); break;
  case ProblemType::Regression: s.insert("Regression"); break;
  case ProblemType::Clustering: s.insert("Clustering"); break;
  case ProblemType::DimensionalityReduction: s.insert("DimensionalityReduction"); break;
  }
  s.insert(reqs.limited_resources ? "LimitedResources" : "SufficientResources");
  if (reqs.interpretability_required) s.insert("Interpretability");
  return facts;
}

} // namespace modelsel
