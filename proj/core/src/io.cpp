#include "modelsel/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace modelsel {

namespace {

[[noreturn]] void shape_error(const std::string& what) { throw SyntaxError("malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) shape_error(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) shape_error(std::string("missing key '") + key + "'");
  return *it;
}

std::string get_string(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) shape_error(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

double get_number(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) shape_error(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::size_t get_count(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    shape_error(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

bool get_bool(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_boolean()) shape_error(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

const Json& get_array(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) shape_error(std::string("'") + key + "' must be an array");
  return v;
}

std::vector<std::string> string_list(const Json& arr, const char* key) {
  std::vector<std::string> out;
  for (const auto& e : arr) {
    if (!e.is_string()) shape_error(std::string("'") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

bool is_null_or_absent(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null();
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class E, class Parse>
E enum_field(const Json& j, const char* key, Parse parse) {
  auto name = get_string(j, key);
  auto v = parse(name);
  if (!v) shape_error(std::string("unknown ") + key + " '" + name + "'");
  return *v;
}

ColumnType column_type_field(const Json& j, const char* key) {
  return enum_field<ColumnType>(j, key, parse_column_type);
}

Json to_json(const BestSoFar& b) { return Json{{"model", b.model}, {"value", b.value}}; }

std::optional<BestSoFar> best_from_json(const Json& j, const char* key) {
  if (is_null_or_absent(j, key)) return std::nullopt;
  const auto& b = j.at(key);
  return BestSoFar{get_string(b, "model"), get_number(b, "value")};
}

Json param_json(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else return x;
      },
      v);
}

ParamValue param_from_json(const Json& v) {
  if (v.is_null()) return std::monostate{};
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  shape_error("param values must be null, boolean, number or string");
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed ") + what + ": " + e.what());
  }
}

} // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  try {
    return parse_json(ss.str());
  } catch (const SyntaxError& e) {
    throw SyntaxError(path.string() + ": " + e.what());
  }
}

// ---- profile -------------------------------------------------------------

Json to_json(const DatasetProfile& p) {
  Json cols = Json::array();
  for (const auto& [name, type] : p.column_types) cols.push_back({{"name", name}, {"type", to_string(type)}});
  const auto& q = p.quality;
  Json quality{{"missing_data", q.missing_data},   {"worst_fraction", q.worst_fraction},
               {"outliers", q.outliers},           {"affected_columns", q.affected_columns},
               {"noise", q.noise},                 {"unbalanced", q.unbalanced},
               {"minority_ratio", optional_json(q.minority_ratio)}};
  return Json{{"dataset", p.dataset},
              {"n_rows", p.n_rows},
              {"n_columns", p.n_columns},
              {"column_types", std::move(cols)},
              {"target", optional_json(p.target)},
              {"target_type", p.target_type ? Json(to_string(*p.target_type)) : Json(nullptr)},
              {"quality", std::move(quality)}};
}

DatasetProfile profile_from_json(const Json& j) {
  return guarded("profile", [&] {
    DatasetProfile p;
    p.dataset = j.contains("dataset") ? get_string(j, "dataset") : std::string();
    p.n_rows = get_count(j, "n_rows");
    p.n_columns = get_count(j, "n_columns");
    for (const auto& c : get_array(j, "column_types"))
      p.column_types.emplace_back(get_string(c, "name"), column_type_field(c, "type"));
    if (!is_null_or_absent(j, "target")) p.target = get_string(j, "target");
    if (!is_null_or_absent(j, "target_type")) p.target_type = column_type_field(j, "target_type");
    const auto& q = field(j, "quality");
    p.quality.missing_data = get_bool(q, "missing_data");
    p.quality.worst_fraction = get_number(q, "worst_fraction");
    p.quality.outliers = get_bool(q, "outliers");
    p.quality.affected_columns = string_list(get_array(q, "affected_columns"), "affected_columns");
    p.quality.noise = get_bool(q, "noise");
    p.quality.unbalanced = get_bool(q, "unbalanced");
    if (!is_null_or_absent(q, "minority_ratio")) p.quality.minority_ratio = get_number(q, "minority_ratio");

    if (p.n_columns != p.column_types.size())
      throw DomainError("profile n_columns (" + std::to_string(p.n_columns) + ") does not match column_types (" +
                        std::to_string(p.column_types.size()) + ")");
    if (p.target && !p.type_of(*p.target)) throw DomainError("profile target '" + *p.target + "' is not a column");
    if (p.target && !p.target_type) p.target_type = p.type_of(*p.target);
    return p;
  });
}

// ---- recommendation -----------------------------------------------------

Json to_json(const ExplanationTrace& t) {
  Json out = Json::array();
  for (const auto& e : t)
    out.push_back({{"rule_id", e.rule_id},
                   {"verdict", to_string(e.verdict)},
                   {"subject", e.subject},
                   {"rationale", e.rationale}});
  return out;
}

ExplanationTrace trace_from_json(const Json& j) {
  return guarded("trace", [&] {
    if (!j.is_array()) shape_error("trace must be an array");
    ExplanationTrace t;
    for (const auto& e : j)
      t.push_back({get_string(e, "rule_id"), enum_field<Verdict>(e, "verdict", parse_verdict),
                   get_string(e, "subject"), get_string(e, "rationale")});
    return t;
  });
}

Json to_json(const Recommendation& r) {
  Json notes = Json::array();
  for (const auto& n : r.transition_notes)
    notes.push_back({{"step", n.step}, {"model", n.model}, {"rule", n.rule}, {"note", n.note}});
  return Json{{"heuristic", to_string(r.heuristic)},
              {"problem_type", to_string(r.problem_type)},
              {"ranked", r.ranked},
              {"metric_set", {{"metrics", r.metric_set.metrics}, {"primary", r.metric_set.primary}}},
              {"trace", to_json(r.trace)},
              {"transition_notes", std::move(notes)}};
}

Recommendation recommendation_from_json(const Json& j) {
  return guarded("recommendation", [&] {
    Recommendation r;
    r.heuristic = enum_field<Heuristic>(j, "heuristic", parse_heuristic);
    r.problem_type = enum_field<ProblemType>(j, "problem_type", parse_problem_type);
    r.ranked = string_list(get_array(j, "ranked"), "ranked");
    const auto& ms = field(j, "metric_set");
    r.metric_set.metrics = string_list(get_array(ms, "metrics"), "metrics");
    r.metric_set.primary = get_string(ms, "primary");
    if (j.contains("trace")) r.trace = trace_from_json(j.at("trace"));
    if (j.contains("transition_notes"))
      for (const auto& n : get_array(j, "transition_notes"))
        r.transition_notes.push_back(
            {get_count(n, "step"), get_string(n, "model"), get_string(n, "rule"), get_string(n, "note")});
    if (r.ranked.empty()) throw DomainError("recommendation has an empty ranked list");
    return r;
  });
}

// ---- transition ---------------------------------------------------------

Json to_json(const MetricReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = param_json(v);
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  return Json{{"model", r.model},
              {"params", std::move(params)},
              {"metrics", std::move(metrics)},
              {"cv_mean", optional_json(r.cv_mean)},
              {"cv_scores", optional_json(r.cv_scores)},
              {"test_score", r.test_score}};
}

MetricReport metric_report_from_json(const Json& j) {
  return guarded("metric report", [&] {
    MetricReport r;
    r.model = get_string(j, "model");
    if (!is_null_or_absent(j, "params")) {
      const auto& ps = field(j, "params");
      if (!ps.is_object()) shape_error("'params' must be an object");
      for (const auto& [k, v] : ps.items()) r.params[k] = param_from_json(v);
    }
    const auto& ms = field(j, "metrics");
    if (!ms.is_object()) shape_error("'metrics' must be an object");
    for (const auto& [k, v] : ms.items()) {
      if (!v.is_number()) shape_error("metric '" + k + "' must be a number");
      r.metrics[k] = v.get<double>();
    }
    if (!is_null_or_absent(j, "cv_mean")) r.cv_mean = get_number(j, "cv_mean");
    if (!is_null_or_absent(j, "cv_scores")) {
      std::vector<double> xs;
      for (const auto& v : get_array(j, "cv_scores")) {
        if (!v.is_number()) shape_error("'cv_scores' must hold numbers");
        xs.push_back(v.get<double>());
      }
      r.cv_scores = std::move(xs);
    }
    r.test_score = get_number(j, "test_score");
    r.validate();
    return r;
  });
}

Json to_json(const TransitionPolicy& p) {
  Json sat = Json::object();
  for (const auto& [k, v] : p.satisfaction) sat[k] = v;
  return Json{{"satisfaction", std::move(sat)},
              {"overfit_cv_std", p.overfit_cv_std},
              {"overfit_gap", p.overfit_gap},
              {"max_steps", optional_json(p.max_steps)},
              {"score_source", p.score_source == ScoreSource::CvMean ? "cv_mean" : "metrics"}};
}

TransitionPolicy policy_from_json(const Json& j) {
  return guarded("policy", [&] {
    TransitionPolicy p;
    const auto& sat = field(j, "satisfaction");
    if (!sat.is_object()) shape_error("'satisfaction' must be an object");
    p.satisfaction.clear();
    for (const auto& [k, v] : sat.items()) {
      if (!v.is_number()) shape_error("threshold '" + k + "' must be a number");
      p.satisfaction[k] = v.get<double>();
    }
    p.overfit_cv_std = get_number(j, "overfit_cv_std");
    p.overfit_gap = get_number(j, "overfit_gap");
    if (!is_null_or_absent(j, "max_steps")) p.max_steps = get_count(j, "max_steps");
    if (j.contains("score_source")) {
      auto s = get_string(j, "score_source");
      if (s == "metrics") p.score_source = ScoreSource::TestMetrics;
      else if (s == "cv_mean") p.score_source = ScoreSource::CvMean;
      else shape_error("unknown score_source '" + s + "'");
    }
    p.validate();
    return p;
  });
}

Json to_json(const TransitionDecision& d) {
  return Json{{"kind", to_string(d.kind)},
              {"reason", to_string(d.reason)},
              {"next_model", optional_json(d.next_model)},
              {"best_so_far", d.best ? to_json(*d.best) : Json(nullptr)},
              {"rule", d.rule},
              {"detail", d.detail}};
}

TransitionDecision decision_from_json(const Json& j) {
  return guarded("decision", [&] {
    TransitionDecision d;
    d.kind = enum_field<DecisionKind>(j, "kind", parse_decision_kind);
    d.reason = enum_field<DecisionReason>(j, "reason", parse_decision_reason);
    if (!is_null_or_absent(j, "next_model")) d.next_model = get_string(j, "next_model");
    d.best = best_from_json(j, "best_so_far");
    d.rule = get_string(j, "rule");
    d.detail = get_string(j, "detail");
    return d;
  });
}

Json to_json(const SelectionState& s) {
  Json history = Json::array();
  for (const auto& h : s.history) history.push_back({{"report", to_json(h.report)}, {"decision", to_json(h.decision)}});
  return Json{{"recommendation", to_json(s.recommendation)},
              {"policy", to_json(s.policy)},
              {"cursor", s.cursor},
              {"history", std::move(history)},
              {"best_so_far", s.best_so_far ? to_json(*s.best_so_far) : Json(nullptr)}};
}

SelectionState state_from_json(const Json& j) {
  return guarded("session state", [&] {
    SelectionState s;
    s.recommendation = recommendation_from_json(field(j, "recommendation"));
    s.policy = policy_from_json(field(j, "policy"));
    s.cursor = get_count(j, "cursor");
    for (const auto& h : get_array(j, "history"))
      s.history.push_back({metric_report_from_json(field(h, "report")), decision_from_json(field(h, "decision"))});
    s.best_so_far = best_from_json(j, "best_so_far");
    if (s.cursor > s.recommendation.ranked.size()) throw DomainError("session cursor is past the ranked list");
    return s;
  });
}

// ---- config & misc ------------------------------------------------------

Json to_json(const HeuristicConfig& c) {
  return Json{{"min_size_requirement", c.min_size_requirement},
              {"max_features_allowed", optional_json(c.max_features_allowed)},
              {"large_dataset_threshold", c.large_dataset_threshold},
              {"svm_row_limit", c.svm_row_limit},
              {"cheatsheet_100k_boundary", c.cheatsheet_100k_boundary},
              {"cheatsheet_10k_boundary", c.cheatsheet_10k_boundary}};
}

HeuristicConfig heuristic_config_from_json(const Json& j) {
  return guarded("heuristic config", [&] {
    HeuristicConfig c;
    c.min_size_requirement = get_count(j, "min_size_requirement");
    if (!is_null_or_absent(j, "max_features_allowed")) c.max_features_allowed = get_count(j, "max_features_allowed");
    c.large_dataset_threshold = get_count(j, "large_dataset_threshold");
    c.svm_row_limit = get_count(j, "svm_row_limit");
    c.cheatsheet_100k_boundary = get_count(j, "cheatsheet_100k_boundary");
    c.cheatsheet_10k_boundary = get_count(j, "cheatsheet_10k_boundary");
    c.validate();
    return c;
  });
}

Json to_json(const ValidationReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"kind", to_string(v.kind)}, {"subject", v.subject}, {"detail", v.detail}});
  return Json{{"valid", r.valid()}, {"violations", std::move(vs)}};
}

Json to_json(const Configuration& c) {
  Json out = Json::array();
  for (const auto& n : c.selected) out.push_back(n);
  return out;
}

Json to_json(const Comparison& c) {
  return Json{{"gpt", to_json(c.gpt)},
              {"cheatsheet", to_json(c.cheatsheet)},
              {"overlap", c.overlap},
              {"overlap_expanded", c.overlap_expanded}};
}

} // namespace modelsel
