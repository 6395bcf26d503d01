// modelsel: profile datasets, recommend models, check feature models and
// drive a model-selection session from the command line.
//
// Exit codes: 0 success, 1 domain failure, 2 I/O or syntax failure.

#include "modelsel/compare.hpp"
#include "modelsel/config.hpp"
#include "modelsel/feature_model.hpp"
#include "modelsel/heuristics.hpp"
#include "modelsel/io.hpp"
#include "modelsel/profile.hpp"
#include "modelsel/table.hpp"
#include "modelsel/transition.hpp"

#ifdef MODELSEL_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace ms = modelsel;

namespace {

enum Exit { kOk = 0, kDomain = 1, kSyntax = 2 };

struct Globals {
  std::optional<std::string> config_path;
  std::string format = "json";
  int verbosity = 0;
  ms::AppConfig config;
};

void log(const Globals& g, const std::string& msg) {
  if (g.verbosity > 0) std::cerr << "modelsel: " << msg << '\n';
}

void emit(const Globals& g, const ms::Json& j, const std::function<std::string()>& text) {
  if (g.format == "text") std::cout << text();
  else std::cout << j.dump(2) << '\n';
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ms::IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw ms::IoError("cannot write '" + path + "'");
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(list);
  while (std::getline(ss, cur, ',')) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

// ---- requirement flags shared by recommend and compare ------------------

struct ReqFlags {
  bool nonlinear = false;
  bool limited = false;
  bool interpretability = false;
  bool multicollinearity = false;
  bool few_important = false;
  bool unknown_clusters = false;
  std::vector<std::string> ethical;
  std::string objective;
  std::string problem;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--nonlinear", nonlinear, "Non-linear relationships are suspected");
    cmd->add_flag("--limited-resources", limited, "Computational resources are limited");
    cmd->add_flag("--interpretability", interpretability, "Interpretability is required");
    cmd->add_flag("--multicollinearity", multicollinearity, "Multicollinearity is suspected");
    cmd->add_flag("--few-important-features", few_important, "Only a few features should matter (regression)");
    cmd->add_flag("--unknown-cluster-count", unknown_clusters, "Number of clusters is not known");
    cmd->add_option("--ethical", ethical, "Ethical consideration to record in the trace (repeatable)");
    cmd->add_option("--objective", objective, "Objective of the modeling task");
    cmd->add_option("--problem", problem, "Override the inferred problem type");
  }

  ms::Requirements build() const {
    ms::Requirements r;
    r.nonlinear_suspected = nonlinear;
    r.limited_resources = limited;
    r.interpretability_required = interpretability;
    r.multicollinearity_suspected = multicollinearity;
    r.few_important_features = few_important;
    r.cluster_count_known = !unknown_clusters;
    r.ethical_flags.insert(ethical.begin(), ethical.end());
    r.objective = objective;
    if (!problem.empty()) {
      r.requested_problem = ms::parse_problem_type(problem);
      if (!r.requested_problem) throw ms::DomainError("unknown problem type '" + problem + "'");
    }
    return r;
  }
};

ms::DatasetProfile load_profile(const std::string& path) {
  return ms::profile_from_json(ms::read_json_file(path));
}

ms::FeatureModel load_model(const std::string& path) {
  const auto text = read_text(path);
  try {
    return ms::parse_feature_model(text);
  } catch (const ms::ParseError& e) {
    throw ms::SyntaxError(path + ":" + e.what());
  }
}

std::string profile_text(const ms::DatasetProfile& p) {
  std::ostringstream os;
  os << (p.dataset.empty() ? "<dataset>" : p.dataset) << ": " << p.n_rows << " rows, " << p.n_columns
     << " columns\n";
  for (const auto& [name, type] : p.column_types)
    os << "  " << name << ": " << ms::to_string(type) << (p.target == name ? "  (target)" : "") << '\n';
  const auto& q = p.quality;
  os << "missing_data: " << std::boolalpha << q.missing_data << " (worst " << q.worst_fraction << ")\n"
     << "outliers: " << q.outliers;
  for (std::size_t i = 0; i < q.affected_columns.size(); ++i)
    os << (i ? ", " : " [") << q.affected_columns[i] << (i + 1 == q.affected_columns.size() ? "]" : "");
  os << "\nunbalanced: " << q.unbalanced;
  if (q.minority_ratio) os << " (minority " << *q.minority_ratio << ")";
  os << '\n';
  return os.str();
}

std::string decision_text(const ms::TransitionDecision& d) {
  std::string s = std::string(ms::to_string(d.kind)) + "(" + std::string(ms::to_string(d.reason));
  if (d.next_model) s += " -> " + *d.next_model;
  std::ostringstream os;
  os << s;
  if (d.best) os << ", best " << d.best->model << " @ " << d.best->value;
  os << ")  [" << d.rule << "] " << d.detail << '\n';
  return os.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-selection heuristics: dataset profiling, ranked recommendations, feature models"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON config file (default: $MODELSEL_CONFIG)")
      ->check(CLI::ExistingFile);
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_flag("-v,--verbose", g.verbosity, "Log progress to stderr");

  // profile
  auto* profile = app.add_subcommand("profile", "Profile a CSV dataset")->fallthrough();
  std::string csv_path, target, dataset_name;
  char delimiter = ',';
  bool no_header = false;
  profile->add_option("csv", csv_path, "CSV file")->required();
  profile->add_option("--target", target, "Target column");
  profile->add_option("--name", dataset_name, "Dataset name (default: file name)");
  profile->add_option("--delimiter", delimiter, "Field delimiter");
  profile->add_flag("--no-header", no_header, "First row is data");

  // recommend
  auto* recommend = app.add_subcommand("recommend", "Rank candidate models for a profile")->fallthrough();
  std::string profile_path, heuristic_name = "gpt";
  ReqFlags req_flags;
  recommend->add_option("--profile", profile_path, "Profile JSON")->required();
  recommend->add_option("--heuristic", heuristic_name, "gpt or cheatsheet")->capture_default_str();
  req_flags.attach(recommend);

  // compare
  auto* compare = app.add_subcommand("compare", "Run both heuristics side by side")->fallthrough();
  compare->add_option("--profile", profile_path, "Profile JSON")->required();
  req_flags.attach(compare);

  // validate
  auto* validate = app.add_subcommand("validate", "Check a configuration against a feature model")->fallthrough();
  std::string model_path, config_list;
  validate->add_option("--model", model_path, "Feature model (.fml)")->required();
  validate->add_option("--config", config_list, "Comma-separated selected feature names")->required();

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "List valid configurations of a feature model")->fallthrough();
  std::size_t limit = 1000;
  bool count_only = false;
  enumerate->add_option("--model", model_path, "Feature model (.fml)")->required();
  enumerate->add_option("--limit", limit, "Maximum configurations listed")->capture_default_str();
  enumerate->add_flag("--count", count_only, "Only count valid configurations");

  // print
  auto* print = app.add_subcommand("print", "Parse a feature model and print it canonically")->fallthrough();
  print->add_option("--model", model_path, "Feature model (.fml)")->required();

  // session
  auto* session = app.add_subcommand("session", "Drive the model-transition state machine")->fallthrough();
  session->require_subcommand(1);
  std::string rec_path, state_path, report_path, write_state;
  auto* start = session->add_subcommand("start", "Open a session on a recommendation")->fallthrough();
  start->add_option("--recommendation", rec_path, "Recommendation JSON")->required();
  start->add_option("--write-state", write_state, "Also write the state JSON to this file");
  auto* obs = session->add_subcommand("observe", "Feed one metric report")->fallthrough();
  obs->add_option("--state", state_path, "Session state JSON")->required();
  obs->add_option("--report", report_path, "Metric report JSON")->required();
  obs->add_option("--write-state", write_state, "Also write the new state JSON to this file");

  auto* replay = session->add_subcommand("replay", "Run a session over an array of reports, matched by model")
                     ->fallthrough();
  replay->add_option("--recommendation", rec_path, "Recommendation JSON")->required();
  replay->add_option("--reports", report_path, "JSON array of metric reports")->required();

  // prompt
  auto* prompt = app.add_subcommand("prompt", "Print the elicitation prompt for a dataset")->fallthrough();
  std::string objective;
  prompt->add_option("--profile", profile_path, "Profile JSON")->required();
  prompt->add_option("--objective", objective, "Objective of the modeling task")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kSyntax;
  }

  try {
    g.config = ms::resolve_config(g.config_path ? std::optional<std::filesystem::path>(*g.config_path) : std::nullopt);

    if (*profile) {
      ms::CsvOptions opts{delimiter, !no_header};
      log(g, "reading " + csv_path);
      const auto table = ms::load_table_file(csv_path, opts);
      const auto name = dataset_name.empty() ? std::filesystem::path(csv_path).filename().string() : dataset_name;
      const auto p = ms::profile_dataset(table, target.empty() ? std::nullopt : std::optional(target), name,
                                         g.config.profile);
      emit(g, ms::to_json(p), [&] { return profile_text(p); });
    } else if (*recommend) {
      const auto h = ms::parse_heuristic(heuristic_name == "gpt" ? "GPT" : heuristic_name == "cheatsheet" ? "CheatSheet" : heuristic_name);
      if (!h) throw ms::DomainError("unknown heuristic '" + heuristic_name + "' (expected gpt or cheatsheet)");
      const auto p = load_profile(profile_path);
      const auto reqs = req_flags.build();
      const auto rec = *h == ms::Heuristic::Gpt ? ms::recommend_gpt(p, reqs, g.config.heuristic)
                                                : ms::recommend_cheatsheet(p, g.config.heuristic, reqs);
      emit(g, ms::to_json(rec), [&] { return ms::explain_text(rec); });
    } else if (*compare) {
      const auto c = ms::compare_heuristics(load_profile(profile_path), req_flags.build(), g.config.heuristic);
      emit(g, ms::to_json(c), [&] {
        std::string s = "GPT:\n" + ms::explain_text(c.gpt) + "\nCheatSheet:\n" + ms::explain_text(c.cheatsheet) +
                        "\noverlap:";
        for (const auto& n : c.overlap) s += " " + n;
        return s + "\n";
      });
    } else if (*validate) {
      const auto model = load_model(model_path);
      ms::Configuration cfg;
      for (auto& n : split_names(config_list)) cfg.selected.insert(std::move(n));
      const auto report = ms::validate_configuration(model, cfg);
      emit(g, ms::to_json(report), [&] {
        std::string s = report.valid() ? "valid\n" : "";
        for (const auto& v : report.violations)
          s += std::string(ms::to_string(v.kind)) + " " + v.subject + ": " + v.detail + "\n";
        return s;
      });
      return report.valid() ? kOk : kDomain;
    } else if (*enumerate) {
      const auto model = load_model(model_path);
      if (count_only) {
        const auto n = ms::count_configurations(model);
        emit(g, ms::Json{{"features", model.size()}, {"count", n}}, [&] { return std::to_string(n) + "\n"; });
      } else {
        const auto cfgs = ms::enumerate_configurations(model, limit);
        ms::Json arr = ms::Json::array();
        for (const auto& c : cfgs) arr.push_back(ms::to_json(c));
        emit(g, ms::Json{{"features", model.size()}, {"listed", cfgs.size()}, {"configurations", arr}}, [&] {
          std::string s;
          for (const auto& c : cfgs) {
            bool first = true;
            for (const auto& n : c.selected) s += (first ? "" : ",") + n, first = false;
            s += "\n";
          }
          return s;
        });
      }
    } else if (*print) {
      std::cout << ms::to_fml(load_model(model_path));
    } else if (*session) {
      if (*start) {
        const auto rec = ms::recommendation_from_json(ms::read_json_file(rec_path));
        const auto st = ms::init_session(rec, g.config.policy);
        const auto sj = ms::to_json(st);
        if (!write_state.empty()) write_text(write_state, sj.dump(2) + "\n");
        emit(g, ms::Json{{"current_model", st.current_model()}, {"state", sj}},
             [&] { return "session started at " + st.current_model() + "\n"; });
      } else if (*replay) {
        const auto rec = ms::recommendation_from_json(ms::read_json_file(rec_path));
        const auto arr = ms::read_json_file(report_path);
        if (!arr.is_array()) throw ms::SyntaxError(report_path + ": expected a JSON array of reports");
        std::vector<ms::MetricReport> reports;
        for (const auto& r : arr) reports.push_back(ms::metric_report_from_json(r));
        auto st = ms::init_session(rec, g.config.policy);
        ms::Json decisions = ms::Json::array();
        std::string text;
        while (!st.stopped()) {
          auto it = std::find_if(reports.begin(), reports.end(),
                                 [&](const ms::MetricReport& r) { return r.model == st.current_model(); });
          if (it == reports.end()) throw ms::DomainError("no report for '" + st.current_model() + "'");
          auto [next, decision] = ms::observe(st, *it);
          log(g, st.current_model() + ": " + std::string(ms::to_string(decision.kind)));
          decisions.push_back(ms::to_json(decision));
          text += decision_text(decision);
          st = std::move(next);
        }
        emit(g, ms::Json{{"decisions", decisions}, {"state", ms::to_json(st)}}, [&] { return text; });
      } else {
        const auto st = ms::state_from_json(ms::read_json_file(state_path));
        const auto report = ms::metric_report_from_json(ms::read_json_file(report_path));
        const auto [next, decision] = ms::observe(st, report);
        const auto sj = ms::to_json(next);
        if (!write_state.empty()) write_text(write_state, sj.dump(2) + "\n");
        emit(g, ms::Json{{"decision", ms::to_json(decision)}, {"state", sj}}, [&] { return decision_text(decision); });
      }
    } else if (*prompt) {
      std::cout << ms::generate_prompt(load_profile(profile_path), objective) << '\n';
    }
    return kOk;
  } catch (const ms::DomainError& e) {
    std::cerr << "modelsel: " << e.what() << '\n';
    return kDomain;
  } catch (const ms::Error& e) {
    std::cerr << "modelsel: " << e.what() << '\n';
    return kSyntax;
  } catch (const std::exception& e) {
    std::cerr << "modelsel: " << e.what() << '\n';
    return kSyntax;
  }
}
