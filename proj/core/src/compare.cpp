#include "modelsel/compare.hpp"

#include <algorithm>

namespace modelsel {

std::string normalize_model_name(std::string_view name) {
  if (name == "SVR_linear" || name == "SVR_rbf") return "SVR";
  return std::string(name);
}

std::vector<std::string> expand_model_name(std::string_view name) {
  if (name == "EnsembleClassifiers") return {"RandomForestClassifier", "GradientBoostingClassifier"};
  if (name == "EnsembleRegressors") return {"RandomForestRegressor", "GradientBoostingRegressor"};
  return {normalize_model_name(name)};
}

namespace {

template <class Expand>
std::vector<std::string> intersect(const std::vector<std::string>& gpt, const std::vector<std::string>& cs,
                                   Expand expand) {
  std::vector<std::string> other;
  for (const auto& n : cs)
    for (auto& e : expand(n)) other.push_back(std::move(e));
  std::vector<std::string> out;
  for (const auto& n : gpt) {
    for (const auto& g : expand(n)) {
      if (std::find(other.begin(), other.end(), g) != other.end() &&
          std::find(out.begin(), out.end(), g) == out.end())
        out.push_back(g);
    }
  }
  return out;
}

} // namespace

Comparison compare_heuristics(const DatasetProfile& profile, const Requirements& reqs,
                              const HeuristicConfig& cfg) {
  Comparison c{recommend_gpt(profile, reqs, cfg), recommend_cheatsheet(profile, cfg, reqs), {}, {}};
  c.overlap = intersect(c.gpt.ranked, c.cheatsheet.ranked,
                        [](const std::string& n) { return std::vector<std::string>{normalize_model_name(n)}; });
  c.overlap_expanded =
      intersect(c.gpt.ranked, c.cheatsheet.ranked, [](const std::string& n) { return expand_model_name(n); });
  return c;
}

} // namespace modelsel
