#pragma once

#include "modelsel/heuristics.hpp"
#include "modelsel/profile.hpp"
#include "modelsel/transition.hpp"

#include <filesystem>
#include <optional>

namespace modelsel {

/// Everything tunable from a config file:
///
///   { "heuristic":  { "svm_row_limit": 10000, ... },
///     "transition": { "satisfaction": {"roc_auc": 0.9}, "max_steps": 3, ... },
///     "profile":    { "imbalance_threshold": 0.4, ... } }
///
/// Every section and key is optional; omitted keys keep their defaults.
struct AppConfig {
  HeuristicConfig heuristic;
  TransitionPolicy policy;
  ProfileOptions profile;
};

/// Throws SyntaxError on unknown keys or wrong types, DomainError when a
/// value is out of range.
AppConfig config_from_json_text(std::string_view text);
AppConfig load_config(const std::filesystem::path& path);

/// `explicit_path` if given, else $MODELSEL_CONFIG if set, else defaults.
AppConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path);

} // namespace modelsel
