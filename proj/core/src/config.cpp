#include "modelsel/config.hpp"

#include "modelsel/io.hpp"

#include <cstdlib>

namespace modelsel {

namespace {

Json to_json(const ProfileOptions& o) {
  return Json{{"imbalance_threshold", o.imbalance_threshold},
              {"iqr_multiplier", o.iqr_multiplier},
              {"min_categorical_cutoff", o.min_categorical_cutoff},
              {"categorical_fraction", o.categorical_fraction}};
}

ProfileOptions profile_options_from_json(const Json& j) {
  ProfileOptions o;
  auto num = [&](const char* k) {
    const auto& v = j.at(k);
    if (!v.is_number()) throw SyntaxError(std::string("config: 'profile.") + k + "' must be a number");
    return v.get<double>();
  };
  o.imbalance_threshold = num("imbalance_threshold");
  o.iqr_multiplier = num("iqr_multiplier");
  o.categorical_fraction = num("categorical_fraction");
  const auto& cut = j.at("min_categorical_cutoff");
  if (!cut.is_number_unsigned()) throw SyntaxError("config: 'profile.min_categorical_cutoff' must be a count");
  o.min_categorical_cutoff = cut.get<std::size_t>();
  if (!(o.imbalance_threshold > 0.0 && o.imbalance_threshold <= 0.5))
    throw DomainError("config: imbalance_threshold must be in (0, 0.5]");
  if (!(o.iqr_multiplier > 0.0)) throw DomainError("config: iqr_multiplier must be positive");
  if (!(o.categorical_fraction > 0.0 && o.categorical_fraction <= 1.0))
    throw DomainError("config: categorical_fraction must be in (0, 1]");
  return o;
}

// Overlays `patch` onto `base`, rejecting keys `base` does not have.
// Satisfaction thresholds merge per metric instead of replacing the map.
void overlay(Json& base, const Json& patch, const std::string& where) {
  if (!patch.is_object()) throw SyntaxError("config: '" + where + "' must be an object");
  for (const auto& [k, v] : patch.items()) {
    auto it = base.find(k);
    if (it == base.end()) throw SyntaxError("config: unknown key '" + where + "." + k + "'");
    if (k == "satisfaction") {
      if (!v.is_object()) throw SyntaxError("config: '" + where + ".satisfaction' must be an object");
      for (const auto& [m, t] : v.items()) (*it)[m] = t;
    } else {
      *it = v;
    }
  }
}

} // namespace

AppConfig config_from_json_text(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw SyntaxError("config: top level must be an object");
  AppConfig defaults;
  Json heuristic = to_json(defaults.heuristic);
  Json transition = to_json(defaults.policy);
  Json profile = to_json(defaults.profile);
  for (const auto& [k, v] : j.items()) {
    if (k == "heuristic") overlay(heuristic, v, k);
    else if (k == "transition") overlay(transition, v, k);
    else if (k == "profile") overlay(profile, v, k);
    else throw SyntaxError("config: unknown section '" + k + "'");
  }
  AppConfig c;
  c.heuristic = heuristic_config_from_json(heuristic);
  c.policy = policy_from_json(transition);
  c.profile = profile_options_from_json(profile);
  return c;
}

AppConfig load_config(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return config_from_json_text(j.dump());
  } catch (const SyntaxError& e) {
    throw SyntaxError(path.string() + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

AppConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return load_config(*explicit_path);
  if (const char* env = std::getenv("MODELSEL_CONFIG"); env && *env) return load_config(env);
  return {};
}

} // namespace modelsel
