#pragma once

// JSON encodings of the public value types. Key order is fixed so output is
// byte-stable; every *_from_json accepts what the matching *_to_json emits.
// Shape errors (missing key, wrong type, unknown enum name) raise SyntaxError.

#include "modelsel/compare.hpp"
#include "modelsel/config.hpp"
#include "modelsel/feature_model.hpp"
#include "modelsel/heuristics.hpp"
#include "modelsel/profile.hpp"
#include "modelsel/transition.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string_view>

namespace modelsel {

using Json = nlohmann::ordered_json;

/// Throws SyntaxError for malformed JSON text.
Json parse_json(std::string_view text);
/// Throws IoError when the file cannot be read, SyntaxError when malformed.
Json read_json_file(const std::filesystem::path& path);

Json to_json(const DatasetProfile& p);
DatasetProfile profile_from_json(const Json& j);

Json to_json(const ExplanationTrace& t);
ExplanationTrace trace_from_json(const Json& j);

Json to_json(const Recommendation& r);
Recommendation recommendation_from_json(const Json& j);

Json to_json(const MetricReport& r);
MetricReport metric_report_from_json(const Json& j);

Json to_json(const TransitionPolicy& p);
TransitionPolicy policy_from_json(const Json& j);

Json to_json(const TransitionDecision& d);
TransitionDecision decision_from_json(const Json& j);

Json to_json(const SelectionState& s);
SelectionState state_from_json(const Json& j);

Json to_json(const HeuristicConfig& c);
HeuristicConfig heuristic_config_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const Configuration& c);
Json to_json(const Comparison& c);

} // namespace modelsel
