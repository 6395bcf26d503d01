#pragma once

#include "modelsel/heuristics.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace modelsel {

/// Collapses kernel-specific variants onto one name (SVR_linear, SVR_rbf -> SVR).
std::string normalize_model_name(std::string_view name);

/// The normalized name, or for the cheat-sheet's generic ensemble leaves the
/// concrete ensembles they stand for.
std::vector<std::string> expand_model_name(std::string_view name);

struct Comparison {
  Recommendation gpt;
  Recommendation cheatsheet;
  std::vector<std::string> overlap;          // normalized names, GPT rank order
  std::vector<std::string> overlap_expanded; // with ensemble expansion

  bool operator==(const Comparison&) const = default;
};

Comparison compare_heuristics(const DatasetProfile& profile, const Requirements& reqs,
                              const HeuristicConfig& cfg = {});

} // namespace modelsel
