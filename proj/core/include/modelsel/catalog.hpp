#pragma once

#include "modelsel/profile.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modelsel {

enum class ModelFamily {
  Linear,
  Tree,
  Ensemble,
  Kernel,
  Neighbors,
  Probabilistic,
  NeuralNet,
  Clustering,
  Projection,
};

std::string_view to_string(ModelFamily f);

/// Which engine may propose a catalog entry.
enum class Vocabulary {
  Gpt,        // proposed by GPT in at least one elicited scenario
  CheatSheet, // scikit-learn flowchart leaves only
  Both,
  CatalogOnly // listed as an algorithm option, never ranked by either engine
};

struct ModelCandidate {
  std::string name;
  std::vector<ProblemType> problem_types;
  int complexity = 1;             // 1..6
  int interpretability = 1;       // 1..3, higher is more interpretable
  bool handles_mixed_types = false;
  int overfitting_robustness = 1; // 1..3
  bool nonlinear_capable = false;
  int cost = 1;                   // 1..3
  ModelFamily family = ModelFamily::Linear;
  Vocabulary vocabulary = Vocabulary::CatalogOnly;

  bool supports(ProblemType t) const;
  bool in_gpt_pool() const {
    return vocabulary == Vocabulary::Gpt || vocabulary == Vocabulary::Both;
  }
};

class ModelCatalog {
public:
  /// Throws DomainError on duplicate names or out-of-range ordinals.
  explicit ModelCatalog(std::vector<ModelCandidate> entries);

  const std::vector<ModelCandidate>& entries() const noexcept { return entries_; }
  const ModelCandidate* find(std::string_view name) const;
  /// Throws DomainError for an unknown name.
  const ModelCandidate& at(std::string_view name) const;
  /// Position in catalog order; used as the last ordering tie-breaker.
  std::size_t index_of(std::string_view name) const;

private:
  std::vector<ModelCandidate> entries_;
};

/// The fixed catalog shared by both engines.
const ModelCatalog& builtin_catalog();

/// Algorithm-option labels of the overall constraint set, per problem type,
/// paired with the catalog entry that represents each label.
const std::vector<std::pair<std::string, std::string>>& algorithm_option_labels(ProblemType t);

} // namespace modelsel
