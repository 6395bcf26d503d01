#include "modelsel/catalog.hpp"

#include "modelsel/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace modelsel {

std::string_view to_string(ModelFamily f) {
  switch (f) {
  case ModelFamily::Linear: return "Linear";
  case ModelFamily::Tree: return "Tree";
  case ModelFamily::Ensemble: return "Ensemble";
  case ModelFamily::Kernel: return "Kernel";
  case ModelFamily::Neighbors: return "Neighbors";
  case ModelFamily::Probabilistic: return "Probabilistic";
  case ModelFamily::NeuralNet: return "NeuralNet";
  case ModelFamily::Clustering: return "Clustering";
  case ModelFamily::Projection: return "Projection";
  }
  return "?";
}

bool ModelCandidate::supports(ProblemType t) const {
  return std::find(problem_types.begin(), problem_types.end(), t) != problem_types.end();
}

ModelCatalog::ModelCatalog(std::vector<ModelCandidate> entries) : entries_(std::move(entries)) {
  std::unordered_set<std::string> names;
  for (const auto& e : entries_) {
    if (!names.insert(e.name).second) throw DomainError("duplicate catalog entry '" + e.name + "'");
    if (e.complexity < 1 || e.complexity > 6 || e.interpretability < 1 || e.interpretability > 3 ||
        e.overfitting_robustness < 1 || e.overfitting_robustness > 3 || e.cost < 1 || e.cost > 3)
      throw DomainError("catalog entry '" + e.name + "' has an out-of-range ordinal");
    if (e.problem_types.empty())
      throw DomainError("catalog entry '" + e.name + "' supports no problem type");
  }
}

const ModelCandidate* ModelCatalog::find(std::string_view name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const ModelCandidate& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

const ModelCandidate& ModelCatalog::at(std::string_view name) const {
  if (const auto* e = find(name)) return *e;
  throw DomainError("unknown model '" + std::string(name) + "'");
}

std::size_t ModelCatalog::index_of(std::string_view name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const ModelCandidate& e) { return e.name == name; });
  return static_cast<std::size_t>(it - entries_.begin());
}

namespace {

using PT = ProblemType;
using F = ModelFamily;
using V = Vocabulary;

const std::vector<PT> kClass{PT::BinaryClassification, PT::MulticlassClassification};
const std::vector<PT> kReg{PT::Regression};
const std::vector<PT> kClust{PT::Clustering};
const std::vector<PT> kDim{PT::DimensionalityReduction};

std::vector<PT> merge(std::vector<PT> a, const std::vector<PT>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// complexity: linear 1, tree/regularised linear 2, forest 3, boosting 4,
// SVM/KNN 5, neural 6. interpretability: linear & tree 3, KNN 2, the rest 1.
// robustness: forest 3, regularised linear 2, boosting/NN/single tree 1.
ModelCatalog make_catalog() {
  // clang-format off
  return ModelCatalog({
    // name                          problem types          cx ip mixed rob  nonlin cost family         vocabulary
    {"LogisticRegression",           kClass,                 1, 3, false, 2, false, 1, F::Linear,        V::Gpt},
    {"DecisionTreeClassifier",       kClass,                 2, 3, true,  1, true,  1, F::Tree,          V::Gpt},
    {"RandomForestClassifier",       kClass,                 3, 1, true,  3, true,  2, F::Ensemble,      V::Gpt},
    {"GradientBoostingClassifier",   kClass,                 4, 1, true,  1, true,  3, F::Ensemble,      V::Gpt},
    {"SVC",                          kClass,                 5, 1, false, 2, true,  3, F::Kernel,        V::Both},
    {"NeuralNetwork",                merge(kClass, kReg),    6, 1, true,  1, true,  3, F::NeuralNet,     V::Gpt},
    {"NaiveBayes",                   kClass,                 1, 3, false, 2, false, 1, F::Probabilistic, V::CatalogOnly},
    {"KNeighborsClassifier",         kClass,                 5, 2, false, 2, true,  2, F::Neighbors,     V::CheatSheet},
    {"LinearSVC",                    kClass,                 5, 1, false, 2, false, 2, F::Linear,        V::CheatSheet},
    {"SGDClassifier",                kClass,                 2, 3, false, 2, false, 1, F::Linear,        V::CheatSheet},
    {"KernelApproximation",          merge(kClass, kDim),    3, 1, false, 2, true,  2, F::Kernel,        V::CheatSheet},
    {"EnsembleClassifiers",          kClass,                 4, 1, true,  3, true,  3, F::Ensemble,      V::CheatSheet},

    {"LinearRegression",             kReg,                   1, 3, false, 2, false, 1, F::Linear,        V::Gpt},
    {"Ridge",                        kReg,                   2, 3, false, 2, false, 1, F::Linear,        V::Both},
    {"Lasso",                        kReg,                   2, 3, false, 2, false, 1, F::Linear,        V::Both},
    {"ElasticNet",                   kReg,                   2, 3, false, 2, false, 1, F::Linear,        V::CheatSheet},
    {"PolynomialRegression",         kReg,                   2, 2, false, 1, true,  1, F::Linear,        V::CatalogOnly},
    {"RandomForestRegressor",        kReg,                   3, 1, true,  3, true,  2, F::Ensemble,      V::Gpt},
    {"GradientBoostingRegressor",    kReg,                   4, 1, true,  1, true,  3, F::Ensemble,      V::Gpt},
    {"SVR",                          kReg,                   5, 1, false, 2, true,  3, F::Kernel,        V::Gpt},
    {"SVR_linear",                   kReg,                   5, 1, false, 2, false, 2, F::Kernel,        V::CheatSheet},
    {"SVR_rbf",                      kReg,                   5, 1, false, 2, true,  3, F::Kernel,        V::CheatSheet},
    {"EnsembleRegressors",           kReg,                   4, 1, true,  3, true,  3, F::Ensemble,      V::CheatSheet},
    {"SGDRegressor",                 kReg,                   2, 3, false, 2, false, 1, F::Linear,        V::CheatSheet},

    {"KMeans",                       kClust,                 1, 2, false, 2, false, 1, F::Clustering,    V::Both},
    {"HierarchicalClustering",       kClust,                 2, 3, false, 2, false, 2, F::Clustering,    V::Gpt},
    {"GaussianMixture",              kClust,                 3, 2, false, 2, false, 2, F::Clustering,    V::Both},
    {"DBSCAN",                       kClust,                 3, 2, false, 2, true,  2, F::Clustering,    V::Gpt},
    {"MeanShift",                    kClust,                 4, 2, false, 2, true,  3, F::Clustering,    V::Both},
    {"MiniBatchKMeans",              kClust,                 1, 2, false, 2, false, 1, F::Clustering,    V::CheatSheet},
    {"SpectralClustering",           kClust,                 4, 1, false, 2, true,  3, F::Clustering,    V::CheatSheet},
    {"VBGMM",                        kClust,                 4, 1, false, 2, false, 3, F::Clustering,    V::CheatSheet},

    {"PCA",                          kDim,                   1, 3, false, 2, false, 1, F::Projection,    V::Both},
    {"LDA",                          kDim,                   2, 3, false, 2, false, 1, F::Projection,    V::Gpt},
    {"QDA",                          kDim,                   3, 2, false, 2, true,  1, F::Projection,    V::Gpt},
    {"TSNE",                         kDim,                   4, 1, false, 2, true,  3, F::Projection,    V::Gpt},
    {"Autoencoder",                  kDim,                   6, 1, true,  1, true,  3, F::NeuralNet,     V::Gpt},
    {"Isomap",                       kDim,                   4, 1, false, 2, true,  2, F::Projection,    V::CheatSheet},
    {"SpectralEmbedding",            kDim,                   4, 1, false, 2, true,  2, F::Projection,    V::CheatSheet},
    {"LocallyLinearEmbedding",       kDim,                   4, 1, false, 2, true,  2, F::Projection,    V::CheatSheet},
  });
  // clang-format on
}

} // namespace

const ModelCatalog& builtin_catalog() {
  static const ModelCatalog catalog = make_catalog();
  return catalog;
}

const std::vector<std::pair<std::string, std::string>>& algorithm_option_labels(ProblemType t) {
  static const std::vector<std::pair<std::string, std::string>> classification{
      {"DecisionTree", "DecisionTreeClassifier"},
      {"NaiveBayes", "NaiveBayes"},
      {"NeuralNetwork", "NeuralNetwork"},
      {"SVM", "SVC"},
      {"K-Nearest Neighbors", "KNeighborsClassifier"},
      {"Logistic Regression", "LogisticRegression"},
      {"EnsembleMethods", "RandomForestClassifier"},
      {"DeepLearningModels", "NeuralNetwork"},
  };
  static const std::vector<std::pair<std::string, std::string>> regression{
      {"LinearRegression", "LinearRegression"},
      {"PolynomialRegression", "PolynomialRegression"},
      {"RidgeRegression", "Ridge"},
      {"LassoRegression", "Lasso"},
      {"ElasticNet", "ElasticNet"},
      {"EnsembleMethods", "RandomForestRegressor"},
      {"DeepLearningModels", "NeuralNetwork"},
  };
  static const std::vector<std::pair<std::string, std::string>> clustering{
      {"K-Means", "KMeans"},
      {"Hierarchical Clustering", "HierarchicalClustering"},
      {"DBSCAN", "DBSCAN"},
      {"Gaussian Mixture Models", "GaussianMixture"},
      {"Mean Shift", "MeanShift"},
  };
  static const std::vector<std::pair<std::string, std::string>> reduction{
      {"PCA", "PCA"}, {"t-SNE", "TSNE"}, {"LDA", "LDA"}, {"QDA", "QDA"}, {"Autoencoders", "Autoencoder"},
  };
  switch (t) {
  case ProblemType::BinaryClassification:
  case ProblemType::MulticlassClassification: return classification;
  case ProblemType::Regression: return regression;
  case ProblemType::Clustering: return clustering;
  case ProblemType::DimensionalityReduction: return reduction;
  }
  return classification;
}

} // namespace modelsel
