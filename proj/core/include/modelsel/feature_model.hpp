#pragma once

#include "modelsel/error.hpp"
#include "modelsel/formula.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modelsel {

enum class GroupKind { Mandatory, Optional, Xor, Or };

std::string_view to_string(GroupKind kind);

struct Feature;

/// Mandatory/Optional groups hold exactly one member; Xor/Or hold two or more.
struct ChildGroup {
  GroupKind kind = GroupKind::Mandatory;
  std::vector<Feature> members;

  bool operator==(const ChildGroup&) const;
};

struct Feature {
  std::string name;
  std::vector<ChildGroup> children;

  bool operator==(const Feature&) const;
};

struct NamedConstraint {
  std::string name;
  Formula formula;

  bool operator==(const NamedConstraint&) const = default;
};

/// A feature tree plus ordered cross-tree constraints. Construction checks
/// every structural invariant; a FeatureModel value is always well-formed.
class FeatureModel {
public:
  /// Throws DomainError on an invalid identifier, duplicate feature or
  /// constraint name, malformed group, or an atom naming no feature.
  FeatureModel(Feature root, std::vector<NamedConstraint> constraints);

  const Feature& root() const noexcept { return root_; }
  const std::vector<NamedConstraint>& constraints() const noexcept { return constraints_; }

  /// Feature names in tree pre-order (root first).
  const std::vector<std::string>& features() const noexcept { return preorder_; }
  std::size_t size() const noexcept { return preorder_.size(); }
  bool declares(std::string_view name) const;
  /// Pre-order index, or nullopt for an undeclared name.
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const FeatureModel& other) const {
    return root_ == other.root_ && constraints_ == other.constraints_;
  }

private:
  Feature root_;
  std::vector<NamedConstraint> constraints_;
  std::vector<std::string> preorder_;
  std::unordered_map<std::string, std::size_t> index_;
};

bool is_identifier(std::string_view text);

enum class ViolationKind {
  UnknownFeature,
  RootMissing,
  MandatoryMissing,
  XorViolation,
  OrViolation,
  DanglingChild,
  ConstraintFailed,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
};

/// Evaluates against a model; throws DomainError when `f` names an atom the
/// model does not declare.
bool eval_formula(const FeatureModel& model, const Formula& f, const Configuration& assignment);

/// Reports every violated rule. Order: unknown names (sorted), then the tree
/// in pre-order (group by group), then constraints in declaration order.
ValidationReport validate_configuration(const FeatureModel& model, const Configuration& cfg);

inline constexpr std::size_t kMaxEnumerableFeatures = 24;

/// All valid configurations, ordered by the integer value of their selection
/// bitmask (bit i = pre-order feature i), truncated at `limit`.
/// Throws DomainError when the model has more than kMaxEnumerableFeatures.
std::vector<Configuration> enumerate_configurations(const FeatureModel& model, std::size_t limit);

/// Number of valid configurations, without materializing them.
std::uint64_t count_configurations(const FeatureModel& model);

/// Parses the `.fml` feature-model DSL. Throws ParseError (with position) for
/// syntax errors, malformed groups, duplicate names and unknown atoms.
FeatureModel parse_feature_model(std::string_view text);

/// Renders `model` as DSL text that parses back to an equal model.
std::string to_fml(const FeatureModel& model);

} // namespace modelsel
