#pragma once

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modelsel {

/// A set of selected feature names.
struct Configuration {
  std::set<std::string, std::less<>> selected;

  bool contains(std::string_view name) const { return selected.find(name) != selected.end(); }
  bool operator==(const Configuration&) const = default;
};

/// Immutable propositional formula over feature-name atoms. Copies share
/// structure; instances are safe to share across threads.
class Formula {
public:
  enum class Kind { Atom, Not, And, Or, Implies, Iff };

  static Formula atom(std::string name);
  static Formula negation(Formula operand);
  /// n-ary conjunction; a single operand is returned unchanged.
  static Formula conjunction(std::vector<Formula> operands);
  static Formula disjunction(std::vector<Formula> operands);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  Kind kind() const noexcept;
  /// Atom name. Empty for non-atoms.
  const std::string& name() const noexcept;
  std::span<const Formula> operands() const noexcept;

  /// All atom names, sorted.
  std::set<std::string, std::less<>> atoms() const;

  friend bool operator==(const Formula& a, const Formula& b);

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Evaluates `f` with every atom true iff its name is selected.
bool eval_formula(const Formula& f, const Configuration& assignment);

/// Renders in DSL syntax with the minimum parentheses needed to re-parse to
/// the same tree.
std::string to_string(const Formula& f);

} // namespace modelsel
