#include "modelsel/feature_model.hpp"

#include "modelsel/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

namespace modelsel {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

std::string position_prefix(std::size_t line, std::size_t column) {
  return std::to_string(line) + ":" + std::to_string(column) + ": ";
}

} // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string found,
                       std::vector<std::string> expected)
    : SyntaxError(position_prefix(line, column) + "expected " + join_expected(expected) +
                  ", found " + found),
      line_(line), column_(column), expected_(std::move(expected)) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : SyntaxError(position_prefix(line, column) + message), line_(line), column_(column) {}

std::string_view to_string(GroupKind kind) {
  switch (kind) {
  case GroupKind::Mandatory: return "mandatory";
  case GroupKind::Optional: return "optional";
  case GroupKind::Xor: return "xor";
  case GroupKind::Or: return "or";
  }
  return "?";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::UnknownFeature: return "UnknownFeature";
  case ViolationKind::RootMissing: return "RootMissing";
  case ViolationKind::MandatoryMissing: return "MandatoryMissing";
  case ViolationKind::XorViolation: return "XorViolation";
  case ViolationKind::OrViolation: return "OrViolation";
  case ViolationKind::DanglingChild: return "DanglingChild";
  case ViolationKind::ConstraintFailed: return "ConstraintFailed";
  }
  return "?";
}

bool ChildGroup::operator==(const ChildGroup& other) const {
  return kind == other.kind && members == other.members;
}

bool Feature::operator==(const Feature& other) const {
  return name == other.name && children == other.children;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

FeatureModel::FeatureModel(Feature root, std::vector<NamedConstraint> constraints)
    : root_(std::move(root)), constraints_(std::move(constraints)) {
  std::function<void(const Feature&)> visit = [&](const Feature& f) {
    if (!is_identifier(f.name)) throw DomainError("invalid feature name '" + f.name + "'");
    if (!index_.emplace(f.name, preorder_.size()).second)
      throw DomainError("duplicate feature name '" + f.name + "'");
    preorder_.push_back(f.name);
    for (const auto& group : f.children) {
      const bool single = group.kind == GroupKind::Mandatory || group.kind == GroupKind::Optional;
      if (single && group.members.size() != 1)
        throw DomainError(std::string(to_string(group.kind)) + " group under '" + f.name +
                          "' must have exactly one member");
      if (!single && group.members.size() < 2)
        throw DomainError(std::string(to_string(group.kind)) + " group under '" + f.name +
                          "' requires at least 2 members");
      for (const auto& member : group.members) visit(member);
    }
  };
  visit(root_);

  std::unordered_map<std::string, bool> seen;
  for (const auto& c : constraints_) {
    if (!is_identifier(c.name)) throw DomainError("invalid constraint name '" + c.name + "'");
    if (!seen.emplace(c.name, true).second)
      throw DomainError("duplicate constraint name '" + c.name + "'");
    for (const auto& atom : c.formula.atoms()) {
      if (!declares(atom))
        throw DomainError("constraint '" + c.name + "' names unknown feature '" + atom + "'");
    }
  }
}

bool FeatureModel::declares(std::string_view name) const {
  return index_.find(std::string(name)) != index_.end();
}

std::optional<std::size_t> FeatureModel::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool eval_formula(const FeatureModel& model, const Formula& f, const Configuration& assignment) {
  for (const auto& atom : f.atoms()) {
    if (!model.declares(atom)) throw DomainError("unknown atom '" + atom + "'");
  }
  return eval_formula(f, assignment);
}

namespace {

std::string member_list(const ChildGroup& group) {
  std::string out = "{";
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    if (i) out += ", ";
    out += group.members[i].name;
  }
  return out + "}";
}

void check_groups(const Feature& parent, const Configuration& cfg,
                  std::vector<Violation>& out) {
  const bool parent_on = cfg.contains(parent.name);
  for (const auto& group : parent.children) {
    std::size_t on = 0;
    for (const auto& m : group.members) on += cfg.contains(m.name) ? 1 : 0;

    if (!parent_on) {
      for (const auto& m : group.members) {
        if (cfg.contains(m.name))
          out.push_back({ViolationKind::DanglingChild, m.name,
                         "selected while parent '" + parent.name + "' is not"});
      }
      continue;
    }
    switch (group.kind) {
    case GroupKind::Mandatory:
      if (on == 0)
        out.push_back({ViolationKind::MandatoryMissing, group.members[0].name,
                       "mandatory child of selected '" + parent.name + "'"});
      break;
    case GroupKind::Optional:
      break;
    case GroupKind::Xor:
      if (on != 1)
        out.push_back({ViolationKind::XorViolation, parent.name,
                       "exactly one of " + member_list(group) + " required, " +
                           std::to_string(on) + " selected"});
      break;
    case GroupKind::Or:
      if (on == 0)
        out.push_back({ViolationKind::OrViolation, parent.name,
                       "at least one of " + member_list(group) + " required"});
      break;
    }
  }
  for (const auto& group : parent.children)
    for (const auto& m : group.members) check_groups(m, cfg, out);
}

} // namespace

ValidationReport validate_configuration(const FeatureModel& model, const Configuration& cfg) {
  ValidationReport report;
  for (const auto& name : cfg.selected) {
    if (!model.declares(name))
      report.violations.push_back({ViolationKind::UnknownFeature, name, "not declared in model"});
  }
  const Feature& root = model.root();
  if (!cfg.contains(root.name))
    report.violations.push_back({ViolationKind::RootMissing, root.name, "root must be selected"});
  check_groups(root, cfg, report.violations);
  for (const auto& c : model.constraints()) {
    if (!eval_formula(c.formula, cfg))
      report.violations.push_back({ViolationKind::ConstraintFailed, c.name, to_string(c.formula)});
  }
  return report;
}

namespace {

// Bitmask form of a model used only by enumeration. Validation walks the
// tree directly, so the two stay independent and can check each other.
struct CompiledGroup {
  GroupKind kind;
  std::uint32_t members;
};

struct CompiledFeature {
  std::uint32_t bit;
  std::vector<CompiledGroup> groups;
};

struct CompiledNode {
  Formula::Kind kind;
  std::uint32_t bit = 0;
  std::vector<std::size_t> operands;
};

class CompiledModel {
public:
  explicit CompiledModel(const FeatureModel& model) {
    auto bit_of = [&](const std::string& name) {
      return std::uint32_t{1} << *model.index_of(name);
    };
    std::function<void(const Feature&)> visit = [&](const Feature& f) {
      CompiledFeature cf{bit_of(f.name), {}};
      for (const auto& g : f.children) {
        std::uint32_t members = 0;
        for (const auto& m : g.members) members |= bit_of(m.name);
        cf.groups.push_back({g.kind, members});
      }
      features_.push_back(std::move(cf));
      for (const auto& g : f.children)
        for (const auto& m : g.members) visit(m);
    };
    visit(model.root());

    std::function<std::size_t(const Formula&)> compile = [&](const Formula& f) {
      CompiledNode node{f.kind(), 0, {}};
      if (f.kind() == Formula::Kind::Atom) node.bit = bit_of(f.name());
      for (const auto& op : f.operands()) node.operands.push_back(compile(op));
      nodes_.push_back(std::move(node));
      return nodes_.size() - 1;
    };
    for (const auto& c : model.constraints()) roots_.push_back(compile(c.formula));
  }

  bool valid(std::uint32_t mask) const {
    if (!(mask & 1u)) return false;
    for (const auto& f : features_) {
      const bool parent_on = (mask & f.bit) != 0;
      for (const auto& g : f.groups) {
        const int on = std::popcount(mask & g.members);
        if (!parent_on) {
          if (on) return false;
          continue;
        }
        switch (g.kind) {
        case GroupKind::Mandatory:
          if (on != 1) return false;
          break;
        case GroupKind::Optional:
          break;
        case GroupKind::Xor:
          if (on != 1) return false;
          break;
        case GroupKind::Or:
          if (on == 0) return false;
          break;
        }
      }
    }
    return std::all_of(roots_.begin(), roots_.end(),
                       [&](std::size_t r) { return eval(r, mask); });
  }

private:
  bool eval(std::size_t i, std::uint32_t mask) const {
    const CompiledNode& n = nodes_[i];
    switch (n.kind) {
    case Formula::Kind::Atom: return (mask & n.bit) != 0;
    case Formula::Kind::Not: return !eval(n.operands[0], mask);
    case Formula::Kind::And:
      for (auto op : n.operands)
        if (!eval(op, mask)) return false;
      return true;
    case Formula::Kind::Or:
      for (auto op : n.operands)
        if (eval(op, mask)) return true;
      return false;
    case Formula::Kind::Implies: return !eval(n.operands[0], mask) || eval(n.operands[1], mask);
    case Formula::Kind::Iff: return eval(n.operands[0], mask) == eval(n.operands[1], mask);
    }
    return false;
  }

  std::vector<CompiledFeature> features_;
  std::vector<CompiledNode> nodes_;
  std::vector<std::size_t> roots_;
};

} // namespace

namespace {

void check_enumerable(const FeatureModel& model) {
  const std::size_t n = model.size();
  if (n > kMaxEnumerableFeatures)
    throw DomainError("model too large for enumeration: " + std::to_string(n) +
                      " features (limit " + std::to_string(kMaxEnumerableFeatures) + ")");
}

} // namespace

std::uint64_t count_configurations(const FeatureModel& model) {
  check_enumerable(model);
  const CompiledModel compiled(model);
  const std::uint64_t end = std::uint64_t{1} << model.size();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 1; mask < end; mask += 2)
    count += compiled.valid(static_cast<std::uint32_t>(mask));
  return count;
}

std::vector<Configuration> enumerate_configurations(const FeatureModel& model, std::size_t limit) {
  check_enumerable(model);
  const std::size_t n = model.size();
  const CompiledModel compiled(model);
  std::vector<Configuration> out;
  const std::uint64_t end = std::uint64_t{1} << n;
  // Root is bit 0, so only odd masks can be valid.
  for (std::uint64_t mask = 1; mask < end && out.size() < limit; mask += 2) {
    if (!compiled.valid(static_cast<std::uint32_t>(mask))) continue;
    Configuration cfg;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) cfg.selected.insert(model.features()[i]);
    out.push_back(std::move(cfg));
  }
  return out;
}

} // namespace modelsel
