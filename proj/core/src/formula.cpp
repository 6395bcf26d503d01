#include "modelsel/formula.hpp"

#include "modelsel/error.hpp"

#include <algorithm>

namespace modelsel {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> operands;
};

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(operand)}}));
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  if (operands.empty()) throw DomainError("conjunction needs at least one operand");
  if (operands.size() == 1) return std::move(operands.front());
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(operands)}));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  if (operands.empty()) throw DomainError("disjunction needs at least one operand");
  if (operands.size() == 1) return std::move(operands.front());
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(operands)}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Implies, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Iff, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::name() const noexcept { return node_->name; }

std::span<const Formula> Formula::operands() const noexcept { return node_->operands; }

std::set<std::string, std::less<>> Formula::atoms() const {
  std::set<std::string, std::less<>> out;
  std::vector<const Formula*> stack{this};
  while (!stack.empty()) {
    const Formula* f = stack.back();
    stack.pop_back();
    if (f->kind() == Kind::Atom) {
      out.insert(f->name());
      continue;
    }
    for (const auto& op : f->operands()) stack.push_back(&op);
  }
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name()) return false;
  auto lhs = a.operands();
  auto rhs = b.operands();
  return std::equal(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

bool eval_formula(const Formula& f, const Configuration& assignment) {
  auto ops = f.operands();
  switch (f.kind()) {
  case Formula::Kind::Atom:
    return assignment.contains(f.name());
  case Formula::Kind::Not:
    return !eval_formula(ops[0], assignment);
  case Formula::Kind::And:
    return std::all_of(ops.begin(), ops.end(),
                       [&](const Formula& op) { return eval_formula(op, assignment); });
  case Formula::Kind::Or:
    return std::any_of(ops.begin(), ops.end(),
                       [&](const Formula& op) { return eval_formula(op, assignment); });
  case Formula::Kind::Implies:
    return !eval_formula(ops[0], assignment) || eval_formula(ops[1], assignment);
  case Formula::Kind::Iff:
    return eval_formula(ops[0], assignment) == eval_formula(ops[1], assignment);
  }
  return false;
}

namespace {

// Binding strength, loosest first.
int precedence(Formula::Kind kind) {
  switch (kind) {
  case Formula::Kind::Iff: return 0;
  case Formula::Kind::Implies: return 1;
  case Formula::Kind::Or: return 2;
  case Formula::Kind::And: return 3;
  case Formula::Kind::Not: return 4;
  case Formula::Kind::Atom: return 5;
  }
  return 5;
}

void render(const Formula& f, std::string& out);

void render_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render(f, out);
  if (parens) out += ')';
}

void render(const Formula& f, std::string& out) {
  const int own = precedence(f.kind());
  auto ops = f.operands();
  switch (f.kind()) {
  case Formula::Kind::Atom:
    out += f.name();
    return;
  case Formula::Kind::Not:
    out += '!';
    render_operand(ops[0], precedence(ops[0].kind()) < own, out);
    return;
  case Formula::Kind::And:
  case Formula::Kind::Or: {
    const char* sep = f.kind() == Formula::Kind::And ? " & " : " | ";
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (i) out += sep;
      render_operand(ops[i], precedence(ops[i].kind()) <= own, out);
    }
    return;
  }
  case Formula::Kind::Implies:
  case Formula::Kind::Iff: {
    // Right-associative: only the left operand needs parens at equal strength.
    render_operand(ops[0], precedence(ops[0].kind()) <= own, out);
    out += f.kind() == Formula::Kind::Implies ? " => " : " <=> ";
    render_operand(ops[1], precedence(ops[1].kind()) < own, out);
    return;
  }
  }
}

} // namespace

std::string to_string(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

} // namespace modelsel
