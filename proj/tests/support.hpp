#pragma once

// Shared test helpers: fixture paths, random model/formula generators and
// independent oracles. Nothing here calls the library's evaluators.

#include "modelsel/feature_model.hpp"
#include "modelsel/formula.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace testsupport {

namespace ms = modelsel;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(MODELSEL_FIXTURES_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- formula oracle -----------------------------------------------------

/// Truth-table semantics written directly from the definitions.
inline bool oracle_eval(const ms::Formula& f, const std::set<std::string>& on) {
  using K = ms::Formula::Kind;
  auto ops = f.operands();
  switch (f.kind()) {
  case K::Atom: return on.count(f.name()) > 0;
  case K::Not: return !oracle_eval(ops[0], on);
  case K::And:
    for (const auto& o : ops)
      if (!oracle_eval(o, on)) return false;
    return true;
  case K::Or:
    for (const auto& o : ops)
      if (oracle_eval(o, on)) return true;
    return false;
  case K::Implies: return !oracle_eval(ops[0], on) || oracle_eval(ops[1], on);
  case K::Iff: return oracle_eval(ops[0], on) == oracle_eval(ops[1], on);
  }
  return false;
}

// ---- feature-model oracle -----------------------------------------------

namespace detail {

inline bool tree_ok(const ms::Feature& f, bool parent_on, const std::set<std::string>& on) {
  const bool self = on.count(f.name) > 0;
  if (self && !parent_on) return false;
  for (const auto& g : f.children) {
    int k = 0;
    for (const auto& m : g.members) k += on.count(m.name) > 0;
    if (self) {
      switch (g.kind) {
      case ms::GroupKind::Mandatory: if (k != 1) return false; break;
      case ms::GroupKind::Optional: break;
      case ms::GroupKind::Xor: if (k != 1) return false; break;
      case ms::GroupKind::Or: if (k < 1) return false; break;
      }
    }
    for (const auto& m : g.members)
      if (!tree_ok(m, self, on)) return false;
  }
  return true;
}

} // namespace detail

/// Direct validity check: root on, tree rules, constraints.
inline bool oracle_valid(const ms::FeatureModel& m, const std::set<std::string>& on) {
  for (const auto& n : on)
    if (!m.declares(n)) return false;
  if (!on.count(m.root().name)) return false;
  if (!detail::tree_ok(m.root(), true, on)) return false;
  for (const auto& c : m.constraints())
    if (!oracle_eval(c.formula, on)) return false;
  return true;
}

inline std::set<std::string> subset_of(const std::vector<std::string>& names, std::uint64_t mask) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (mask >> i & 1u) out.insert(names[i]);
  return out;
}

inline ms::Configuration as_config(const std::set<std::string>& s) {
  ms::Configuration c;
  c.selected.insert(s.begin(), s.end());
  return c;
}

// ---- generators -----------------------------------------------------------

inline ms::Formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms, int depth) {
  std::uniform_int_distribution<int> pick_atom(0, static_cast<int>(atoms.size()) - 1);
  if (depth <= 0 || rng() % 4 == 0) return ms::Formula::atom(atoms[pick_atom(rng)]);
  switch (rng() % 5) {
  case 0: return ms::Formula::negation(random_formula(rng, atoms, depth - 1));
  case 1:
  case 2: {
    std::vector<ms::Formula> ops;
    const int n = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n; ++i) ops.push_back(random_formula(rng, atoms, depth - 1));
    return rng() % 2 ? ms::Formula::conjunction(std::move(ops)) : ms::Formula::disjunction(std::move(ops));
  }
  case 3:
    return ms::Formula::implication(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  default:
    return ms::Formula::equivalence(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

/// Random well-formed model with exactly `n_features` features (n >= 1).
inline ms::FeatureModel random_model(std::mt19937& rng, std::size_t n_features, std::size_t n_constraints) {
  std::size_t next_id = 0;
  auto fresh = [&] { return ms::Feature{"F" + std::to_string(next_id++), {}}; };
  ms::Feature root = fresh();
  std::size_t remaining = n_features - 1;
  std::vector<ms::Feature*> frontier{&root};
  while (remaining > 0) {
    ms::Feature* parent = frontier[rng() % frontier.size()];
    const auto roll = rng() % 4;
    ms::ChildGroup g;
    std::size_t members = 1;
    if (roll == 0) g.kind = ms::GroupKind::Mandatory;
    else if (roll == 1) g.kind = ms::GroupKind::Optional;
    else if (remaining >= 2) {
      g.kind = roll == 2 ? ms::GroupKind::Xor : ms::GroupKind::Or;
      members = std::min<std::size_t>(remaining, 2 + rng() % 2);
    } else {
      g.kind = ms::GroupKind::Optional;
    }
    for (std::size_t i = 0; i < members; ++i) g.members.push_back(fresh());
    remaining -= members;
    parent->children.push_back(std::move(g));
    // Re-collect the frontier: vectors may have reallocated.
    frontier.clear();
    std::vector<ms::Feature*> stack{&root};
    while (!stack.empty()) {
      auto* f = stack.back();
      stack.pop_back();
      frontier.push_back(f);
      for (auto& cg : f->children)
        for (auto& m : cg.members) stack.push_back(&m);
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < next_id; ++i) names.push_back("F" + std::to_string(i));
  std::vector<ms::NamedConstraint> cs;
  for (std::size_t i = 0; i < n_constraints; ++i)
    cs.push_back({"c" + std::to_string(i), random_formula(rng, names, 3)});
  return ms::FeatureModel(std::move(root), std::move(cs));
}

// ---- statistics oracles ---------------------------------------------------

inline double oracle_population_std(const std::vector<double>& xs) {
  long double sum = 0, sq = 0;
  for (double x : xs) sum += x;
  const long double mean = sum / xs.size();
  for (double x : xs) sq += (x - mean) * (x - mean);
  return static_cast<double>(std::sqrt(sq / xs.size()));
}

/// Quantile by interpolating between order statistics at (n-1)q.
inline double oracle_quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return xs[lo] + (xs[hi] - xs[lo]) * (pos - static_cast<double>(lo));
}

// ---- CLI ------------------------------------------------------------------

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// Runs the CLI with `args` (already shell-quoted), capturing stdout.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MODELSEL_CLI + "\" " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

} // namespace testsupport
