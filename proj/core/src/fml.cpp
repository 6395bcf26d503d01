// Lexer, recursive-descent parser and printer for the .fml feature-model DSL.

#include "modelsel/error.hpp"
#include "modelsel/feature_model.hpp"

#include <array>
#include <unordered_map>
#include <unordered_set>

namespace modelsel {

namespace {

enum class Tok {
  Ident,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Colon,
  Bang,
  Amp,
  Pipe,
  Arrow,
  DoubleArrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

constexpr std::array kKeywords = {std::string_view{"features"}, std::string_view{"mandatory"},
                                  std::string_view{"optional"}, std::string_view{"xor"},
                                  std::string_view{"or"},       std::string_view{"constraint"}};

bool is_keyword(std::string_view s) {
  for (auto k : kKeywords)
    if (k == s) return true;
  return false;
}

std::string describe(const Token& t) {
  switch (t.kind) {
  case Tok::Ident: return "'" + t.text + "'";
  case Tok::End: return "end of input";
  default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t tl = line;
    const std::size_t tc = col;
    auto push = [&](Tok kind, std::size_t len) {
      out.push_back({kind, std::string(src.substr(i, len)), tl, tc});
      advance(len);
    };
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) {
      std::size_t j = i + 1;
      while (j < src.size() && ((src[j] >= 'A' && src[j] <= 'Z') ||
                                (src[j] >= 'a' && src[j] <= 'z') ||
                                (src[j] >= '0' && src[j] <= '9') || src[j] == '_'))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (src.substr(i, 3) == "<=>") {
      push(Tok::DoubleArrow, 3);
      continue;
    }
    if (src.substr(i, 2) == "=>") {
      push(Tok::Arrow, 2);
      continue;
    }
    switch (c) {
    case '{': push(Tok::LBrace, 1); continue;
    case '}': push(Tok::RBrace, 1); continue;
    case '(': push(Tok::LParen, 1); continue;
    case ')': push(Tok::RParen, 1); continue;
    case ':': push(Tok::Colon, 1); continue;
    case '!': push(Tok::Bang, 1); continue;
    case '&': push(Tok::Amp, 1); continue;
    case '|': push(Tok::Pipe, 1); continue;
    default: break;
    }
    throw ParseError(tl, tc, "unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  FeatureModel parse_model() {
    expect_keyword("features");
    Feature root = parse_feature();
    std::vector<NamedConstraint> constraints;
    std::unordered_set<std::string> names;
    while (is_keyword_token("constraint")) {
      next();
      const Token& name_tok = peek();
      std::string name = expect_identifier("constraint name");
      if (!names.insert(name).second)
        throw ParseError(name_tok.line, name_tok.column, "duplicate constraint name '" + name + "'");
      expect(Tok::Colon, "':'");
      constraints.push_back({std::move(name), parse_iff()});
    }
    if (peek().kind != Tok::End)
      throw ParseError(peek().line, peek().column, describe(peek()), {"'constraint'", "end of input"});
    return FeatureModel(std::move(root), std::move(constraints));
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  bool is_keyword_token(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  void expect_keyword(std::string_view kw) {
    if (!is_keyword_token(kw))
      throw ParseError(peek().line, peek().column, describe(peek()), {"'" + std::string(kw) + "'"});
    next();
  }

  void expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) throw ParseError(peek().line, peek().column, describe(peek()), {what});
    next();
  }

  std::string expect_identifier(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text))
      throw ParseError(t.line, t.column, describe(t), {what});
    next();
    return t.text;
  }

  Feature parse_feature() {
    const Token& t = peek();
    Feature f;
    f.name = expect_identifier("feature name");
    if (!declared_.emplace(f.name, true).second)
      throw ParseError(t.line, t.column, "duplicate feature name '" + f.name + "'");
    if (peek().kind != Tok::LBrace) return f;
    next();
    while (peek().kind != Tok::RBrace) f.children.push_back(parse_item());
    next();
    return f;
  }

  ChildGroup parse_item() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "mandatory" || t.text == "optional")) {
      next();
      const GroupKind kind = t.text == "mandatory" ? GroupKind::Mandatory : GroupKind::Optional;
      return ChildGroup{kind, {parse_feature()}};
    }
    if (t.kind == Tok::Ident && (t.text == "xor" || t.text == "or")) {
      next();
      const GroupKind kind = t.text == "xor" ? GroupKind::Xor : GroupKind::Or;
      expect(Tok::LBrace, "'{'");
      ChildGroup group{kind, {}};
      while (peek().kind != Tok::RBrace) {
        if (peek().kind == Tok::End)
          throw ParseError(peek().line, peek().column, describe(peek()), {"feature name", "'}'"});
        group.members.push_back(parse_feature());
      }
      if (group.members.size() < 2)
        throw ParseError(t.line, t.column,
                         t.text + " group requires at least 2 members, found " +
                             std::to_string(group.members.size()));
      next();
      return group;
    }
    throw ParseError(t.line, t.column, describe(t),
                     {"'mandatory'", "'optional'", "'xor'", "'or'", "'}'"});
  }

  // iff := imp ("<=>" imp)*, right-associative.
  Formula parse_iff() {
    Formula lhs = parse_imp();
    if (peek().kind != Tok::DoubleArrow) return lhs;
    next();
    return Formula::equivalence(std::move(lhs), parse_iff());
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (peek().kind != Tok::Arrow) return lhs;
    next();
    return Formula::implication(std::move(lhs), parse_imp());
  }

  Formula parse_or() {
    std::vector<Formula> ops{parse_and()};
    while (peek().kind == Tok::Pipe) {
      next();
      ops.push_back(parse_and());
    }
    return Formula::disjunction(std::move(ops));
  }

  Formula parse_and() {
    std::vector<Formula> ops{parse_not()};
    while (peek().kind == Tok::Amp) {
      next();
      ops.push_back(parse_not());
    }
    return Formula::conjunction(std::move(ops));
  }

  Formula parse_not() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      next();
      return Formula::negation(parse_not());
    }
    if (t.kind == Tok::LParen) {
      next();
      Formula inner = parse_iff();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      next();
      if (!declared_.count(t.text))
        throw ParseError(t.line, t.column, "unknown feature '" + t.text + "' in constraint");
      return Formula::atom(t.text);
    }
    throw ParseError(t.line, t.column, describe(t), {"feature name", "'!'", "'('"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, bool> declared_;
};

void print_feature(const Feature& f, int depth, std::string& out);

void indent(int depth, std::string& out) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

void print_children(const Feature& f, int depth, std::string& out) {
  if (f.children.empty()) {
    out += '\n';
    return;
  }
  out += " {\n";
  for (const auto& g : f.children) {
    indent(depth + 1, out);
    out += to_string(g.kind);
    if (g.kind == GroupKind::Mandatory || g.kind == GroupKind::Optional) {
      out += ' ';
      print_feature(g.members[0], depth + 1, out);
      continue;
    }
    out += " {\n";
    for (const auto& m : g.members) {
      indent(depth + 2, out);
      print_feature(m, depth + 2, out);
    }
    indent(depth + 1, out);
    out += "}\n";
  }
  indent(depth, out);
  out += "}\n";
}

void print_feature(const Feature& f, int depth, std::string& out) {
  out += f.name;
  print_children(f, depth, out);
}

} // namespace

FeatureModel parse_feature_model(std::string_view text) { return Parser(text).parse_model(); }

std::string to_fml(const FeatureModel& model) {
  std::string out = "features ";
  print_feature(model.root(), 0, out);
  for (const auto& c : model.constraints())
    out += "constraint " + c.name + ": " + to_string(c.formula) + "\n";
  return out;
}

} // namespace modelsel
