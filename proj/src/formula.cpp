#include "stratus/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "stratus/errors.hpp"

namespace stratus {

std::string ParseError::format(const std::string& msg, int line, int column,
                               const std::vector<std::string>& expected) {
  std::ostringstream out;
  out << "parse error at " << line << ":" << column << ": " << msg;
  if (!expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out << ", ";
      out << expected[i];
    }
    out << ")";
  }
  return out.str();
}

std::string VarName::str() const {
  if (disamb == 0) return id;
  return id + "#" + std::to_string(disamb);
}

FormulaPtr mk_in(VarName element, VarName container) {
  return std::make_shared<const Formula>(
      Formula{Membership{std::move(element), std::move(container)}});
}
FormulaPtr mk_eq(VarName lhs, VarName rhs) {
  return std::make_shared<const Formula>(Formula{Equality{std::move(lhs), std::move(rhs)}});
}
FormulaPtr mk_sethood(VarName arg) {
  return std::make_shared<const Formula>(Formula{Sethood{std::move(arg)}});
}
FormulaPtr mk_pairing(VarName first, VarName second, VarName pair) {
  return std::make_shared<const Formula>(
      Formula{Pairing{std::move(first), std::move(second), std::move(pair)}});
}
FormulaPtr mk_rel(std::string rel, std::vector<VarName> args) {
  return std::make_shared<const Formula>(Formula{RelApp{std::move(rel), std::move(args)}});
}
FormulaPtr mk_not(FormulaPtr body) {
  return std::make_shared<const Formula>(Formula{Negation{std::move(body)}});
}
FormulaPtr mk_bin(Connective op, FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<const Formula>(Formula{Binary{op, std::move(lhs), std::move(rhs)}});
}
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r) { return mk_bin(Connective::And, std::move(l), std::move(r)); }
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r) { return mk_bin(Connective::Or, std::move(l), std::move(r)); }
FormulaPtr mk_implies(FormulaPtr l, FormulaPtr r) {
  return mk_bin(Connective::Implies, std::move(l), std::move(r));
}
FormulaPtr mk_iff(FormulaPtr l, FormulaPtr r) { return mk_bin(Connective::Iff, std::move(l), std::move(r)); }
FormulaPtr mk_forall(VarName var, FormulaPtr body) {
  return std::make_shared<const Formula>(Formula{Quantified{Quantifier::Forall, std::move(var), std::move(body)}});
}
FormulaPtr mk_exists(VarName var, FormulaPtr body) {
  return std::make_shared<const Formula>(Formula{Quantified{Quantifier::Exists, std::move(var), std::move(body)}});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Membership>) {
          return x.element == y.element && x.container == y.container;
        } else if constexpr (std::is_same_v<T, Equality>) {
          return x.lhs == y.lhs && x.rhs == y.rhs;
        } else if constexpr (std::is_same_v<T, Sethood>) {
          return x.arg == y.arg;
        } else if constexpr (std::is_same_v<T, Pairing>) {
          return x.first == y.first && x.second == y.second && x.pair == y.pair;
        } else if constexpr (std::is_same_v<T, RelApp>) {
          return x.rel == y.rel && x.args == y.args;
        } else if constexpr (std::is_same_v<T, Negation>) {
          return *x.body == *y.body;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
        } else {
          return x.q == y.q && x.var == y.var && *x.body == *y.body;
        }
      },
      a.node);
}

namespace {

const char* connective_name(Connective c) {
  switch (c) {
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Implies: return "implies";
    case Connective::Iff: return "iff";
  }
  return "?";
}

void render_into(const Formula& f, std::string& out) {
  std::visit(
      [&out](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Membership>) {
          out += "(in " + x.element.str() + " " + x.container.str() + ")";
        } else if constexpr (std::is_same_v<T, Equality>) {
          out += "(= " + x.lhs.str() + " " + x.rhs.str() + ")";
        } else if constexpr (std::is_same_v<T, Sethood>) {
          out += "(S " + x.arg.str() + ")";
        } else if constexpr (std::is_same_v<T, Pairing>) {
          out += "(P " + x.first.str() + " " + x.second.str() + " " + x.pair.str() + ")";
        } else if constexpr (std::is_same_v<T, RelApp>) {
          out += "(" + x.rel;
          for (const auto& a : x.args) out += " " + a.str();
          out += ")";
        } else if constexpr (std::is_same_v<T, Negation>) {
          out += "(not ";
          render_into(*x.body, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          out += "(";
          out += connective_name(x.op);
          out += " ";
          render_into(*x.lhs, out);
          out += " ";
          render_into(*x.rhs, out);
          out += ")";
        } else {
          out += x.q == Quantifier::Forall ? "(forall " : "(exists ";
          out += x.var.str();
          out += " ";
          render_into(*x.body, out);
          out += ")";
        }
      },
      f.node);
}

struct Token {
  enum Kind { LParen, RParen, Ident, Comma, Dot, Bang, Amp, Pipe, Arrow, DArrow, Eq, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
  Lexer(std::string_view text, int start_line, bool infix)
      : text_(text), line_(start_line), infix_(infix) {
    advance();
  }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(msg, tok_.line, tok_.col, std::move(expected));
  }

private:
  void advance() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\r' || text_[pos_] == '\n')) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_base_ = pos_ + 1;
      }
      ++pos_;
    }
    int col = static_cast<int>(pos_ - col_base_) + 1;
    if (pos_ >= text_.size()) {
      tok_ = {Token::End, "", line_, col};
      return;
    }
    char c = text_[pos_];
    auto single = [&](Token::Kind k) {
      tok_ = {k, std::string(1, c), line_, col};
      ++pos_;
    };
    if (c == '(') return single(Token::LParen);
    if (c == ')') return single(Token::RParen);
    if (c == '=') {
      // sexpr heads and infix equality share the token
      return single(Token::Eq);
    }
    if (infix_) {
      if (c == ',') return single(Token::Comma);
      if (c == '.') return single(Token::Dot);
      if (c == '!') return single(Token::Bang);
      if (c == '&') return single(Token::Amp);
      if (c == '|') return single(Token::Pipe);
      if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        tok_ = {Token::Arrow, "->", line_, col};
        pos_ += 2;
        return;
      }
      if (c == '<' && pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
        tok_ = {Token::DArrow, "<->", line_, col};
        pos_ += 3;
        return;
      }
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '#') {
        std::size_t h = pos_ + 1;
        std::size_t d = h;
        while (d < text_.size() && std::isdigit(static_cast<unsigned char>(text_[d]))) ++d;
        if (d == h) throw ParseError("'#' must be followed by digits", line_, col, {"digits"});
        pos_ = d;
      }
      tok_ = {Token::Ident, std::string(text_.substr(start, pos_ - start)), line_, col};
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line_, col,
                     {"'('", "')'", "a name"});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t col_base_ = 0;
  int line_;
  bool infix_;
  Token tok_;
};

VarName parse_varname(const Token& t) {
  auto hash = t.text.find('#');
  if (hash == std::string::npos) return VarName{t.text, 0};
  return VarName{t.text.substr(0, hash), std::stoi(t.text.substr(hash + 1))};
}

const std::vector<std::string> kCoreHeads = {"in",  "=",   "S",       "P",   "not",   "and",
                                             "or",  "implies", "iff", "forall", "exists"};

class SexprParser {
public:
  SexprParser(std::string_view text, int line, const ParseOptions& opts)
      : lex_(text, line, false), opts_(opts) {}

  FormulaPtr parse_top() {
    FormulaPtr f = parse();
    if (lex_.peek().kind != Token::End)
      lex_.fail("trailing input after formula", {"end of input"});
    return f;
  }

private:
  VarName expect_var() {
    if (lex_.peek().kind != Token::Ident) lex_.fail("expected a variable", {"identifier"});
    return parse_varname(lex_.take());
  }

  void expect_rparen() {
    if (lex_.peek().kind != Token::RParen) lex_.fail("expected ')'", {")"});
    lex_.take();
  }

  FormulaPtr parse() {
    if (lex_.peek().kind != Token::LParen) lex_.fail("expected '('", {"("});
    lex_.take();
    std::string head;
    if (lex_.peek().kind == Token::Ident)
      head = lex_.take().text;
    else if (lex_.peek().kind == Token::Eq)
      head = lex_.take().text;
    else {
      auto expected = kCoreHeads;
      if (opts_.named_relations) expected.push_back("identifier");
      lex_.fail("expected an operator or predicate", expected);
    }

    if (head == "in") {
      VarName a = expect_var(), b = expect_var();
      expect_rparen();
      return mk_in(a, b);
    }
    if (head == "=") {
      VarName a = expect_var(), b = expect_var();
      expect_rparen();
      return mk_eq(a, b);
    }
    if (head == "S") {
      VarName a = expect_var();
      expect_rparen();
      return mk_sethood(a);
    }
    if (head == "P") {
      VarName a = expect_var(), b = expect_var(), c = expect_var();
      expect_rparen();
      return mk_pairing(a, b, c);
    }
    if (head == "not") {
      FormulaPtr f = parse();
      expect_rparen();
      return mk_not(f);
    }
    if (head == "and" || head == "or" || head == "implies" || head == "iff") {
      Connective op = head == "and"       ? Connective::And
                      : head == "or"      ? Connective::Or
                      : head == "implies" ? Connective::Implies
                                          : Connective::Iff;
      FormulaPtr l = parse();
      FormulaPtr r = parse();
      expect_rparen();
      return mk_bin(op, l, r);
    }
    if (head == "forall" || head == "exists") {
      VarName v = expect_var();
      FormulaPtr body = parse();
      expect_rparen();
      return head == "forall" ? mk_forall(v, body) : mk_exists(v, body);
    }
    if (opts_.named_relations) {
      std::vector<VarName> args;
      while (lex_.peek().kind == Token::Ident) args.push_back(parse_varname(lex_.take()));
      expect_rparen();
      return mk_rel(head, std::move(args));
    }
    lex_.fail("unknown head '" + head + "'", kCoreHeads);
  }

  Lexer lex_;
  const ParseOptions& opts_;
};

// Infix grammar, loosest to tightest: quantifier body, <->, ->, |, &, !.
// '->' associates to the right. Atoms: x in y, x = y, S(x), P(x,y,z), and in
// named-relation mode r(x,...).
class InfixParser {
public:
  InfixParser(std::string_view text, int line, const ParseOptions& opts)
      : lex_(text, line, true), opts_(opts) {}

  FormulaPtr parse_top() {
    FormulaPtr f = parse_formula();
    if (lex_.peek().kind != Token::End)
      lex_.fail("trailing input after formula", {"end of input"});
    return f;
  }

private:
  FormulaPtr parse_formula() { return parse_iff(); }

  FormulaPtr parse_iff() {
    FormulaPtr l = parse_implies();
    while (lex_.peek().kind == Token::DArrow) {
      lex_.take();
      l = mk_iff(l, parse_implies());
    }
    return l;
  }

  FormulaPtr parse_implies() {
    FormulaPtr l = parse_or();
    if (lex_.peek().kind == Token::Arrow) {
      lex_.take();
      return mk_implies(l, parse_implies());
    }
    return l;
  }

  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    while (lex_.peek().kind == Token::Pipe) {
      lex_.take();
      l = mk_or(l, parse_and());
    }
    return l;
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_unary();
    while (lex_.peek().kind == Token::Amp) {
      lex_.take();
      l = mk_and(l, parse_unary());
    }
    return l;
  }

  FormulaPtr parse_unary() {
    if (lex_.peek().kind == Token::Bang) {
      lex_.take();
      return mk_not(parse_unary());
    }
    if (lex_.peek().kind == Token::Ident &&
        (lex_.peek().text == "A" || lex_.peek().text == "E")) {
      bool forall = lex_.take().text == "A";
      if (lex_.peek().kind != Token::Ident) lex_.fail("expected a variable", {"identifier"});
      VarName v = parse_varname(lex_.take());
      if (lex_.peek().kind != Token::Dot) lex_.fail("expected '.'", {"."});
      lex_.take();
      FormulaPtr body = parse_formula();
      return forall ? mk_forall(v, body) : mk_exists(v, body);
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    if (lex_.peek().kind == Token::LParen) {
      lex_.take();
      FormulaPtr f = parse_formula();
      if (lex_.peek().kind != Token::RParen) lex_.fail("expected ')'", {")"});
      lex_.take();
      return f;
    }
    if (lex_.peek().kind != Token::Ident)
      lex_.fail("expected an atom", {"identifier", "(", "!", "A", "E"});
    Token name = lex_.take();
    if (lex_.peek().kind == Token::LParen) {
      lex_.take();
      std::vector<VarName> args;
      if (lex_.peek().kind == Token::Ident) {
        args.push_back(parse_varname(lex_.take()));
        while (lex_.peek().kind == Token::Comma) {
          lex_.take();
          if (lex_.peek().kind != Token::Ident) lex_.fail("expected a variable", {"identifier"});
          args.push_back(parse_varname(lex_.take()));
        }
      }
      if (lex_.peek().kind != Token::RParen) lex_.fail("expected ')'", {")", ","});
      lex_.take();
      if (name.text == "S" && args.size() == 1) return mk_sethood(args[0]);
      if (name.text == "P" && args.size() == 3) return mk_pairing(args[0], args[1], args[2]);
      if (opts_.named_relations) return mk_rel(name.text, std::move(args));
      throw ParseError("unknown predicate '" + name.text + "'", name.line, name.col, {"S", "P"});
    }
    VarName lhs = parse_varname(name);
    if (lex_.peek().kind == Token::Eq) {
      lex_.take();
      if (lex_.peek().kind != Token::Ident) lex_.fail("expected a variable", {"identifier"});
      return mk_eq(lhs, parse_varname(lex_.take()));
    }
    if (lex_.peek().kind == Token::Ident && lex_.peek().text == "in") {
      lex_.take();
      if (lex_.peek().kind != Token::Ident) lex_.fail("expected a variable", {"identifier"});
      return mk_in(lhs, parse_varname(lex_.take()));
    }
    lex_.fail("expected 'in' or '='", {"in", "="});
  }

  Lexer lex_;
  const ParseOptions& opts_;
};

FormulaPtr parse_at_line(std::string_view text, int line, const ParseOptions& opts) {
  if (opts.infix) return InfixParser(text, line, opts).parse_top();
  return SexprParser(text, line, opts).parse_top();
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

FormulaPtr parse_formula(std::string_view text, const ParseOptions& opts) {
  return parse_at_line(text, 1, opts);
}

std::vector<FormulaPtr> parse_formula_lines(std::istream& in, const ParseOptions& opts) {
  std::vector<FormulaPtr> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto semi = line.find(';');
    if (semi != std::string::npos) line.erase(semi);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    if (blank) continue;
    out.push_back(parse_at_line(line, lineno, opts));
  }
  return out;
}

namespace {

void visit_occurrences(const Formula& f, std::vector<VarName>& binders,
                       const std::function<void(const VarName&, bool)>& fn);

// fn(var, is_free) for every variable occurrence; binders tracks the active
// binder stack for resolution by full name, innermost first on lookup.
void visit_occurrences(const Formula& f, std::vector<VarName>& binders,
                       const std::function<void(const VarName&, bool)>& fn) {
  auto occurs = [&](const VarName& v) {
    bool bound = std::find(binders.rbegin(), binders.rend(), v) != binders.rend();
    fn(v, !bound);
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Membership>) {
          occurs(x.element);
          occurs(x.container);
        } else if constexpr (std::is_same_v<T, Equality>) {
          occurs(x.lhs);
          occurs(x.rhs);
        } else if constexpr (std::is_same_v<T, Sethood>) {
          occurs(x.arg);
        } else if constexpr (std::is_same_v<T, Pairing>) {
          occurs(x.first);
          occurs(x.second);
          occurs(x.pair);
        } else if constexpr (std::is_same_v<T, RelApp>) {
          for (const auto& a : x.args) occurs(a);
        } else if constexpr (std::is_same_v<T, Negation>) {
          visit_occurrences(*x.body, binders, fn);
        } else if constexpr (std::is_same_v<T, Binary>) {
          visit_occurrences(*x.lhs, binders, fn);
          visit_occurrences(*x.rhs, binders, fn);
        } else {
          binders.push_back(x.var);
          visit_occurrences(*x.body, binders, fn);
          binders.pop_back();
        }
      },
      f.node);
}

struct Renamer {
  // id -> set of disambiguators already claimed (by free vars or earlier
  // binders, in pre-order)
  std::map<std::string, std::set<int>> used;

  VarName fresh(const std::string& id) {
    std::set<int>& taken = used[id];
    int d = 0;
    while (taken.count(d)) ++d;
    taken.insert(d);
    return VarName{id, d};
  }

  FormulaPtr walk(const FormulaPtr& f, std::vector<std::pair<VarName, VarName>>& env) {
    auto resolve = [&](const VarName& v) -> VarName {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == v) return it->second;
      return v;  // free occurrence keeps its source name
    };
    return std::visit(
        [&](const auto& x) -> FormulaPtr {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Membership>) {
            return mk_in(resolve(x.element), resolve(x.container));
          } else if constexpr (std::is_same_v<T, Equality>) {
            return mk_eq(resolve(x.lhs), resolve(x.rhs));
          } else if constexpr (std::is_same_v<T, Sethood>) {
            return mk_sethood(resolve(x.arg));
          } else if constexpr (std::is_same_v<T, Pairing>) {
            return mk_pairing(resolve(x.first), resolve(x.second), resolve(x.pair));
          } else if constexpr (std::is_same_v<T, RelApp>) {
            std::vector<VarName> args;
            args.reserve(x.args.size());
            for (const auto& a : x.args) args.push_back(resolve(a));
            return mk_rel(x.rel, std::move(args));
          } else if constexpr (std::is_same_v<T, Negation>) {
            return mk_not(walk(x.body, env));
          } else if constexpr (std::is_same_v<T, Binary>) {
            FormulaPtr l = walk(x.lhs, env);
            FormulaPtr r = walk(x.rhs, env);
            return mk_bin(x.op, std::move(l), std::move(r));
          } else {
            VarName nv = fresh(x.var.id);
            env.emplace_back(x.var, nv);
            FormulaPtr body = walk(x.body, env);
            env.pop_back();
            return x.q == Quantifier::Forall ? mk_forall(nv, std::move(body))
                                             : mk_exists(nv, std::move(body));
          }
        },
        f->node);
  }
};

}  // namespace

std::vector<VarName> free_variables(const Formula& f) {
  std::set<VarName> acc;
  std::vector<VarName> binders;
  visit_occurrences(f, binders, [&](const VarName& v, bool is_free) {
    if (is_free) acc.insert(v);
  });
  return {acc.begin(), acc.end()};
}

std::vector<VarName> all_variables(const Formula& f) {
  std::set<VarName> acc;

  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Membership>) {
            acc.insert(x.element);
            acc.insert(x.container);
          } else if constexpr (std::is_same_v<T, Equality>) {
            acc.insert(x.lhs);
            acc.insert(x.rhs);
          } else if constexpr (std::is_same_v<T, Sethood>) {
            acc.insert(x.arg);
          } else if constexpr (std::is_same_v<T, Pairing>) {
            acc.insert(x.first);
            acc.insert(x.second);
            acc.insert(x.pair);
          } else if constexpr (std::is_same_v<T, RelApp>) {
            for (const auto& a : x.args) acc.insert(a);
          } else if constexpr (std::is_same_v<T, Negation>) {
            walk(*x.body);
          } else if constexpr (std::is_same_v<T, Binary>) {
            walk(*x.lhs);
            walk(*x.rhs);
          } else {
            acc.insert(x.var);
            walk(*x.body);
          }
        },
        g.node);
  };
  walk(f);
  return {acc.begin(), acc.end()};
}

FormulaPtr alpha_rename(const FormulaPtr& f) {
  Renamer r;
  for (const VarName& v : free_variables(*f)) r.used[v.id].insert(v.disamb);
  std::vector<std::pair<VarName, VarName>> env;
  return r.walk(f, env);
}

namespace {

using Subst = std::vector<std::pair<VarName, VarName>>;

VarName subst_lookup(const Subst& s, const VarName& v) {
  for (const auto& [from, to] : s)
    if (from == v) return to;
  return v;
}

FormulaPtr subst_walk(const FormulaPtr& f, const Subst& s) {
  if (s.empty()) return f;
  return std::visit(
      [&](const auto& x) -> FormulaPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Membership>) {
          return mk_in(subst_lookup(s, x.element), subst_lookup(s, x.container));
        } else if constexpr (std::is_same_v<T, Equality>) {
          return mk_eq(subst_lookup(s, x.lhs), subst_lookup(s, x.rhs));
        } else if constexpr (std::is_same_v<T, Sethood>) {
          return mk_sethood(subst_lookup(s, x.arg));
        } else if constexpr (std::is_same_v<T, Pairing>) {
          return mk_pairing(subst_lookup(s, x.first), subst_lookup(s, x.second),
                            subst_lookup(s, x.pair));
        } else if constexpr (std::is_same_v<T, RelApp>) {
          std::vector<VarName> args;
          args.reserve(x.args.size());
          for (const auto& a : x.args) args.push_back(subst_lookup(s, a));
          return mk_rel(x.rel, std::move(args));
        } else if constexpr (std::is_same_v<T, Negation>) {
          return mk_not(subst_walk(x.body, s));
        } else if constexpr (std::is_same_v<T, Binary>) {
          FormulaPtr l = subst_walk(x.lhs, s);
          FormulaPtr r = subst_walk(x.rhs, s);
          return mk_bin(x.op, std::move(l), std::move(r));
        } else {
          Subst inner;
          bool capture = false;
          for (const auto& [from, to] : s) {
            if (from == x.var) continue;  // shadowed below this binder
            inner.emplace_back(from, to);
            if (to == x.var) capture = true;
          }
          if (!capture)
            return x.q == Quantifier::Forall ? mk_forall(x.var, subst_walk(x.body, inner))
                                             : mk_exists(x.var, subst_walk(x.body, inner));
          // The binder would capture a substituted name: rename it first.
          std::set<VarName> avoid;
          for (const VarName& v : all_variables(*x.body)) avoid.insert(v);
          for (const auto& [from, to] : inner) {
            avoid.insert(from);
            avoid.insert(to);
          }
          VarName nv = x.var;
          do {
            ++nv.disamb;
          } while (avoid.count(nv));
          inner.emplace_back(x.var, nv);
          return x.q == Quantifier::Forall ? mk_forall(nv, subst_walk(x.body, inner))
                                           : mk_exists(nv, subst_walk(x.body, inner));
        }
      },
      f->node);
}

}  // namespace

FormulaPtr substitute_free(const FormulaPtr& f,
                           const std::vector<std::pair<VarName, VarName>>& map) {
  return subst_walk(f, map);
}

}  // namespace stratus
