#include "stratus/emitter.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "stratus/errors.hpp"

namespace stratus::theory {

TermPtr t_var(VarName v) { return std::make_shared<const Term>(Term{TVar{std::move(v)}}); }
TermPtr t_const(int index) { return std::make_shared<const Term>(Term{TConst{index}}); }
TermPtr t_omega() { return std::make_shared<const Term>(Term{TOmega{}}); }
TermPtr t_beta() { return std::make_shared<const Term>(Term{TBeta{}}); }
TermPtr t_app(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<const Term>(Term{TApp{std::move(fn), std::move(args)}});
}

bool operator==(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, TVar>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, TConst>) {
          return x.index == y.index;
        } else if constexpr (std::is_same_v<T, TApp>) {
          if (x.fn != y.fn || x.args.size() != y.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i)
            if (!(*x.args[i] == *y.args[i])) return false;
          return true;
        } else {
          return true;  // TOmega / TBeta carry no data
        }
      },
      a.node);
}

namespace {

SentencePtr mk(Sentence s) { return std::make_shared<const Sentence>(std::move(s)); }

}  // namespace

SentencePtr s_in(TermPtr l, TermPtr r) { return mk({SIn{std::move(l), std::move(r)}}); }
SentencePtr s_eq(TermPtr l, TermPtr r) { return mk({SEq{std::move(l), std::move(r)}}); }
SentencePtr s_lt(TermPtr l, TermPtr r) { return mk({SLt{std::move(l), std::move(r)}}); }
SentencePtr s_leq(TermPtr l, TermPtr r) { return mk({SLeq{std::move(l), std::move(r)}}); }
SentencePtr s_class(TermPtr a) { return mk({SClass{std::move(a)}}); }
SentencePtr s_ordinal(TermPtr a) { return mk({SOrdinal{std::move(a)}}); }
SentencePtr s_not(SentencePtr b) { return mk({SNot{std::move(b)}}); }
SentencePtr s_and(SentencePtr l, SentencePtr r) {
  return mk({SBin{Connective::And, std::move(l), std::move(r)}});
}
SentencePtr s_implies(SentencePtr l, SentencePtr r) {
  return mk({SBin{Connective::Implies, std::move(l), std::move(r)}});
}
SentencePtr s_iff(SentencePtr l, SentencePtr r) {
  return mk({SBin{Connective::Iff, std::move(l), std::move(r)}});
}
SentencePtr s_forall(VarName v, SentencePtr b) {
  return mk({SQuant{Quantifier::Forall, std::move(v), std::move(b)}});
}
SentencePtr s_exists(VarName v, SentencePtr b) {
  return mk({SQuant{Quantifier::Exists, std::move(v), std::move(b)}});
}

bool operator==(const Sentence& a, const Sentence& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SIn> || std::is_same_v<T, SEq> ||
                      std::is_same_v<T, SLt> || std::is_same_v<T, SLeq>) {
          return *x.lhs == *y.lhs && *x.rhs == *y.rhs;
        } else if constexpr (std::is_same_v<T, SClass> || std::is_same_v<T, SOrdinal> ||
                             std::is_same_v<T, SSethood>) {
          return *x.arg == *y.arg;
        } else if constexpr (std::is_same_v<T, SPairing>) {
          return *x.first == *y.first && *x.second == *y.second && *x.pair == *y.pair;
        } else if constexpr (std::is_same_v<T, SNot>) {
          return *x.body == *y.body;
        } else if constexpr (std::is_same_v<T, SBin>) {
          return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
        } else {
          return x.q == y.q && x.var == y.var && *x.body == *y.body;
        }
      },
      a.node);
}

namespace {

std::string render_term(const Term& t) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TVar>) {
          return x.name.str();
        } else if constexpr (std::is_same_v<T, TConst>) {
          return "c_" + std::to_string(x.index);
        } else if constexpr (std::is_same_v<T, TOmega>) {
          return "omega";
        } else if constexpr (std::is_same_v<T, TBeta>) {
          return "beta";
        } else {
          std::string out = "(" + x.fn;
          for (const TermPtr& a : x.args) out += " " + render_term(*a);
          out += ")";
          return out;
        }
      },
      t.node);
}

const char* connective_name(Connective c) {
  switch (c) {
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Implies: return "implies";
    case Connective::Iff: return "iff";
  }
  return "?";
}

void render_sentence(const Sentence& s, std::string& out) {
  std::visit(
      [&out](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SIn>) {
          out += "(in " + render_term(*x.lhs) + " " + render_term(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, SEq>) {
          out += "(= " + render_term(*x.lhs) + " " + render_term(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, SLt>) {
          out += "(lt " + render_term(*x.lhs) + " " + render_term(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, SLeq>) {
          out += "(leq " + render_term(*x.lhs) + " " + render_term(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, SClass>) {
          out += "(C " + render_term(*x.arg) + ")";
        } else if constexpr (std::is_same_v<T, SOrdinal>) {
          out += "(ordinal " + render_term(*x.arg) + ")";
        } else if constexpr (std::is_same_v<T, SSethood>) {
          out += "(S " + render_term(*x.arg) + ")";
        } else if constexpr (std::is_same_v<T, SPairing>) {
          out += "(P " + render_term(*x.first) + " " + render_term(*x.second) + " " +
                 render_term(*x.pair) + ")";
        } else if constexpr (std::is_same_v<T, SNot>) {
          out += "(not ";
          render_sentence(*x.body, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, SBin>) {
          out += "(";
          out += connective_name(x.op);
          out += " ";
          render_sentence(*x.lhs, out);
          out += " ";
          render_sentence(*x.rhs, out);
          out += ")";
        } else {
          out += x.q == Quantifier::Forall ? "(forall " : "(exists ";
          out += x.var.str();
          out += " ";
          render_sentence(*x.body, out);
          out += ")";
        }
      },
      s.node);
}

// ---- extended-grammar parser ----

struct ETok {
  enum Kind { LParen, RParen, Atom, End };
  Kind kind;
  std::string text;
  int col;
};

class ELexer {
public:
  explicit ELexer(std::string_view text) : text_(text) { advance(); }
  const ETok& peek() const { return tok_; }
  ETok take() {
    ETok t = tok_;
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(msg, 1, tok_.col, std::move(expected));
  }

private:
  static bool atom_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '-' ||
           c == '=';
  }
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    int col = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size()) {
      tok_ = {ETok::End, "", col};
      return;
    }
    char c = text_[pos_];
    if (c == '(') {
      tok_ = {ETok::LParen, "(", col};
      ++pos_;
      return;
    }
    if (c == ')') {
      tok_ = {ETok::RParen, ")", col};
      ++pos_;
      return;
    }
    if (atom_char(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && atom_char(text_[pos_])) ++pos_;
      tok_ = {ETok::Atom, std::string(text_.substr(start, pos_ - start)), col};
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", 1, col, {});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  ETok tok_;
};

const std::set<std::string> kSentenceHeads = {"in",  "=",       "lt",  "leq",    "C",
                                              "ordinal", "S",   "P",   "not",    "and",
                                              "or",  "implies", "iff", "forall", "exists"};

VarName atom_to_varname(const std::string& text, int col) {
  auto hash = text.find('#');
  std::string id = hash == std::string::npos ? text : text.substr(0, hash);
  if (id.empty() || text.find('-') != std::string::npos || text.find('=') != std::string::npos)
    throw ParseError("invalid variable name '" + text + "'", 1, col, {"identifier"});
  int disamb = 0;
  if (hash != std::string::npos) disamb = std::stoi(text.substr(hash + 1));
  return VarName{id, disamb};
}

class SentenceParser {
public:
  explicit SentenceParser(std::string_view text) : lex_(text) {}

  SentencePtr parse_top() {
    SentencePtr s = parse_sentence();
    if (lex_.peek().kind != ETok::End) lex_.fail("trailing input", {"end of input"});
    return s;
  }

private:
  TermPtr classify_atom_term(const ETok& t) {
    if (t.text == "omega") return t_omega();
    if (t.text == "beta") return t_beta();
    if (t.text.rfind("c_", 0) == 0) {
      std::string digits = t.text.substr(2);
      bool neg = !digits.empty() && digits[0] == '-';
      std::string body = neg ? digits.substr(1) : digits;
      if (body.empty() ||
          !std::all_of(body.begin(), body.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("malformed constant '" + t.text + "'", 1, t.col, {"c_<integer>"});
      return t_const(std::stoi(digits));
    }
    return t_var(atom_to_varname(t.text, t.col));
  }

  TermPtr parse_term() {
    if (lex_.peek().kind == ETok::Atom) return classify_atom_term(lex_.take());
    if (lex_.peek().kind != ETok::LParen) lex_.fail("expected a term", {"identifier", "("});
    lex_.take();
    if (lex_.peek().kind != ETok::Atom) lex_.fail("expected a function symbol", {"identifier"});
    ETok head = lex_.take();
    std::vector<TermPtr> args;
    while (lex_.peek().kind != ETok::RParen) args.push_back(parse_term());
    lex_.take();
    if (args.empty())
      throw ParseError("function application needs arguments", 1, head.col, {"term"});
    return t_app(head.text, std::move(args));
  }

  SentencePtr parse_sentence() {
    if (lex_.peek().kind != ETok::LParen) lex_.fail("expected '('", {"("});
    lex_.take();
    if (lex_.peek().kind != ETok::Atom)
      lex_.fail("expected an operator or predicate",
                {kSentenceHeads.begin(), kSentenceHeads.end()});
    ETok head = lex_.take();
    auto finish = [&](SentencePtr s) {
      if (lex_.peek().kind != ETok::RParen) lex_.fail("expected ')'", {")"});
      lex_.take();
      return s;
    };
    const std::string& h = head.text;
    if (h == "in" || h == "=" || h == "lt" || h == "leq") {
      // Two statements: argument evaluation order would not be sequenced.
      TermPtr a = parse_term(), b = parse_term();
      if (h == "in") return finish(s_in(std::move(a), std::move(b)));
      if (h == "=") return finish(s_eq(std::move(a), std::move(b)));
      if (h == "lt") return finish(s_lt(std::move(a), std::move(b)));
      return finish(s_leq(std::move(a), std::move(b)));
    }
    if (h == "C") return finish(s_class(parse_term()));
    if (h == "ordinal") return finish(s_ordinal(parse_term()));
    if (h == "S") return finish(mk({SSethood{parse_term()}}));
    if (h == "P") {
      TermPtr a = parse_term(), b = parse_term(), c = parse_term();
      return finish(mk({SPairing{std::move(a), std::move(b), std::move(c)}}));
    }
    if (h == "not") return finish(s_not(parse_sentence()));
    if (h == "and" || h == "or" || h == "implies" || h == "iff") {
      Connective op = h == "and"       ? Connective::And
                      : h == "or"      ? Connective::Or
                      : h == "implies" ? Connective::Implies
                                       : Connective::Iff;
      SentencePtr l = parse_sentence();
      SentencePtr r = parse_sentence();
      return finish(mk({SBin{op, std::move(l), std::move(r)}}));
    }
    if (h == "forall" || h == "exists") {
      if (lex_.peek().kind != ETok::Atom) lex_.fail("expected a variable", {"identifier"});
      ETok v = lex_.take();
      SentencePtr body = parse_sentence();
      return finish(h == "forall" ? s_forall(atom_to_varname(v.text, v.col), std::move(body))
                                  : s_exists(atom_to_varname(v.text, v.col), std::move(body)));
    }
    throw ParseError("unknown head '" + h + "'", 1, head.col,
                     {kSentenceHeads.begin(), kSentenceHeads.end()});
  }

  ELexer lex_;
};

}  // namespace

std::string render(const Sentence& s) {
  std::string out;
  render_sentence(s, out);
  return out;
}

SentencePtr parse_sentence(std::string_view text) { return SentenceParser(text).parse_top(); }

SentencePtr embed(const Formula& f) {
  return std::visit(
      [](const auto& x) -> SentencePtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Membership>) {
          return s_in(t_var(x.element), t_var(x.container));
        } else if constexpr (std::is_same_v<T, Equality>) {
          return s_eq(t_var(x.lhs), t_var(x.rhs));
        } else if constexpr (std::is_same_v<T, Sethood>) {
          return mk({SSethood{t_var(x.arg)}});
        } else if constexpr (std::is_same_v<T, Pairing>) {
          return mk({SPairing{t_var(x.first), t_var(x.second), t_var(x.pair)}});
        } else if constexpr (std::is_same_v<T, RelApp>) {
          throw InputError("named relation atoms are not part of the emitted language");
        } else if constexpr (std::is_same_v<T, Negation>) {
          return s_not(embed(*x.body));
        } else if constexpr (std::is_same_v<T, Binary>) {
          SentencePtr l = embed(*x.lhs);
          SentencePtr r = embed(*x.rhs);
          return mk({SBin{x.op, std::move(l), std::move(r)}});
        } else {
          return x.q == Quantifier::Forall ? s_forall(x.var, embed(*x.body))
                                           : s_exists(x.var, embed(*x.body));
        }
      },
      f.node);
}

namespace {

// ---- instantiation ----

std::string enc_index(int i) {
  return i < 0 ? "m" + std::to_string(-i) : std::to_string(i);
}

std::string enc_tuple(const std::vector<int>& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += "_";
    out += enc_index(t[i]);
  }
  return out;
}

std::vector<std::vector<int>> increasing_tuples(int n, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(-n);
  return out;
}

bool valid_symbol_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

const std::set<std::string> kReservedSymbols = {
    "omega", "beta", "fhat",    "in",  "lt",     "leq",    "ordinal", "not",
    "and",   "or",   "implies", "iff", "forall", "exists", "c",       "s",
    "p"};

// Arity of a scheme formula: free variables must be x1, x2, ...; the arity is
// the largest index.
int formula_arity(const Formula& f) {
  int arity = 0;
  std::vector<VarName> frees = free_variables(f);
  if (frees.empty())
    throw InputError("scheme formulas must have free variables of the form x1, x2, ...");
  for (const VarName& v : frees) {
    bool ok = v.disamb == 0 && v.id.size() >= 2 && v.id[0] == 'x' && v.id[1] != '0';
    if (ok)
      ok = std::all_of(v.id.begin() + 1, v.id.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (!ok)
      throw InputError("free variable '" + v.str() + "' of a scheme formula must be x1, x2, ...");
    arity = std::max(arity, std::stoi(v.id.substr(1)));
  }
  return arity;
}

void validate_selection(const SchemeSelection& sel) {
  if (sel.n_constants < 0) throw InputError("n_constants must be non-negative");
  std::set<std::string> names;
  for (const SkolemTermSig& t : sel.terms) {
    if (!valid_symbol_name(t.name))
      throw InputError("term name '" + t.name + "' must be a lowercase identifier");
    if (kReservedSymbols.count(t.name))
      throw InputError("term name '" + t.name + "' is reserved");
    if (!names.insert(t.name).second)
      throw InputError("duplicate term name '" + t.name + "'");
    if (t.arity < 1) throw InputError("term '" + t.name + "' must have positive arity");
  }
  for (const FormulaPtr& f : sel.formulas) {
    int arity = formula_arity(*f);
    if (arity > 2 * sel.n_constants + 1)
      throw InputError("formula arity " + std::to_string(arity) +
                       " exceeds the " + std::to_string(2 * sel.n_constants + 1) +
                       " available constants");
  }
  if (sel.index_tuples) {
    for (const std::vector<int>& t : *sel.index_tuples) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < -sel.n_constants || t[i] > sel.n_constants)
          throw InputError("index tuple entry outside [-n, n]");
        if (i > 0 && t[i] <= t[i - 1])
          throw InputError("index tuples must be strictly increasing");
      }
    }
  }
}

std::vector<std::vector<int>> tuples_for_arity(const SchemeSelection& sel, int arity) {
  if (!sel.index_tuples) return increasing_tuples(sel.n_constants, arity);
  std::vector<std::vector<int>> out;
  for (const std::vector<int>& t : *sel.index_tuples)
    if (static_cast<int>(t.size()) == arity) out.push_back(t);
  return out;
}

SentencePtr conj(const std::vector<SentencePtr>& items) {
  SentencePtr acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = s_and(items[i], acc);
  return acc;
}

VarName xvar(int i) { return VarName{"x" + std::to_string(i), 0}; }
VarName yvar(int i) { return VarName{"y" + std::to_string(i), 0}; }

// (v)/(viii): universally quantified order-indiscernibility biconditional for
// one formula.
SentencePtr indiscernibility_sentence(const FormulaPtr& f, int arity) {
  std::vector<SentencePtr> items;
  for (int i = 1; i < arity; ++i) items.push_back(s_lt(t_var(xvar(i)), t_var(xvar(i + 1))));
  for (int i = 1; i < arity; ++i) items.push_back(s_lt(t_var(yvar(i)), t_var(yvar(i + 1))));
  for (int i = 1; i <= arity; ++i)
    items.push_back(s_and(s_class(t_var(xvar(i))), s_class(t_var(yvar(i)))));

  std::vector<std::pair<VarName, VarName>> to_y;
  for (int i = 1; i <= arity; ++i) to_y.emplace_back(xvar(i), yvar(i));
  SentencePtr body =
      s_implies(conj(items), s_iff(embed(*f), embed(*substitute_free(f, to_y))));

  for (int i = arity; i >= 1; --i) body = s_forall(yvar(i), body);
  for (int i = arity; i >= 1; --i) body = s_forall(xvar(i), body);
  return body;
}

TermPtr skolem_at(const SkolemTermSig& t, const std::vector<int>& indices) {
  std::vector<TermPtr> args;
  args.reserve(indices.size());
  for (int i : indices) args.push_back(t_const(i));
  return t_app(t.name, std::move(args));
}

// (vi)/(ix): if the term at I lies below every class element, its value does
// not depend on the choice of indices.
SentencePtr fixed_below_sentence(const SkolemTermSig& t, const std::vector<int>& I,
                                 const std::vector<int>& J) {
  VarName x{"x", 0};
  TermPtr tI = skolem_at(t, I);
  TermPtr tJ = skolem_at(t, J);
  return s_implies(s_forall(x, s_implies(s_class(t_var(x)), s_lt(tI, t_var(x)))),
                   s_eq(tI, tJ));
}

struct Builder {
  const SchemeSelection& sel;
  EmitterOutput out;

  void add(std::string scheme_id, std::string name, SentencePtr s, Provenance p) {
    std::string text = render(*s);
    out.instances.push_back(
        {std::move(scheme_id), std::move(name), std::move(s), std::move(text), std::move(p)});
  }

  // Clauses (i)-(iv): cofinal class inside omega, plus the constant axioms.
  void base_clauses(const std::string& px, const std::string& up) {
    int n = sel.n_constants;
    VarName x{"x", 0};
    VarName y{"y", 0};
    add(up + ".i", px + "_i",
        s_forall(x, s_implies(s_class(t_var(x)), s_in(t_var(x), t_omega()))), {});
    add(up + ".ii", px + "_ii",
        s_forall(x, s_implies(s_in(t_var(x), t_omega()),
                              s_exists(y, s_and(s_in(t_var(y), t_omega()),
                                                s_and(s_lt(t_var(x), t_var(y)),
                                                      s_class(t_var(y))))))),
        {});
    for (int i = -n; i <= n; ++i) {
      Provenance p;
      p.constants = {i};
      add(up + ".iii", px + "_iii_" + enc_index(i), s_class(t_const(i)), std::move(p));
    }
    for (int i = -n; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        Provenance p;
        p.constants = {i, j};
        add(up + ".iv", px + "_iv_" + enc_index(i) + "_" + enc_index(j),
            s_lt(t_const(i), t_const(j)), std::move(p));
      }
    }
  }

  void indiscernibility_clauses(const std::string& px, const std::string& up,
                                const std::string& label) {
    for (std::size_t fi = 0; fi < sel.formulas.size(); ++fi) {
      Provenance p;
      p.formula = static_cast<int>(fi);
      add(up + "." + label, px + "_" + label + "_f" + std::to_string(fi),
          indiscernibility_sentence(sel.formulas[fi], formula_arity(*sel.formulas[fi])),
          std::move(p));
    }
  }

  void fixed_below_clauses(const std::string& px, const std::string& up,
                           const std::string& label) {
    for (const SkolemTermSig& t : sel.terms) {
      std::vector<std::vector<int>> tuples = tuples_for_arity(sel, t.arity);
      for (const std::vector<int>& I : tuples) {
        for (const std::vector<int>& J : tuples) {
          if (I == J) continue;
          Provenance p;
          p.term = t.name;
          p.tuples = {I, J};
          add(up + "." + label,
              px + "_" + label + "_" + t.name + "_" + enc_tuple(I) + "__" + enc_tuple(J),
              fixed_below_sentence(t, I, J), std::move(p));
        }
      }
    }
  }

  void w2_monotonicity() {
    int n = sel.n_constants;
    for (const SkolemTermSig& t : sel.terms) {
      for (const std::vector<int>& I : tuples_for_arity(sel, t.arity)) {
        std::vector<int> shifted = I;
        for (int& v : shifted) ++v;
        if (shifted.back() > n) {
          out.skipped.push_back(
              {"W2.vii", t.name, I, "shifted index " + std::to_string(shifted.back()) +
                                        " exceeds n=" + std::to_string(n)});
          continue;
        }
        Provenance p;
        p.term = t.name;
        p.tuples = {I};
        add("W2.vii", "w2_vii_" + t.name + "_" + enc_tuple(I),
            s_implies(s_ordinal(skolem_at(t, I)),
                      s_leq(skolem_at(t, I), skolem_at(t, shifted))),
            std::move(p));
      }
    }
  }

  void w3_fixed_axioms() {
    VarName x{"x", 0};
    VarName y{"y", 0};
    add("W3.v", "w3_v", s_ordinal(t_beta()), {});
    add("W3.vi", "w3_vi",
        s_forall(x, s_implies(s_in(t_var(x), t_omega()),
                              s_in(t_app("fhat", {t_var(x)}), t_beta()))),
        {});
    add("W3.vii", "w3_vii",
        s_forall(
            x, s_implies(s_in(t_var(x), t_omega()),
                         s_forall(y, s_implies(s_in(t_var(y), t_omega()),
                                               s_implies(s_lt(t_var(x), t_var(y)),
                                                         s_lt(t_app("fhat", {t_var(y)}),
                                                              t_app("fhat", {t_var(x)}))))))),
        {});
  }
};

}  // namespace

EmitterOutput instantiate_w1(const SchemeSelection& sel) {
  if (sel.theory != TheoryKind::W1) throw InputError("selection is not for W1");
  validate_selection(sel);
  Builder b{sel, {}};
  b.base_clauses("w1", "W1");
  b.indiscernibility_clauses("w1", "W1", "v");
  b.fixed_below_clauses("w1", "W1", "vi");
  return std::move(b.out);
}

EmitterOutput instantiate_w2(const SchemeSelection& sel) {
  if (sel.theory != TheoryKind::W2) throw InputError("selection is not for W2");
  validate_selection(sel);
  // W2 extends W1, so the shared clauses keep their W1 identity.
  Builder b{sel, {}};
  b.base_clauses("w1", "W1");
  b.indiscernibility_clauses("w1", "W1", "v");
  b.fixed_below_clauses("w1", "W1", "vi");
  b.w2_monotonicity();
  return std::move(b.out);
}

EmitterOutput instantiate_w3(const SchemeSelection& sel) {
  if (sel.theory != TheoryKind::W3) throw InputError("selection is not for W3");
  validate_selection(sel);
  Builder b{sel, {}};
  b.base_clauses("w3", "W3");
  b.w3_fixed_axioms();
  b.indiscernibility_clauses("w3", "W3", "viii");
  b.fixed_below_clauses("w3", "W3", "ix");
  return std::move(b.out);
}

EmitterOutput instantiate(const SchemeSelection& sel) {
  switch (sel.theory) {
    case TheoryKind::W1: return instantiate_w1(sel);
    case TheoryKind::W2: return instantiate_w2(sel);
    case TheoryKind::W3: return instantiate_w3(sel);
  }
  throw InputError("unknown theory");
}

namespace {

std::string tptp_term(const Term& t) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TVar>) {
          std::string s = x.name.id;
          s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
          if (x.name.disamb != 0) s += "_" + std::to_string(x.name.disamb);
          return s;
        } else if constexpr (std::is_same_v<T, TConst>) {
          return x.index < 0 ? "c_m" + std::to_string(-x.index)
                             : "c_" + std::to_string(x.index);
        } else if constexpr (std::is_same_v<T, TOmega>) {
          return "omega";
        } else if constexpr (std::is_same_v<T, TBeta>) {
          return "beta";
        } else {
          std::string out = x.fn + "(";
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (i) out += ",";
            out += tptp_term(*x.args[i]);
          }
          out += ")";
          return out;
        }
      },
      t.node);
}

std::string tptp_sentence(const Sentence& s) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SIn>) {
          return "in(" + tptp_term(*x.lhs) + "," + tptp_term(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, SEq>) {
          return "(" + tptp_term(*x.lhs) + " = " + tptp_term(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, SLt>) {
          return "lt(" + tptp_term(*x.lhs) + "," + tptp_term(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, SLeq>) {
          return "leq(" + tptp_term(*x.lhs) + "," + tptp_term(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, SClass>) {
          return "c(" + tptp_term(*x.arg) + ")";
        } else if constexpr (std::is_same_v<T, SOrdinal>) {
          return "ordinal(" + tptp_term(*x.arg) + ")";
        } else if constexpr (std::is_same_v<T, SSethood>) {
          return "s(" + tptp_term(*x.arg) + ")";
        } else if constexpr (std::is_same_v<T, SPairing>) {
          return "p(" + tptp_term(*x.first) + "," + tptp_term(*x.second) + "," +
                 tptp_term(*x.pair) + ")";
        } else if constexpr (std::is_same_v<T, SNot>) {
          return "~(" + tptp_sentence(*x.body) + ")";
        } else if constexpr (std::is_same_v<T, SBin>) {
          const char* op = x.op == Connective::And       ? " & "
                           : x.op == Connective::Or      ? " | "
                           : x.op == Connective::Implies ? " => "
                                                         : " <=> ";
          return "(" + tptp_sentence(*x.lhs) + op + tptp_sentence(*x.rhs) + ")";
        } else {
          std::string v = x.var.id;
          v[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(v[0])));
          if (x.var.disamb != 0) v += "_" + std::to_string(x.var.disamb);
          return std::string(x.q == Quantifier::Forall ? "! [" : "? [") + v +
                 "] : (" + tptp_sentence(*x.body) + ")";
        }
      },
      s.node);
}

}  // namespace

std::string emit(const std::vector<AxiomInstance>& instances, EmitFormat format) {
  std::ostringstream out;
  if (format == EmitFormat::Sexpr) {
    out << "; " << instances.size() << " axiom instances\n";
    for (const AxiomInstance& inst : instances) {
      out << "; " << inst.name << "\n" << inst.text << "\n";
    }
  } else {
    out << "% " << instances.size() << " axiom instances\n";
    for (const AxiomInstance& inst : instances) {
      out << "fof(" << inst.name << ", axiom, " << tptp_sentence(*inst.sentence) << ").\n";
    }
  }
  return out.str();
}

}  // namespace stratus::theory
