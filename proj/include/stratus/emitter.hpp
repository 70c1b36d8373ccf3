#ifndef STRATUS_EMITTER_HPP
#define STRATUS_EMITTER_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stratus/formula.hpp"

namespace stratus::theory {

// Terms of the extended language: variables, the indexed constants c_i
// (i may be negative), the distinguished constants omega and beta, and
// applications of named function symbols (Skolem terms, fhat).
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct TVar {
  VarName name;
};
struct TConst {
  int index;
};
struct TOmega {};
struct TBeta {};
struct TApp {
  std::string fn;
  std::vector<TermPtr> args;
};

struct Term {
  std::variant<TVar, TConst, TOmega, TBeta, TApp> node;
};

bool operator==(const Term& a, const Term& b);

TermPtr t_var(VarName v);
TermPtr t_const(int index);
TermPtr t_omega();
TermPtr t_beta();
TermPtr t_app(std::string fn, std::vector<TermPtr> args);

// Sentences extend the core grammar with atoms over terms plus the
// primitives <, <=, the class predicate C, and "is an ordinal".
struct Sentence;
using SentencePtr = std::shared_ptr<const Sentence>;

struct SIn {
  TermPtr lhs, rhs;
};
struct SEq {
  TermPtr lhs, rhs;
};
struct SLt {
  TermPtr lhs, rhs;
};
struct SLeq {
  TermPtr lhs, rhs;
};
struct SClass {
  TermPtr arg;
};  // (C t)
struct SOrdinal {
  TermPtr arg;
};
struct SSethood {
  TermPtr arg;
};
struct SPairing {
  TermPtr first, second, pair;
};
struct SNot {
  SentencePtr body;
};
struct SBin {
  Connective op;
  SentencePtr lhs, rhs;
};
struct SQuant {
  Quantifier q;
  VarName var;
  SentencePtr body;
};

struct Sentence {
  std::variant<SIn, SEq, SLt, SLeq, SClass, SOrdinal, SSethood, SPairing, SNot, SBin, SQuant>
      node;
};

bool operator==(const Sentence& a, const Sentence& b);

SentencePtr s_in(TermPtr l, TermPtr r);
SentencePtr s_eq(TermPtr l, TermPtr r);
SentencePtr s_lt(TermPtr l, TermPtr r);
SentencePtr s_leq(TermPtr l, TermPtr r);
SentencePtr s_class(TermPtr a);
SentencePtr s_ordinal(TermPtr a);
SentencePtr s_not(SentencePtr b);
SentencePtr s_and(SentencePtr l, SentencePtr r);
SentencePtr s_implies(SentencePtr l, SentencePtr r);
SentencePtr s_iff(SentencePtr l, SentencePtr r);
SentencePtr s_forall(VarName v, SentencePtr b);
SentencePtr s_exists(VarName v, SentencePtr b);

std::string render(const Sentence& s);
inline std::string render(const SentencePtr& s) { return render(*s); }

// Round-trip parser for the extended grammar; parse(render(s)) == s.
SentencePtr parse_sentence(std::string_view text);

// Core formulas embed atom-for-atom (their variables become term variables).
// Named-relation atoms are outside the emitted language and are rejected.
SentencePtr embed(const Formula& f);

struct SkolemTermSig {
  std::string name;
  int arity = 1;
};

enum class TheoryKind { W1, W2, W3 };

struct SchemeSelection {
  TheoryKind theory = TheoryKind::W1;
  int n_constants = 0;  // constants c_{-n}, ..., c_n
  std::vector<FormulaPtr> formulas;
  std::vector<SkolemTermSig> terms;
  // When absent, every strictly increasing tuple in [-n, n] of the right
  // length is used; when present, only the listed tuples (filtered per term
  // by arity).
  std::optional<std::vector<std::vector<int>>> index_tuples;
};

struct Provenance {
  std::optional<int> formula;        // index into SchemeSelection::formulas
  std::optional<std::string> term;   // Skolem term name
  std::vector<int> constants;        // constant subscripts used directly
  std::vector<std::vector<int>> tuples;  // index tuples used
};

struct AxiomInstance {
  std::string scheme_id;  // e.g. "W1.v"
  std::string name;       // e.g. "w1_v_f0"; unique within an output
  SentencePtr sentence;
  std::string text;  // canonical rendering of sentence
  Provenance provenance;
};

// An instantiation the bounds rule forced us to drop (W2 clause vii with a
// shifted index outside [-n, n]).
struct SkippedInstance {
  std::string scheme_id;
  std::string term;
  std::vector<int> tuple;
  std::string reason;
};

struct EmitterOutput {
  std::vector<AxiomInstance> instances;
  std::vector<SkippedInstance> skipped;
};

EmitterOutput instantiate_w1(const SchemeSelection& sel);
EmitterOutput instantiate_w2(const SchemeSelection& sel);
EmitterOutput instantiate_w3(const SchemeSelection& sel);
EmitterOutput instantiate(const SchemeSelection& sel);

enum class EmitFormat { Sexpr, TptpLike };

// Deterministic serialization of an instance list. Sexpr mode writes a
// comment header, then per instance a name comment and the bare sentence;
// tptp-like mode writes one fof(name, axiom, ...) line per instance.
std::string emit(const std::vector<AxiomInstance>& instances, EmitFormat format);

}  // namespace stratus::theory

#endif
