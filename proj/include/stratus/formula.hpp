#ifndef STRATUS_FORMULA_HPP
#define STRATUS_FORMULA_HPP

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stratus {

// A variable is an identifier plus a disambiguator assigned by alpha
// renaming. Disambiguator 0 renders as the bare identifier, anything else as
// "id#n". Source text may mention disambiguated names directly.
struct VarName {
  std::string id;
  int disamb = 0;

  auto operator<=>(const VarName&) const = default;
  std::string str() const;
};

enum class Connective { And, Or, Implies, Iff };
enum class Quantifier { Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Membership {
  VarName element;
  VarName container;
};  // (in x y)
struct Equality {
  VarName lhs;
  VarName rhs;
};  // (= x y)
struct Sethood {
  VarName arg;
};  // (S x)
struct Pairing {
  VarName first;
  VarName second;
  VarName pair;
};  // (P x y z)

// Atom over a named relation outside the core signature. Only produced when
// parsing with named_relations enabled; the strict parser rejects unknown
// heads.
struct RelApp {
  std::string rel;
  std::vector<VarName> args;
};

struct Negation {
  FormulaPtr body;
};
struct Binary {
  Connective op;
  FormulaPtr lhs;
  FormulaPtr rhs;
};
struct Quantified {
  Quantifier q;
  VarName var;
  FormulaPtr body;
};

struct Formula {
  using Node =
      std::variant<Membership, Equality, Sethood, Pairing, RelApp, Negation, Binary, Quantified>;
  Node node;
};

bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

FormulaPtr mk_in(VarName element, VarName container);
FormulaPtr mk_eq(VarName lhs, VarName rhs);
FormulaPtr mk_sethood(VarName arg);
FormulaPtr mk_pairing(VarName first, VarName second, VarName pair);
FormulaPtr mk_rel(std::string rel, std::vector<VarName> args);
FormulaPtr mk_not(FormulaPtr body);
FormulaPtr mk_bin(Connective op, FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_and(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_or(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_iff(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_forall(VarName var, FormulaPtr body);
FormulaPtr mk_exists(VarName var, FormulaPtr body);

struct ParseOptions {
  bool named_relations = false;  // accept (head x y ...) atoms outside the core signature
  bool infix = false;            // infix surface syntax instead of s-expressions
};

// Parses a single formula. Throws ParseError on malformed input, including
// trailing garbage.
FormulaPtr parse_formula(std::string_view text, const ParseOptions& opts = {});

// One formula per non-blank line; ';' starts a comment. Reported positions
// use 1-based line numbers within the stream.
std::vector<FormulaPtr> parse_formula_lines(std::istream& in, const ParseOptions& opts = {});

// Canonical s-expression form; parse_formula(render(f)) reproduces f.
std::string render(const Formula& f);
inline std::string render(const FormulaPtr& f) { return render(*f); }

// Renames bound variables so no two binders in the formula introduce the same
// name and no bound name collides with a free one. Free occurrences keep
// their source name. Idempotent.
FormulaPtr alpha_rename(const FormulaPtr& f);

// Free variables, sorted and deduplicated.
std::vector<VarName> free_variables(const Formula& f);

// Every variable with at least one occurrence (free, bound, or binder-only),
// sorted and deduplicated. Intended for alpha-renamed formulas.
std::vector<VarName> all_variables(const Formula& f);

// Simultaneous substitution of variables for variables in free positions,
// renaming binders where a replacement would otherwise be captured.
FormulaPtr substitute_free(const FormulaPtr& f, const std::vector<std::pair<VarName, VarName>>& map);

}  // namespace stratus

#endif
