#ifndef STRATUS_STRATIFY_HPP
#define STRATUS_STRATIFY_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "stratus/formula.hpp"

namespace stratus {

// One difference constraint contributed by an atom: level(rhs) - level(lhs)
// must equal offset. Membership contributes offset 1 (container one level
// above element); equality and pairing contribute offset 0. Sethood and named
// relations contribute nothing.
struct StratConstraint {
  VarName lhs;
  VarName rhs;
  int offset = 0;       // 0 or 1
  std::size_t atom_index = 0;  // position of the originating atom, depth-first
  std::string atom;            // rendered originating atom

  friend bool operator==(const StratConstraint&, const StratConstraint&) = default;
};

// A satisfying level assignment. Every variable of the formula appears; each
// connected constraint component is shifted so its least level is 0, and
// unconstrained variables sit at level 0.
struct Stratification {
  std::map<VarName, int> levels;
};

// One edge of a closed walk witnessing unsatisfiability. forward means the
// constraint is traversed lhs -> rhs (contributing +offset to the net sum);
// otherwise rhs -> lhs (contributing -offset).
struct CycleStep {
  StratConstraint constraint;
  bool forward = true;
};

// Closed walk whose offsets do not cancel. Walks are normalized to a positive
// net offset.
struct ConflictCycle {
  std::vector<CycleStep> steps;
  int net_offset = 0;
};

using StratResult = std::variant<Stratification, ConflictCycle>;

// Constraints of an alpha-renamed formula in depth-first atom order.
std::vector<StratConstraint> collect_constraints(const Formula& f);

// Difference-constraint solver. Variables not mentioned by any constraint do
// not appear in the result.
StratResult solve(const std::vector<StratConstraint>& constraints);

// alpha_rename + collect_constraints + solve, with every formula variable
// present in a successful assignment. Distinct free occurrences of one name
// share a variable (and hence a level).
StratResult stratify(const FormulaPtr& f);

bool is_stratified(const FormulaPtr& f);

// Free identifiers that stratify treats as shared across occurrences, i.e.
// names of the free variables. Exposed so reports can flag the sharing
// explicitly.
std::vector<std::string> shared_free_names(const FormulaPtr& f);

}  // namespace stratus

#endif
