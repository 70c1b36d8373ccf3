#ifndef STRATUS_RAMSEY_HPP
#define STRATUS_RAMSEY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stratus/formula.hpp"
#include "stratus/structure.hpp"

namespace stratus {

// A total coloring of the k-element subsets of {0, ..., n-1} with colors
// 0..c-1. Subsets are keyed in strictly increasing order.
struct Coloring {
  int n = 0;
  int k = 0;
  long long c = 1;
  std::map<std::vector<int>, long long> assignment;

  long long color_of(const std::vector<int>& subset) const;
  void check() const;  // throws InputError unless total with in-range colors
};

Coloring coloring_from_function(
    int n, int k, long long c,
    const std::function<long long(const std::vector<int>&)>& fn);

struct HomogeneousWitness {
  std::vector<int> subset;
  long long color = 0;
};

// Lexicographically least m-subset of the pool (default: the whole universe)
// all of whose k-subsets share a color. Complete search. When k > m every
// subset is vacuously homogeneous with color 0.
std::optional<HomogeneousWitness> homogeneous(const Coloring& col, int m);
std::optional<HomogeneousWitness> homogeneous(const Coloring& col, int m,
                                              const std::vector<int>& pool);

// Re-checks a claimed witness by direct enumeration.
bool verify_homogeneous(const Coloring& col, const std::vector<int>& subset);

struct RamseyCheck {
  bool holds = false;
  std::uint64_t colorings_checked = 0;
  std::optional<Coloring> counterexample;
};

// Does every c-coloring of k-subsets of an n-set admit a homogeneous m-set?
// Walks all c^C(n,k) colorings; throws BudgetError when that count exceeds
// budget. On failure returns the first counterexample in odometer order.
RamseyCheck exhaustive_ramsey_check(int n, int k, long long c, int m,
                                    std::uint64_t budget = std::uint64_t{1} << 20);

// Colors each increasing k-tuple by the set of formulas it satisfies,
// encoded as a bitmask (formula i contributes bit i), so c = 2^#formulas.
// Formula free variables must lie among x1..xk, where xi is bound to the
// i-th smallest element of the subset.
Coloring truth_coloring(const FiniteStructure& s, const std::vector<FormulaPtr>& formulas,
                        int k);

// Truth-coloring followed by homogeneous extraction: a sequence such that
// any two increasing k-tuples from it satisfy exactly the same formulas.
// The returned subset is re-checked by direct evaluation before returning.
std::optional<std::vector<int>> extract_indiscernibles(const FiniteStructure& s,
                                                       const std::vector<FormulaPtr>& formulas,
                                                       int k, int count);

// Direct re-evaluation: all k-subsets of seq satisfy the same formulas.
bool verify_indiscernibles(const FiniteStructure& s, const std::vector<FormulaPtr>& formulas,
                           int k, const std::vector<int>& seq);

// Stabilized term values over a homogeneous set: values[i] is the constant
// value of term i on increasing tuples from the subset when that value is
// below the threshold z, or z itself when the term sits at or above the
// threshold everywhere on the subset.
struct TermStabilization {
  std::vector<int> subset;
  std::vector<long long> values;
};

// All terms must be functions of the structure with one common arity.
std::optional<TermStabilization> stabilize_terms(const FiniteStructure& s,
                                                 const std::vector<std::string>& terms, int z,
                                                 int m);
std::optional<TermStabilization> stabilize_terms(const FiniteStructure& s,
                                                 const std::vector<std::string>& terms, int z,
                                                 int m, const std::vector<int>& pool);

}  // namespace stratus

#endif
