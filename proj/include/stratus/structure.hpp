#ifndef STRATUS_STRUCTURE_HPP
#define STRATUS_STRUCTURE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stratus/formula.hpp"

namespace stratus {

// A finite model over universe {0, ..., size-1}: named relations as tuple
// sets and named functions as total tables. The core atoms look up fixed
// names: membership -> "in", sethood -> "S", pairing -> "P"; equality is
// always identity. Named-relation atoms look up their own head.
struct FunctionTable {
  int arity = 0;
  std::map<std::vector<int>, int> table;
};

struct FiniteStructure {
  int size = 0;
  std::map<std::string, std::set<std::vector<int>>> relations;
  std::map<std::string, FunctionTable> functions;

  // Throws InputError on out-of-range entries, mixed arities, or a
  // non-total function table.
  void check() const;

  static FiniteStructure from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

using Env = std::map<VarName, int>;

// Tarski evaluation. Quantifiers range over the whole universe. Throws
// InputError when an atom names a relation the structure does not provide,
// on arity mismatch, or when a free variable is missing from env.
bool eval(const FiniteStructure& s, const Formula& f, const Env& env);

// Applies a named function table to a tuple. Throws InputError on unknown
// name or arity mismatch.
int apply_function(const FiniteStructure& s, const std::string& name,
                   const std::vector<int>& args);

}  // namespace stratus

#endif
