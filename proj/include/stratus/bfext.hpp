#ifndef STRATUS_BFEXT_HPP
#define STRATUS_BFEXT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stratus {

// A pointed relation: finite DAG candidate encoding a set by its membership
// edges. An edge <c, p> reads "c is a member of p". The top node is the set
// being encoded.
using NodeId = std::int64_t;

struct PointedRelation {
  std::set<NodeId> nodes;
  std::set<std::pair<NodeId, NodeId>> edges;  // <child, parent>
  NodeId top = 0;
};

// Canonical form of a hereditarily finite set: children sorted and
// deduplicated under the code ordering (depth, then width, then
// lexicographic), so structural equality is set equality. A code is a cheap
// handle onto an immutable node; copies share subtrees.
class CanonCode {
public:
  CanonCode() = default;  // the empty set
  explicit CanonCode(std::vector<CanonCode> children);

  const std::vector<CanonCode>& children() const {
    static const std::vector<CanonCode> none;
    return node_ ? node_->children : none;
  }
  int depth() const { return node_ ? node_->depth : 0; }  // 0 for the empty set

  // Nodes of the canonical picture: distinct codes in the transitive closure,
  // this one included.
  std::size_t node_count() const;

  std::string to_literal() const;  // "{}", "{{},{{}}}", ...
  static CanonCode parse_literal(std::string_view text);

  bool operator==(const CanonCode& other) const { return compare(*this, other) == 0; }
  bool operator!=(const CanonCode& other) const { return !(*this == other); }
  bool operator<(const CanonCode& other) const { return compare(*this, other) < 0; }

  static int compare(const CanonCode& a, const CanonCode& b);

private:
  struct Node {
    std::vector<CanonCode> children;
    int depth = 0;
  };
  // Trusted path for callers that already hold distinct children in code
  // order; skips the sort and dedup of the public constructor.
  static CanonCode adopt_sorted(std::vector<CanonCode> children);
  friend std::vector<CanonCode> enumerate_bf(std::size_t, std::size_t);

  std::shared_ptr<const Node> node_;  // null for the empty set
};

// A certified pointed relation: acyclic, extensional, topped. Only
// obtainable through validate / collapse / the constructors below, so holding
// one is proof the properties were checked.
struct Bfext {
  PointedRelation rel;
  CanonCode code;
};

// Witnesses for each failed property. cycle lists nodes along a directed
// cycle (first node repeated at the end); duplicate_pair is two distinct
// nodes with identical child sets; unreachable is a node with no path to top.
struct ValidationReport {
  std::optional<std::vector<NodeId>> cycle;
  std::optional<std::pair<NodeId, NodeId>> duplicate_pair;
  std::optional<NodeId> unreachable;
  bool ok() const { return !cycle && !duplicate_pair && !unreachable; }
};

// Checks all three properties and reports every failure at once.
std::variant<Bfext, ValidationReport> validate(const PointedRelation& rel);

// The sub-relation below x: edges reachable downward from x, pointed at x.
// Throws InputError if x is not a node of rel.
PointedRelation seg(const PointedRelation& rel, NodeId x);

// Mostowski-style collapse of an acyclic topped relation onto its
// extensional quotient. mapping sends each input node to the node of the
// quotient standing for its code; quotient node ids are 0..k-1 in code order.
// Throws InputError when rel is cyclic or not topped.
struct CollapseResult {
  Bfext quotient;
  std::map<NodeId, NodeId> mapping;
};
CollapseResult collapse(const PointedRelation& rel);

inline const CanonCode& canon(const Bfext& b) { return b.code; }

// Isomorphism of certified relations (equality of canonical forms).
bool iso(const Bfext& a, const Bfext& b);

// Set-membership on codes: r is a member of s when r is isomorphic to the
// segment below some child of s's top.
bool eps(const Bfext& r, const Bfext& s);

// Codes of the members of the encoded set.
std::set<CanonCode> ext(const Bfext& x);

// Codes of all subsets of the encoded set: one per subset of ext(x).
std::set<CanonCode> pow(const Bfext& x);

// A finite strict well-order presented by its elements in increasing order.
struct FinWellOrder {
  std::vector<NodeId> elements;
};

// Embeds an n-element order as the n-th von Neumann ordinal: each element
// becomes the set of its predecessors, collected under a fresh top.
Bfext k_embed(const FinWellOrder& w);

// Rebuilds the relation with fresh node ids and re-certifies it; the result
// is isomorphic to the input. Mirrors the map sending a set's picture to the
// picture of its pointwise image, which is injective on codes.
Bfext t_op(const Bfext& b);

// |{ {a} : a in A }| for |A| = n, computed by materializing the singletons.
std::uint64_t t_card(std::uint64_t n);

// All codes with at most max_nodes nodes, in code order. Guarded by bound
// (the count grows super-exponentially). Throws BudgetError when
// max_nodes > bound.
std::vector<CanonCode> enumerate_bf(std::size_t max_nodes, std::size_t bound = 9);

// Certified relation for a brace literal such as "{{},{{}}}".
Bfext from_set_literal(std::string_view text);

// Certified relation whose canonical form is the given code.
Bfext from_code(const CanonCode& code);

}  // namespace stratus

#endif
