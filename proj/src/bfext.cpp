#include "stratus/bfext.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>

#include "stratus/errors.hpp"

namespace stratus {

CanonCode::CanonCode(std::vector<CanonCode> children) {
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  if (children.empty()) return;  // canonical empty set is the null handle
  auto node = std::make_shared<Node>();
  for (const CanonCode& c : children) node->depth = std::max(node->depth, c.depth() + 1);
  node->children = std::move(children);
  node_ = std::move(node);
}

CanonCode CanonCode::adopt_sorted(std::vector<CanonCode> children) {
  CanonCode code;
  if (children.empty()) return code;
  auto node = std::make_shared<Node>();
  for (const CanonCode& c : children) node->depth = std::max(node->depth, c.depth() + 1);
  node->children = std::move(children);
  code.node_ = std::move(node);
  return code;
}

int CanonCode::compare(const CanonCode& a, const CanonCode& b) {
  if (a.node_ == b.node_) return 0;
  if (a.depth() != b.depth()) return a.depth() < b.depth() ? -1 : 1;
  const std::vector<CanonCode>& ca = a.children();
  const std::vector<CanonCode>& cb = b.children();
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    int c = compare(ca[i], cb[i]);
    if (c != 0) return c;
  }
  return 0;
}

namespace {

void gather_codes(const CanonCode& c, std::set<CanonCode>& acc) {
  if (!acc.insert(c).second) return;
  for (const CanonCode& k : c.children()) gather_codes(k, acc);
}

}  // namespace

std::size_t CanonCode::node_count() const {
  std::set<CanonCode> acc;
  gather_codes(*this, acc);
  return acc.size();
}

std::string CanonCode::to_literal() const {
  const std::vector<CanonCode>& kids = children();
  std::string out = "{";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ",";
    out += kids[i].to_literal();
  }
  out += "}";
  return out;
}

namespace {

CanonCode parse_literal_at(std::string_view text, std::size_t& pos) {
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '{')
    throw ParseError("expected '{'", 1, static_cast<int>(pos) + 1, {"{"});
  ++pos;
  std::vector<CanonCode> children;
  skip_ws();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
    return CanonCode(std::move(children));
  }
  while (true) {
    children.push_back(parse_literal_at(text, pos));
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      skip_ws();
      continue;
    }
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return CanonCode(std::move(children));
    }
    throw ParseError("expected ',' or '}'", 1, static_cast<int>(pos) + 1, {",", "}"});
  }
}

}  // namespace

CanonCode CanonCode::parse_literal(std::string_view text) {
  std::size_t pos = 0;
  CanonCode code = parse_literal_at(text, pos);
  while (pos < text.size()) {
    if (!std::isspace(static_cast<unsigned char>(text[pos])))
      throw ParseError("trailing input after set literal", 1, static_cast<int>(pos) + 1,
                       {"end of input"});
    ++pos;
  }
  return code;
}

namespace {

struct Adjacency {
  std::map<NodeId, std::vector<NodeId>> children;  // parent -> members
  std::map<NodeId, std::vector<NodeId>> parents;   // child -> containers
};

Adjacency build_adjacency(const PointedRelation& rel) {
  Adjacency adj;
  for (NodeId n : rel.nodes) {
    adj.children[n];
    adj.parents[n];
  }
  for (const auto& [child, parent] : rel.edges) {
    adj.children[parent].push_back(child);
    adj.parents[child].push_back(parent);
  }
  return adj;
}

void check_well_formed(const PointedRelation& rel) {
  if (!rel.nodes.count(rel.top)) throw InputError("top node is not in the node set");
  for (const auto& [child, parent] : rel.edges) {
    if (!rel.nodes.count(child) || !rel.nodes.count(parent))
      throw InputError("edge references a node outside the node set");
  }
}

// Directed cycle along child -> parent edges, if any; the first node is
// repeated at the end.
std::optional<std::vector<NodeId>> find_cycle(const PointedRelation& rel, const Adjacency& adj) {
  std::map<NodeId, int> color;  // 0 unseen, 1 on stack, 2 done
  std::vector<NodeId> stack;

  std::function<std::optional<std::vector<NodeId>>(NodeId)> dfs =
      [&](NodeId u) -> std::optional<std::vector<NodeId>> {
    color[u] = 1;
    stack.push_back(u);
    for (NodeId p : adj.parents.at(u)) {
      int c = color.count(p) ? color.at(p) : 0;
      if (c == 1) {
        auto it = std::find(stack.begin(), stack.end(), p);
        std::vector<NodeId> cycle(it, stack.end());
        cycle.push_back(p);
        return cycle;
      }
      if (c == 0) {
        if (auto found = dfs(p)) return found;
      }
    }
    stack.pop_back();
    color[u] = 2;
    return std::nullopt;
  };

  for (NodeId n : rel.nodes) {
    if (!color.count(n) || color[n] == 0) {
      if (auto found = dfs(n)) return found;
    }
  }
  return std::nullopt;
}

// Codes for every node, children before parents. Precondition: acyclic.
std::map<NodeId, CanonCode> compute_codes(const PointedRelation& rel, const Adjacency& adj) {
  std::map<NodeId, std::size_t> pending;  // children not yet coded
  std::deque<NodeId> ready;
  for (NodeId n : rel.nodes) {
    pending[n] = adj.children.at(n).size();
    if (pending[n] == 0) ready.push_back(n);
  }
  std::map<NodeId, CanonCode> code;
  while (!ready.empty()) {
    NodeId u = ready.front();
    ready.pop_front();
    std::vector<CanonCode> kids;
    kids.reserve(adj.children.at(u).size());
    for (NodeId c : adj.children.at(u)) kids.push_back(code.at(c));
    code.emplace(u, CanonCode(std::move(kids)));
    for (NodeId p : adj.parents.at(u)) {
      if (--pending.at(p) == 0) ready.push_back(p);
    }
  }
  return code;
}

}  // namespace

std::variant<Bfext, ValidationReport> validate(const PointedRelation& rel) {
  check_well_formed(rel);
  Adjacency adj = build_adjacency(rel);
  ValidationReport report;

  report.cycle = find_cycle(rel, adj);

  {
    std::map<std::vector<NodeId>, NodeId> seen;
    for (NodeId n : rel.nodes) {
      std::vector<NodeId> kids = adj.children.at(n);
      std::sort(kids.begin(), kids.end());
      auto [it, fresh] = seen.emplace(std::move(kids), n);
      if (!fresh && !report.duplicate_pair) {
        report.duplicate_pair = {std::min(it->second, n), std::max(it->second, n)};
      }
    }
  }

  {
    std::set<NodeId> reached{rel.top};
    std::deque<NodeId> queue{rel.top};
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (NodeId c : adj.children.at(u))
        if (reached.insert(c).second) queue.push_back(c);
    }
    for (NodeId n : rel.nodes) {
      if (!reached.count(n)) {
        report.unreachable = n;
        break;
      }
    }
  }

  if (!report.ok()) return report;
  std::map<NodeId, CanonCode> codes = compute_codes(rel, adj);
  return Bfext{rel, codes.at(rel.top)};
}

PointedRelation seg(const PointedRelation& rel, NodeId x) {
  check_well_formed(rel);
  if (!rel.nodes.count(x)) throw InputError("segment point is not a node of the relation");
  Adjacency adj = build_adjacency(rel);
  PointedRelation out;
  out.top = x;
  out.nodes.insert(x);
  std::deque<NodeId> queue{x};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId c : adj.children.at(u)) {
      out.edges.emplace(c, u);
      if (out.nodes.insert(c).second) queue.push_back(c);
    }
  }
  return out;
}

CollapseResult collapse(const PointedRelation& rel) {
  check_well_formed(rel);
  Adjacency adj = build_adjacency(rel);
  if (find_cycle(rel, adj)) throw InputError("collapse requires an acyclic relation");
  {
    std::set<NodeId> reached{rel.top};
    std::deque<NodeId> queue{rel.top};
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (NodeId c : adj.children.at(u))
        if (reached.insert(c).second) queue.push_back(c);
    }
    if (reached.size() != rel.nodes.size())
      throw InputError("collapse requires a topped relation");
  }

  std::map<NodeId, CanonCode> codes = compute_codes(rel, adj);
  std::set<CanonCode> classes;
  for (const auto& [n, c] : codes) classes.insert(c);

  std::map<CanonCode, NodeId> class_id;
  NodeId next = 0;
  for (const CanonCode& c : classes) class_id.emplace(c, next++);

  CollapseResult result;
  PointedRelation& q = result.quotient.rel;
  for (const auto& [c, id] : class_id) {
    q.nodes.insert(id);
    for (const CanonCode& kid : c.children()) q.edges.emplace(class_id.at(kid), id);
  }
  q.top = class_id.at(codes.at(rel.top));
  result.quotient.code = codes.at(rel.top);
  for (const auto& [n, c] : codes) result.mapping.emplace(n, class_id.at(c));
  return result;
}

bool iso(const Bfext& a, const Bfext& b) { return a.code == b.code; }

bool eps(const Bfext& r, const Bfext& s) {
  const std::vector<CanonCode>& kids = s.code.children();
  return std::binary_search(kids.begin(), kids.end(), r.code);
}

std::set<CanonCode> ext(const Bfext& x) {
  const std::vector<CanonCode>& kids = x.code.children();
  return {kids.begin(), kids.end()};
}

std::set<CanonCode> pow(const Bfext& x) {
  const std::vector<CanonCode>& kids = x.code.children();
  if (kids.size() > 20) throw BudgetError("power set over more than 20 members");
  std::set<CanonCode> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << kids.size()); ++mask) {
    std::vector<CanonCode> subset;
    for (std::size_t i = 0; i < kids.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) subset.push_back(kids[i]);
    out.insert(CanonCode(std::move(subset)));
  }
  return out;
}

Bfext k_embed(const FinWellOrder& w) {
  std::set<NodeId> distinct(w.elements.begin(), w.elements.end());
  if (distinct.size() != w.elements.size())
    throw InputError("well-order elements must be distinct");
  PointedRelation rel;
  NodeId top = w.elements.empty() ? 0 : *distinct.rbegin() + 1;
  rel.top = top;
  rel.nodes.insert(top);
  for (std::size_t i = 0; i < w.elements.size(); ++i) {
    rel.nodes.insert(w.elements[i]);
    rel.edges.emplace(w.elements[i], top);
    for (std::size_t j = i + 1; j < w.elements.size(); ++j)
      rel.edges.emplace(w.elements[i], w.elements[j]);
  }
  return std::get<Bfext>(validate(rel));
}

Bfext t_op(const Bfext& b) {
  // Fresh ids disjoint from the input's, assigned in node order.
  NodeId offset = b.rel.nodes.empty() ? 1 : *b.rel.nodes.rbegin() + 1;
  std::map<NodeId, NodeId> remap;
  NodeId next = offset;
  for (NodeId n : b.rel.nodes) remap.emplace(n, next++);
  PointedRelation rel;
  for (NodeId n : b.rel.nodes) rel.nodes.insert(remap.at(n));
  for (const auto& [c, p] : b.rel.edges) rel.edges.emplace(remap.at(c), remap.at(p));
  rel.top = remap.at(b.rel.top);
  return std::get<Bfext>(validate(rel));
}

std::uint64_t t_card(std::uint64_t n) {
  std::set<std::set<std::uint64_t>> singletons;
  for (std::uint64_t a = 0; a < n; ++a) singletons.insert(std::set<std::uint64_t>{a});
  return singletons.size();
}

namespace {

struct IdVecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

// A code with m closure nodes is one choice of children drawn from a
// membership-closed family F of m-1 smaller codes whose closures union to
// all of F. The children must include every maximal element of F (or some
// part of F would fall outside the closure) and may include any subset of
// the rest. Enumerating closed families once per size and fanning out over
// those subsets visits every code exactly once.
std::vector<CanonCode> enumerate_bf(std::size_t max_nodes, std::size_t bound) {
  if (max_nodes > bound)
    throw BudgetError("enumeration up to " + std::to_string(max_nodes) +
                      " nodes exceeds the bound of " + std::to_string(bound));
  std::vector<CanonCode> all;
  if (max_nodes == 0) return all;
  all.emplace_back();  // id 0: the empty set
  if (max_nodes == 1) return all;

  // Members of future families need bookkeeping; codes found in the last
  // round do not. Ids are in discovery order, children always have smaller
  // ids than their parents.
  std::vector<std::vector<int>> closures{{0}};  // sorted, self included
  std::unordered_map<std::vector<int>, int, IdVecHash> by_children{{{}, 0}};

  // Flat storage of every code's children ids, kept in code order so the
  // final sort can compare integer sequences instead of structures.
  std::vector<int> kid_arena;
  std::vector<std::uint32_t> kid_off{0};
  std::vector<std::uint32_t> kid_end{0};
  std::vector<std::uint8_t> depths{0};

  // Code-order rank of every id discovered before the current round.
  std::vector<int> rank{0};
  auto refresh_ranks = [&](std::size_t universe) {
    std::vector<int> order(universe);
    for (std::size_t i = 0; i < universe; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return all[a] < all[b]; });
    rank.assign(universe, 0);
    for (std::size_t r = 0; r < universe; ++r) rank[order[r]] = static_cast<int>(r);
  };

  for (std::size_t m = 2; m <= max_nodes; ++m) {
    const std::size_t universe = closures.size();
    const std::size_t family_size = m - 1;
    refresh_ranks(universe);

    std::vector<int> family{0};
    auto harvest = [&] {
      // Split the family into its maximal elements and the rest.
      std::vector<int> by_rank = family;
      std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) { return rank[a] < rank[b]; });
      std::vector<int> forced, optional;
      for (int id : by_rank) {
        bool below = false;
        for (int other : family) {
          if (other == id) continue;
          if (std::binary_search(closures[other].begin(), closures[other].end(), id)) {
            below = true;
            break;
          }
        }
        (below ? optional : forced).push_back(id);
      }

      for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << optional.size()); ++pick) {
        std::vector<int> chosen;
        chosen.reserve(forced.size() + optional.size());
        {
          std::size_t fi = 0, oi = 0;
          while (fi < forced.size() || oi < optional.size()) {
            while (oi < optional.size() && !(pick & (std::uint32_t{1} << oi))) ++oi;
            bool take_forced;
            if (fi == forced.size()) {
              if (oi == optional.size()) break;
              take_forced = false;
            } else if (oi == optional.size()) {
              take_forced = true;
            } else {
              take_forced = rank[forced[fi]] < rank[optional[oi]];
            }
            chosen.push_back(take_forced ? forced[fi++] : optional[oi++]);
          }
        }
        std::vector<CanonCode> kids;
        kids.reserve(chosen.size());
        for (int id : chosen) kids.push_back(all[id]);
        int new_id = static_cast<int>(all.size());
        all.push_back(CanonCode::adopt_sorted(std::move(kids)));
        kid_off.push_back(static_cast<std::uint32_t>(kid_arena.size()));
        for (int id : chosen) kid_arena.push_back(id);
        kid_end.push_back(static_cast<std::uint32_t>(kid_arena.size()));
        depths.push_back(static_cast<std::uint8_t>(all.back().depth()));

        if (m < max_nodes) {
          std::vector<int> closure = family;  // sorted by id; new id is largest
          closure.push_back(new_id);
          closures.push_back(std::move(closure));
          std::vector<int> key = chosen;
          std::sort(key.begin(), key.end());
          by_children.emplace(std::move(key), new_id);
        }
      }
    };

    std::function<void()> extend = [&] {
      if (family.size() == family_size) {
        harvest();
        return;
      }
      // Every extension is a known code whose children all lie in the family,
      // i.e. one of the subsets of the family, added in increasing id order.
      const std::uint32_t subsets = std::uint32_t{1} << family.size();
      std::vector<int> candidates;
      std::vector<int> key;
      for (std::uint32_t s = 0; s < subsets; ++s) {
        key.clear();
        for (std::size_t i = 0; i < family.size(); ++i)
          if (s & (std::uint32_t{1} << i)) key.push_back(family[i]);
        auto it = by_children.find(key);
        if (it != by_children.end() && it->second > family.back()) candidates.push_back(it->second);
      }
      std::sort(candidates.begin(), candidates.end());
      for (int id : candidates) {
        family.push_back(id);
        extend();
        family.pop_back();
      }
    };
    extend();
  }

  // Final code order: depth, then width, then children lexicographically.
  // Children were stored rank-ordered, and ranks over the final universe
  // order the same way, so integer comparison suffices.
  refresh_ranks(closures.size());
  std::vector<std::uint32_t> perm(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) perm[i] = static_cast<std::uint32_t>(i);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (depths[a] != depths[b]) return depths[a] < depths[b];
    std::uint32_t la = kid_end[a] - kid_off[a], lb = kid_end[b] - kid_off[b];
    if (la != lb) return la < lb;
    for (std::uint32_t i = 0; i < la; ++i) {
      int ra = rank[kid_arena[kid_off[a] + i]], rb = rank[kid_arena[kid_off[b] + i]];
      if (ra != rb) return ra < rb;
    }
    return false;
  });
  std::vector<CanonCode> sorted;
  sorted.reserve(all.size());
  for (std::uint32_t i : perm) sorted.push_back(std::move(all[i]));
  return sorted;
}

Bfext from_code(const CanonCode& code) {
  // One node per distinct code in the closure, edges from the children
  // lists: extensional, acyclic, and topped by construction, with the given
  // code as its canonical form.
  std::set<CanonCode> closure;
  gather_codes(code, closure);
  std::map<CanonCode, NodeId> id;
  NodeId next = 0;
  for (const CanonCode& c : closure) id.emplace(c, next++);
  PointedRelation rel;
  for (const auto& [c, n] : id) {
    rel.nodes.insert(n);
    for (const CanonCode& kid : c.children()) rel.edges.emplace(id.at(kid), n);
  }
  rel.top = id.at(code);
  return Bfext{std::move(rel), code};
}

Bfext from_set_literal(std::string_view text) {
  return from_code(CanonCode::parse_literal(text));
}

}  // namespace stratus
