#include "stratus/stratify.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace stratus {

namespace {

void collect_walk(const Formula& f, std::size_t& atom_index,
                  std::vector<StratConstraint>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Membership>) {
          out.push_back({x.element, x.container, 1, atom_index, render(f)});
          ++atom_index;
        } else if constexpr (std::is_same_v<T, Equality>) {
          out.push_back({x.lhs, x.rhs, 0, atom_index, render(f)});
          ++atom_index;
        } else if constexpr (std::is_same_v<T, Pairing>) {
          // all three arguments of a pairing atom share a level
          out.push_back({x.first, x.pair, 0, atom_index, render(f)});
          out.push_back({x.second, x.pair, 0, atom_index, render(f)});
          ++atom_index;
        } else if constexpr (std::is_same_v<T, Sethood> || std::is_same_v<T, RelApp>) {
          ++atom_index;  // imposes nothing
        } else if constexpr (std::is_same_v<T, Negation>) {
          collect_walk(*x.body, atom_index, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_walk(*x.lhs, atom_index, out);
          collect_walk(*x.rhs, atom_index, out);
        } else {
          collect_walk(*x.body, atom_index, out);
        }
      },
      f.node);
}

struct Edge {
  std::size_t cidx;
  bool forward;  // traversal direction lhs -> rhs
};

int step_delta(const StratConstraint& c, bool forward) {
  return forward ? c.offset : -c.offset;
}

ConflictCycle normalize(std::vector<CycleStep> steps) {
  int net = 0;
  for (const CycleStep& s : steps) net += step_delta(s.constraint, s.forward);
  if (net < 0) {
    std::reverse(steps.begin(), steps.end());
    for (CycleStep& s : steps) s.forward = !s.forward;
    net = -net;
  }
  return ConflictCycle{std::move(steps), net};
}

}  // namespace

std::vector<StratConstraint> collect_constraints(const Formula& f) {
  std::vector<StratConstraint> out;
  std::size_t atom_index = 0;
  collect_walk(f, atom_index, out);
  return out;
}

StratResult solve(const std::vector<StratConstraint>& constraints) {
  std::map<VarName, std::vector<Edge>> adj;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    adj[constraints[i].lhs].push_back({i, true});
    adj[constraints[i].rhs].push_back({i, false});
  }

  std::map<VarName, int> level;
  struct TreeEntry {
    VarName parent;
    std::size_t cidx;
    bool forward;  // direction parent -> node
    bool root;
  };
  std::map<VarName, TreeEntry> tree;

  // Root path as steps from the component root down to v.
  auto root_path = [&](VarName v) {
    std::vector<CycleStep> path;
    while (!tree.at(v).root) {
      const TreeEntry& e = tree.at(v);
      path.push_back({constraints[e.cidx], e.forward});
      v = e.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  for (const auto& [start, unused] : adj) {
    if (level.count(start)) continue;
    level[start] = 0;
    tree[start] = {start, 0, true, true};
    std::deque<VarName> queue{start};
    std::vector<VarName> component{start};
    while (!queue.empty()) {
      VarName u = queue.front();
      queue.pop_front();
      for (const Edge& e : adj.at(u)) {
        const StratConstraint& c = constraints[e.cidx];
        VarName v = e.forward ? c.rhs : c.lhs;
        int want = level.at(u) + step_delta(c, e.forward);
        auto it = level.find(v);
        if (it == level.end()) {
          level[v] = want;
          tree[v] = {u, e.cidx, e.forward, false};
          queue.push_back(v);
          component.push_back(v);
          continue;
        }
        if (it->second == want) continue;
        // Inconsistent edge: close a walk through the BFS tree.
        std::vector<CycleStep> up = root_path(u);
        std::vector<CycleStep> down = root_path(v);
        std::size_t common = 0;
        while (common < up.size() && common < down.size() &&
               up[common].constraint == down[common].constraint &&
               up[common].forward == down[common].forward)
          ++common;
        std::vector<CycleStep> walk(up.begin() + common, up.end());
        walk.push_back({c, e.forward});
        for (std::size_t i = down.size(); i > common; --i)
          walk.push_back({down[i - 1].constraint, !down[i - 1].forward});
        return normalize(std::move(walk));
      }
    }
    int low = level.at(component.front());
    for (const VarName& v : component) low = std::min(low, level.at(v));
    for (const VarName& v : component) level.at(v) -= low;
  }
  return Stratification{std::move(level)};
}

StratResult stratify(const FormulaPtr& f) {
  FormulaPtr renamed = alpha_rename(f);
  StratResult res = solve(collect_constraints(*renamed));
  if (auto* ok = std::get_if<Stratification>(&res)) {
    for (const VarName& v : all_variables(*renamed))
      ok->levels.emplace(v, 0);  // unconstrained variables sit at level 0
  }
  return res;
}

bool is_stratified(const FormulaPtr& f) {
  return std::holds_alternative<Stratification>(stratify(f));
}

std::vector<std::string> shared_free_names(const FormulaPtr& f) {
  std::set<std::string> ids;
  for (const VarName& v : free_variables(*f)) ids.insert(v.id);
  return {ids.begin(), ids.end()};
}

}  // namespace stratus
