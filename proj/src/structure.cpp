#include "stratus/structure.hpp"

#include <cmath>
#include <functional>

#include "stratus/errors.hpp"

namespace stratus {

void FiniteStructure::check() const {
  if (size < 0) throw InputError("structure size must be non-negative");
  for (const auto& [name, tuples] : relations) {
    std::size_t arity = 0;
    bool first = true;
    for (const auto& t : tuples) {
      if (first) {
        arity = t.size();
        first = false;
      } else if (t.size() != arity) {
        throw InputError("relation '" + name + "' mixes tuple arities");
      }
      for (int v : t)
        if (v < 0 || v >= size)
          throw InputError("relation '" + name + "' contains an out-of-range element");
    }
  }
  for (const auto& [name, fn] : functions) {
    if (fn.arity < 0) throw InputError("function '" + name + "' has negative arity");
    double expect = std::pow(static_cast<double>(size), fn.arity);
    if (static_cast<double>(fn.table.size()) != expect)
      throw InputError("function '" + name + "' is not total on the universe");
    for (const auto& [args, value] : fn.table) {
      if (static_cast<int>(args.size()) != fn.arity)
        throw InputError("function '" + name + "' mixes tuple arities");
      for (int v : args)
        if (v < 0 || v >= size)
          throw InputError("function '" + name + "' argument out of range");
      if (value < 0 || value >= size)
        throw InputError("function '" + name + "' value out of range");
    }
  }
}

FiniteStructure FiniteStructure::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("structure must be a JSON object");
  FiniteStructure s;
  if (!j.contains("size") || !j.at("size").is_number_integer())
    throw InputError("structure requires an integer \"size\"");
  s.size = j.at("size").get<int>();
  if (j.contains("relations")) {
    for (const auto& [name, tuples] : j.at("relations").items()) {
      if (!tuples.is_array()) throw InputError("relation '" + name + "' must be an array");
      auto& rel = s.relations[name];
      for (const auto& t : tuples) {
        if (!t.is_array()) throw InputError("relation '" + name + "' rows must be arrays");
        rel.insert(t.get<std::vector<int>>());
      }
    }
  }
  if (j.contains("functions")) {
    for (const auto& [name, fj] : j.at("functions").items()) {
      FunctionTable fn;
      if (!fj.is_object() || !fj.contains("arity") || !fj.contains("table"))
        throw InputError("function '" + name + "' requires \"arity\" and \"table\"");
      fn.arity = fj.at("arity").get<int>();
      for (const auto& row : fj.at("table")) {
        // a row is [a1, ..., ak, value]
        std::vector<int> entry = row.get<std::vector<int>>();
        if (static_cast<int>(entry.size()) != fn.arity + 1)
          throw InputError("function '" + name + "' rows must have arity+1 entries");
        int value = entry.back();
        entry.pop_back();
        fn.table[entry] = value;
      }
      s.functions[name] = std::move(fn);
    }
  }
  s.check();
  return s;
}

nlohmann::json FiniteStructure::to_json() const {
  nlohmann::json j;
  j["size"] = size;
  j["relations"] = nlohmann::json::object();
  for (const auto& [name, tuples] : relations) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& t : tuples) rows.push_back(t);
    j["relations"][name] = std::move(rows);
  }
  j["functions"] = nlohmann::json::object();
  for (const auto& [name, fn] : functions) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [args, value] : fn.table) {
      std::vector<int> row = args;
      row.push_back(value);
      rows.push_back(row);
    }
    j["functions"][name] = {{"arity", fn.arity}, {"table", std::move(rows)}};
  }
  return j;
}

namespace {

bool holds(const FiniteStructure& s, const std::string& rel, const std::vector<int>& args) {
  auto it = s.relations.find(rel);
  if (it == s.relations.end())
    throw InputError("structure does not interpret relation '" + rel + "'");
  if (!it->second.empty() && it->second.begin()->size() != args.size())
    throw InputError("arity mismatch for relation '" + rel + "'");
  return it->second.count(args) > 0;
}

int lookup(const Env& env, const VarName& v) {
  auto it = env.find(v);
  if (it == env.end()) throw InputError("unbound variable '" + v.str() + "'");
  return it->second;
}

}  // namespace

bool eval(const FiniteStructure& s, const Formula& f, const Env& env) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Membership>) {
          return holds(s, "in", {lookup(env, x.element), lookup(env, x.container)});
        } else if constexpr (std::is_same_v<T, Equality>) {
          return lookup(env, x.lhs) == lookup(env, x.rhs);
        } else if constexpr (std::is_same_v<T, Sethood>) {
          return holds(s, "S", {lookup(env, x.arg)});
        } else if constexpr (std::is_same_v<T, Pairing>) {
          return holds(s, "P",
                       {lookup(env, x.first), lookup(env, x.second), lookup(env, x.pair)});
        } else if constexpr (std::is_same_v<T, RelApp>) {
          std::vector<int> args;
          args.reserve(x.args.size());
          for (const auto& a : x.args) args.push_back(lookup(env, a));
          return holds(s, x.rel, args);
        } else if constexpr (std::is_same_v<T, Negation>) {
          return !eval(s, *x.body, env);
        } else if constexpr (std::is_same_v<T, Binary>) {
          bool l = eval(s, *x.lhs, env);
          bool r = eval(s, *x.rhs, env);
          switch (x.op) {
            case Connective::And: return l && r;
            case Connective::Or: return l || r;
            case Connective::Implies: return !l || r;
            case Connective::Iff: return l == r;
          }
          return false;
        } else {
          Env inner = env;
          for (int a = 0; a < s.size; ++a) {
            inner[x.var] = a;
            bool v = eval(s, *x.body, inner);
            if (x.q == Quantifier::Exists && v) return true;
            if (x.q == Quantifier::Forall && !v) return false;
          }
          return x.q == Quantifier::Forall;
        }
      },
      f.node);
}

int apply_function(const FiniteStructure& s, const std::string& name,
                   const std::vector<int>& args) {
  auto it = s.functions.find(name);
  if (it == s.functions.end())
    throw InputError("structure does not interpret function '" + name + "'");
  if (static_cast<int>(args.size()) != it->second.arity)
    throw InputError("arity mismatch for function '" + name + "'");
  auto row = it->second.table.find(args);
  if (row == it->second.table.end())
    throw InputError("function '" + name + "' has no entry for the given tuple");
  return row->second;
}

}  // namespace stratus
