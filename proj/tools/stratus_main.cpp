#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stratus/bfext.hpp"
#include "stratus/emitter.hpp"
#include "stratus/errors.hpp"
#include "stratus/formula.hpp"
#include "stratus/ramsey.hpp"
#include "stratus/stratify.hpp"
#include "stratus/structure.hpp"

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

struct ActionResult {
  json payload;
  std::string human;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw stratus::InputError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw stratus::InputError("file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<stratus::FormulaPtr> load_formulas(const std::string& path,
                                               const stratus::ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw stratus::InputError("cannot open file '" + path + "'");
  return stratus::parse_formula_lines(in, opts);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw stratus::InputError("'" + item + "' is not an integer");
    }
  }
  return out;
}

std::uint64_t search_budget(std::uint64_t fallback) {
  const char* env = std::getenv("STRATUS_BUDGET");
  if (!env) return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw stratus::InputError("STRATUS_BUDGET is not a number");
  }
}

// ---- DAG / coloring (de)serialization ----

stratus::PointedRelation dag_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges") || !j.contains("top"))
    throw stratus::InputError("DAG file needs \"nodes\", \"edges\", and \"top\"");
  stratus::PointedRelation rel;
  for (const auto& n : j.at("nodes")) rel.nodes.insert(n.get<stratus::NodeId>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw stratus::InputError("each edge must be a [child, parent] pair");
    rel.edges.emplace(e[0].get<stratus::NodeId>(), e[1].get<stratus::NodeId>());
  }
  rel.top = j.at("top").get<stratus::NodeId>();
  return rel;
}

json dag_to_json(const stratus::PointedRelation& rel) {
  json nodes = json::array();
  for (auto n : rel.nodes) nodes.push_back(n);
  json edges = json::array();
  for (const auto& [c, p] : rel.edges) edges.push_back(json::array({c, p}));
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"top", rel.top}};
}

// One certified input, from either a DAG file or a brace literal.
stratus::Bfext load_bfext(const std::string& dag_path, const std::string& literal,
                          const char* what) {
  if (dag_path.empty() == literal.empty())
    throw stratus::InputError(std::string("provide exactly one of --dag") + what + " / --set" +
                              what);
  if (!literal.empty()) return stratus::from_set_literal(literal);
  auto rel = dag_from_json(parse_json_file(dag_path));
  auto v = stratus::validate(rel);
  if (auto* ok = std::get_if<stratus::Bfext>(&v)) return *ok;
  throw stratus::InputError("'" + dag_path + "' is not a valid coded set (run bfext validate)");
}

stratus::Coloring coloring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("c") ||
      !j.contains("entries"))
    throw stratus::InputError("coloring file needs \"n\", \"k\", \"c\", and \"entries\"");
  stratus::Coloring col;
  col.n = j.at("n").get<int>();
  col.k = j.at("k").get<int>();
  col.c = j.at("c").get<long long>();
  for (const auto& entry : j.at("entries")) {
    if (!entry.is_array() || entry.size() != 2)
      throw stratus::InputError("each coloring entry must be [[subset], color]");
    col.assignment[entry[0].get<std::vector<int>>()] = entry[1].get<long long>();
  }
  col.check();
  return col;
}

json coloring_to_json(const stratus::Coloring& col) {
  json entries = json::array();
  for (const auto& [subset, color] : col.assignment)
    entries.push_back(json::array({subset, color}));
  return json{{"n", col.n}, {"k", col.k}, {"c", col.c}, {"entries", std::move(entries)}};
}

json codes_to_json(const std::set<stratus::CanonCode>& codes) {
  json out = json::array();
  for (const auto& c : codes) out.push_back(c.to_literal());
  return out;
}

// ---- stratify ----

json constraint_to_json(const stratus::StratConstraint& c) {
  return json{{"lhs", c.lhs.str()},
              {"rhs", c.rhs.str()},
              {"offset", c.offset},
              {"atom_index", c.atom_index},
              {"atom", c.atom}};
}

ActionResult run_stratify(const std::string& path, bool infix) {
  stratus::ParseOptions opts;
  opts.infix = infix;
  std::vector<stratus::FormulaPtr> formulas = load_formulas(path, opts);
  json reports = json::array();
  std::ostringstream human;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    const stratus::FormulaPtr& f = formulas[i];
    stratus::FormulaPtr renamed = stratus::alpha_rename(f);
    std::vector<stratus::StratConstraint> constraints =
        stratus::collect_constraints(*renamed);
    stratus::StratResult res = stratus::stratify(f);
    json report;
    report["formula"] = stratus::render(f);
    json origins = json::array();
    for (const auto& c : constraints) origins.push_back(constraint_to_json(c));
    report["origins"] = std::move(origins);
    report["shared_free_names"] = stratus::shared_free_names(f);
    if (const auto* ok = std::get_if<stratus::Stratification>(&res)) {
      report["status"] = "stratified";
      json levels = json::object();
      for (const auto& [v, lvl] : ok->levels) levels[v.str()] = lvl;
      report["levels"] = std::move(levels);
      human << "formula " << i + 1 << ": stratified;";
      for (const auto& [v, lvl] : ok->levels) human << " " << v.str() << "=" << lvl;
      human << "\n";
    } else {
      const auto& cycle = std::get<stratus::ConflictCycle>(res);
      report["status"] = "conflict";
      json steps = json::array();
      for (const auto& s : cycle.steps) {
        json step = constraint_to_json(s.constraint);
        step["forward"] = s.forward;
        steps.push_back(std::move(step));
      }
      report["cycle"] = json{{"net_offset", cycle.net_offset}, {"steps", std::move(steps)}};
      human << "formula " << i + 1 << ": conflict; closed walk with net offset "
            << cycle.net_offset << " through";
      for (const auto& s : cycle.steps) human << " " << s.constraint.atom;
      human << "\n";
    }
    reports.push_back(std::move(report));
  }
  return {std::move(reports), human.str()};
}

// ---- emit ----

stratus::theory::TheoryKind theory_from_name(const std::string& name) {
  if (name == "w1") return stratus::theory::TheoryKind::W1;
  if (name == "w2") return stratus::theory::TheoryKind::W2;
  if (name == "w3") return stratus::theory::TheoryKind::W3;
  throw stratus::InputError("unknown theory '" + name + "' (expected w1, w2, or w3)");
}

std::vector<stratus::theory::SkolemTermSig> parse_term_sigs(const std::string& text) {
  std::vector<stratus::theory::SkolemTermSig> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto slash = item.find('/');
    if (slash == std::string::npos)
      throw stratus::InputError("term signature '" + item + "' must look like name/arity");
    stratus::theory::SkolemTermSig sig;
    sig.name = item.substr(0, slash);
    try {
      sig.arity = std::stoi(item.substr(slash + 1));
    } catch (const std::exception&) {
      throw stratus::InputError("term signature '" + item + "' has a malformed arity");
    }
    out.push_back(std::move(sig));
  }
  return out;
}

// Tuples are separated by ';', entries by spaces or commas: "-1;0" or "0 1;1 2".
std::vector<std::vector<int>> parse_tuples(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::string chunk;
  std::istringstream in(text);
  while (std::getline(in, chunk, ';')) {
    for (char& ch : chunk)
      if (ch == ',') ch = ' ';
    std::istringstream tuple_in(chunk);
    std::vector<int> tuple;
    std::string tok;
    while (tuple_in >> tok) {
      try {
        tuple.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw stratus::InputError("'" + tok + "' is not an integer");
      }
    }
    if (!tuple.empty()) out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stratus: stratification, coded hereditarily finite sets, finite Ramsey "
               "extraction, and axiom-scheme instantiation"};
  app.require_subcommand(1);

  bool json_mode = false;
  std::function<ActionResult()> action;
  std::string command;

  auto add_json_flag = [&json_mode](CLI::App* sub) {
    sub->add_flag("--json", json_mode, "emit a JSON report");
  };

  // ---- stratify ----
  {
    auto* sub = app.add_subcommand("stratify", "decide stratifiability per formula");
    auto file = std::make_shared<std::string>();
    auto syntax = std::make_shared<std::string>("sexpr");
    sub->add_option("file", *file, "formula file, one per line")->required();
    sub->add_option("--syntax", *syntax, "sexpr or infix")
        ->check(CLI::IsMember({"sexpr", "infix"}));
    add_json_flag(sub);
    sub->callback([&, file, syntax] {
      command = "stratify";
      action = [file, syntax] { return run_stratify(*file, *syntax == "infix"); };
    });
  }

  // ---- bfext ----
  {
    auto* bf = app.add_subcommand("bfext", "coded hereditarily finite set calculus");
    bf->require_subcommand(1);

    auto add_single_input = [](CLI::App* sub, std::shared_ptr<std::string> dag,
                               std::shared_ptr<std::string> lit) {
      sub->add_option("--dag", *dag, "DAG file (JSON)");
      sub->add_option("--set", *lit, "set literal such as {{},{{}}}");
    };

    {
      auto* sub = bf->add_subcommand("validate", "check the three coded-set properties");
      auto dag = std::make_shared<std::string>();
      sub->add_option("--dag", *dag, "DAG file (JSON)")->required();
      add_json_flag(sub);
      sub->callback([&, dag] {
        command = "bfext validate";
        action = [dag]() -> ActionResult {
          auto rel = dag_from_json(parse_json_file(*dag));
          auto v = stratus::validate(rel);
          if (const auto* ok = std::get_if<stratus::Bfext>(&v)) {
            return {json{{"valid", true}, {"canon", ok->code.to_literal()}},
                    "valid; canon " + ok->code.to_literal() + "\n"};
          }
          const auto& rep = std::get<stratus::ValidationReport>(v);
          json payload{{"valid", false}};
          std::ostringstream human;
          human << "invalid;";
          if (rep.cycle) {
            payload["cycle"] = *rep.cycle;
            human << " cycle through node " << rep.cycle->front() << ";";
          }
          if (rep.duplicate_pair) {
            payload["duplicate_pair"] =
                json::array({rep.duplicate_pair->first, rep.duplicate_pair->second});
            human << " nodes " << rep.duplicate_pair->first << " and "
                  << rep.duplicate_pair->second << " have identical members;";
          }
          if (rep.unreachable) {
            payload["unreachable"] = *rep.unreachable;
            human << " node " << *rep.unreachable << " cannot reach the top;";
          }
          human << "\n";
          return {std::move(payload), human.str()};
        };
      });
    }

    {
      auto* sub = bf->add_subcommand("collapse", "extensional quotient with mapping table");
      auto dag = std::make_shared<std::string>();
      sub->add_option("--dag", *dag, "DAG file (JSON)")->required();
      add_json_flag(sub);
      sub->callback([&, dag] {
        command = "bfext collapse";
        action = [dag]() -> ActionResult {
          auto rel = dag_from_json(parse_json_file(*dag));
          stratus::CollapseResult res = stratus::collapse(rel);
          json mapping = json::object();
          for (const auto& [from, to] : res.mapping)
            mapping[std::to_string(from)] = to;
          json payload = dag_to_json(res.quotient.rel);
          payload["canon"] = res.quotient.code.to_literal();
          payload["mapping"] = std::move(mapping);
          std::ostringstream human;
          human << "canon " << res.quotient.code.to_literal() << "; " << res.mapping.size()
                << " nodes collapse onto " << res.quotient.rel.nodes.size() << "\n";
          return {std::move(payload), human.str()};
        };
      });
    }

    {
      auto* sub = bf->add_subcommand("seg", "downward segment below a node");
      auto dag = std::make_shared<std::string>();
      auto node = std::make_shared<stratus::NodeId>(0);
      sub->add_option("--dag", *dag, "DAG file (JSON)")->required();
      sub->add_option("--node", *node, "node id")->required();
      add_json_flag(sub);
      sub->callback([&, dag, node] {
        command = "bfext seg";
        action = [dag, node]() -> ActionResult {
          auto rel = dag_from_json(parse_json_file(*dag));
          stratus::PointedRelation s = stratus::seg(rel, *node);
          std::ostringstream human;
          human << "segment below " << *node << ": " << s.nodes.size() << " nodes, "
                << s.edges.size() << " edges\n";
          return {dag_to_json(s), human.str()};
        };
      });
    }

    auto two_input_command = [&](const char* name, const char* desc,
                                 bool (*op)(const stratus::Bfext&, const stratus::Bfext&)) {
      auto* sub = bf->add_subcommand(name, desc);
      auto dag_a = std::make_shared<std::string>();
      auto dag_b = std::make_shared<std::string>();
      auto set_a = std::make_shared<std::string>();
      auto set_b = std::make_shared<std::string>();
      sub->add_option("--dag-a", *dag_a, "first input, DAG file");
      sub->add_option("--set-a", *set_a, "first input, set literal");
      sub->add_option("--dag-b", *dag_b, "second input, DAG file");
      sub->add_option("--set-b", *set_b, "second input, set literal");
      add_json_flag(sub);
      std::string cmd = std::string("bfext ") + name;
      sub->callback([&, dag_a, dag_b, set_a, set_b, op, cmd] {
        command = cmd;
        action = [dag_a, dag_b, set_a, set_b, op]() -> ActionResult {
          stratus::Bfext a = load_bfext(*dag_a, *set_a, "-a");
          stratus::Bfext b = load_bfext(*dag_b, *set_b, "-b");
          bool result = op(a, b);
          return {json{{"result", result}}, std::string(result ? "true" : "false") + "\n"};
        };
      });
    };
    two_input_command("iso", "isomorphism of two coded sets", stratus::iso);
    two_input_command("eps", "membership between coded sets", stratus::eps);

    auto set_output_command = [&](const char* name, const char* desc,
                                  std::set<stratus::CanonCode> (*op)(const stratus::Bfext&)) {
      auto* sub = bf->add_subcommand(name, desc);
      auto dag = std::make_shared<std::string>();
      auto lit = std::make_shared<std::string>();
      add_single_input(sub, dag, lit);
      add_json_flag(sub);
      std::string cmd = std::string("bfext ") + name;
      sub->callback([&, dag, lit, op, cmd] {
        command = cmd;
        action = [dag, lit, op]() -> ActionResult {
          stratus::Bfext b = load_bfext(*dag, *lit, "");
          std::set<stratus::CanonCode> codes = op(b);
          std::ostringstream human;
          human << codes.size() << " codes\n";
          for (const auto& c : codes) human << c.to_literal() << "\n";
          return {json{{"count", codes.size()}, {"codes", codes_to_json(codes)}},
                  human.str()};
        };
      });
    };
    set_output_command("ext", "member codes of a coded set", stratus::ext);
    set_output_command("pow", "codes of all subsets", stratus::pow);

    {
      auto* sub = bf->add_subcommand("k", "embed a finite well-order as an ordinal");
      auto order = std::make_shared<std::string>();
      auto len = std::make_shared<int>(-1);
      sub->add_option("--order", *order, "elements in increasing order, comma separated");
      sub->add_option("--len", *len, "shorthand for the order 0,1,...,len-1");
      add_json_flag(sub);
      sub->callback([&, order, len] {
        command = "bfext k";
        action = [order, len]() -> ActionResult {
          stratus::FinWellOrder w;
          if (order->empty() == (*len < 0))
            throw stratus::InputError("provide exactly one of --order / --len");
          if (!order->empty()) {
            for (int v : parse_int_list(*order)) w.elements.push_back(v);
          } else {
            for (int i = 0; i < *len; ++i) w.elements.push_back(i);
          }
          stratus::Bfext b = stratus::k_embed(w);
          json payload = dag_to_json(b.rel);
          payload["canon"] = b.code.to_literal();
          return {std::move(payload), "canon " + b.code.to_literal() + "\n"};
        };
      });
    }

    {
      auto* sub = bf->add_subcommand("t", "rebuild with fresh node ids (singleton-map shift)");
      auto dag = std::make_shared<std::string>();
      auto lit = std::make_shared<std::string>();
      add_single_input(sub, dag, lit);
      add_json_flag(sub);
      sub->callback([&, dag, lit] {
        command = "bfext t";
        action = [dag, lit]() -> ActionResult {
          stratus::Bfext b = load_bfext(*dag, *lit, "");
          stratus::Bfext shifted = stratus::t_op(b);
          json payload = dag_to_json(shifted.rel);
          payload["canon"] = shifted.code.to_literal();
          return {std::move(payload), "canon " + shifted.code.to_literal() + "\n"};
        };
      });
    }

    {
      auto* sub = bf->add_subcommand("enum", "enumerate all codes up to a node count");
      auto max_nodes = std::make_shared<std::size_t>(0);
      auto bound = std::make_shared<std::size_t>(9);
      sub->add_option("--max", *max_nodes, "maximum node count")->required();
      sub->add_option("--bound", *bound, "safety bound on --max (default 9)");
      add_json_flag(sub);
      sub->callback([&, max_nodes, bound] {
        command = "bfext enum";
        action = [max_nodes, bound]() -> ActionResult {
          std::vector<stratus::CanonCode> codes = stratus::enumerate_bf(*max_nodes, *bound);
          json arr = json::array();
          std::ostringstream human;
          human << codes.size() << " codes\n";
          for (const auto& c : codes) {
            arr.push_back(c.to_literal());
            human << c.to_literal() << "\n";
          }
          return {json{{"count", codes.size()}, {"codes", std::move(arr)}}, human.str()};
        };
      });
    }
  }

  // ---- ramsey ----
  {
    auto* rm = app.add_subcommand("ramsey", "finite Ramsey search and indiscernibles");
    rm->require_subcommand(1);

    {
      auto* sub = rm->add_subcommand("homog", "least homogeneous subset of a coloring");
      auto file = std::make_shared<std::string>();
      auto m = std::make_shared<int>(0);
      auto within = std::make_shared<std::string>();
      sub->add_option("--coloring", *file, "coloring file (JSON)")->required();
      sub->add_option("--m", *m, "requested subset size")->required();
      sub->add_option("--within", *within, "restrict the search to this pool (comma list)");
      add_json_flag(sub);
      sub->callback([&, file, m, within] {
        command = "ramsey homog";
        action = [file, m, within]() -> ActionResult {
          stratus::Coloring col = coloring_from_json(parse_json_file(*file));
          std::optional<stratus::HomogeneousWitness> w;
          if (within->empty()) {
            w = stratus::homogeneous(col, *m);
          } else {
            w = stratus::homogeneous(col, *m, parse_int_list(*within));
          }
          if (!w) return {json{{"found", false}}, "no homogeneous subset of that size\n"};
          std::ostringstream human;
          human << "subset";
          for (int v : w->subset) human << " " << v;
          human << "; color " << w->color << "\n";
          return {json{{"found", true}, {"subset", w->subset}, {"color", w->color}},
                  human.str()};
        };
      });
    }

    {
      auto* sub = rm->add_subcommand("check", "exhaustive finite Ramsey check");
      auto n = std::make_shared<int>(0);
      auto k = std::make_shared<int>(0);
      auto c = std::make_shared<long long>(0);
      auto m = std::make_shared<int>(0);
      sub->add_option("--n", *n, "universe size")->required();
      sub->add_option("--k", *k, "subset size being colored")->required();
      sub->add_option("--c", *c, "number of colors")->required();
      sub->add_option("--m", *m, "homogeneous size sought")->required();
      add_json_flag(sub);
      sub->callback([&, n, k, c, m] {
        command = "ramsey check";
        action = [n, k, c, m]() -> ActionResult {
          stratus::RamseyCheck res =
              stratus::exhaustive_ramsey_check(*n, *k, *c, *m, search_budget(1ull << 20));
          json payload{{"holds", res.holds}, {"colorings_checked", res.colorings_checked}};
          std::ostringstream human;
          if (res.holds) {
            human << "true: every coloring has a homogeneous " << *m << "-set ("
                  << res.colorings_checked << " colorings)\n";
          } else {
            payload["counterexample"] = coloring_to_json(*res.counterexample);
            human << "false: counterexample found after " << res.colorings_checked
                  << " colorings\n";
          }
          return {std::move(payload), human.str()};
        };
      });
    }

    {
      auto* sub = rm->add_subcommand("indisc", "extract an order-indiscernible sequence");
      auto sfile = std::make_shared<std::string>();
      auto ffile = std::make_shared<std::string>();
      auto k = std::make_shared<int>(-1);
      auto m = std::make_shared<int>(0);
      sub->add_option("--structure", *sfile, "structure file (JSON)")->required();
      sub->add_option("--formulas", *ffile, "formula file, free variables x1..xk")->required();
      sub->add_option("--k", *k, "tuple size (default: largest xi used)");
      sub->add_option("--m", *m, "requested sequence length")->required();
      add_json_flag(sub);
      sub->callback([&, sfile, ffile, k, m] {
        command = "ramsey indisc";
        action = [sfile, ffile, k, m]() -> ActionResult {
          stratus::FiniteStructure s =
              stratus::FiniteStructure::from_json(parse_json_file(*sfile));
          stratus::ParseOptions opts;
          opts.named_relations = true;
          std::vector<stratus::FormulaPtr> formulas = load_formulas(*ffile, opts);
          int tuple_size = *k;
          if (tuple_size < 0) {
            tuple_size = 0;
            for (const auto& f : formulas)
              for (const auto& v : stratus::free_variables(*f))
                if (v.id.size() >= 2 && v.id[0] == 'x')
                  tuple_size = std::max(tuple_size, std::atoi(v.id.c_str() + 1));
          }
          auto seq = stratus::extract_indiscernibles(s, formulas, tuple_size, *m);
          if (!seq)
            return {json{{"found", false}}, "no indiscernible sequence of that length\n"};
          bool verified = stratus::verify_indiscernibles(s, formulas, tuple_size, *seq);
          std::ostringstream human;
          human << "sequence";
          for (int v : *seq) human << " " << v;
          human << (verified ? "; verified by re-evaluation" : "; VERIFICATION FAILED")
                << "\n";
          return {json{{"found", true}, {"sequence", *seq}, {"verified", verified}},
                  human.str()};
        };
      });
    }

    {
      auto* sub = rm->add_subcommand("stabilize", "stabilize term values below a threshold");
      auto sfile = std::make_shared<std::string>();
      auto terms = std::make_shared<std::string>();
      auto z = std::make_shared<int>(0);
      auto m = std::make_shared<int>(0);
      auto within = std::make_shared<std::string>();
      sub->add_option("--structure", *sfile, "structure file (JSON)")->required();
      sub->add_option("--terms", *terms, "comma list of function names")->required();
      sub->add_option("--z", *z, "threshold element")->required();
      sub->add_option("--m", *m, "requested subset size")->required();
      sub->add_option("--within", *within, "restrict the search to this pool (comma list)");
      add_json_flag(sub);
      sub->callback([&, sfile, terms, z, m, within] {
        command = "ramsey stabilize";
        action = [sfile, terms, z, m, within]() -> ActionResult {
          stratus::FiniteStructure s =
              stratus::FiniteStructure::from_json(parse_json_file(*sfile));
          std::vector<std::string> names;
          {
            std::istringstream in(*terms);
            std::string item;
            while (std::getline(in, item, ',')) {
              if (!item.empty()) names.push_back(item);
            }
          }
          std::optional<stratus::TermStabilization> res;
          if (within->empty()) {
            res = stratus::stabilize_terms(s, names, *z, *m);
          } else {
            res = stratus::stabilize_terms(s, names, *z, *m, parse_int_list(*within));
          }
          if (!res) return {json{{"found", false}}, "no stabilizing subset of that size\n"};
          json values = json::array();
          std::ostringstream human;
          human << "subset";
          for (int v : res->subset) human << " " << v;
          human << ";";
          for (std::size_t i = 0; i < names.size(); ++i) {
            bool saturated = res->values[i] == *z;
            values.push_back(json{{"term", names[i]},
                                  {"value", res->values[i]},
                                  {"saturated", saturated}});
            human << " " << names[i] << "="
                  << (saturated ? ">=" + std::to_string(*z)
                                : std::to_string(res->values[i]));
          }
          human << "\n";
          return {json{{"found", true}, {"subset", res->subset}, {"values", std::move(values)}},
                  human.str()};
        };
      });
    }

    {
      auto* sub = rm->add_subcommand("eval", "evaluate a formula in a finite structure");
      auto sfile = std::make_shared<std::string>();
      auto formula = std::make_shared<std::string>();
      auto env_text = std::make_shared<std::string>();
      auto syntax = std::make_shared<std::string>("sexpr");
      sub->add_option("--structure", *sfile, "structure file (JSON)")->required();
      sub->add_option("--formula", *formula, "formula text")->required();
      sub->add_option("--env", *env_text, "assignments such as x=0,y=2");
      sub->add_option("--syntax", *syntax, "sexpr or infix")
          ->check(CLI::IsMember({"sexpr", "infix"}));
      add_json_flag(sub);
      sub->callback([&, sfile, formula, env_text, syntax] {
        command = "ramsey eval";
        action = [sfile, formula, env_text, syntax]() -> ActionResult {
          stratus::FiniteStructure s =
              stratus::FiniteStructure::from_json(parse_json_file(*sfile));
          stratus::ParseOptions opts;
          opts.named_relations = true;
          opts.infix = *syntax == "infix";
          stratus::FormulaPtr f = stratus::parse_formula(*formula, opts);
          stratus::Env env;
          if (!env_text->empty()) {
            std::istringstream in(*env_text);
            std::string item;
            while (std::getline(in, item, ',')) {
              auto eq = item.find('=');
              if (eq == std::string::npos)
                throw stratus::InputError("environment entry '" + item +
                                          "' must look like var=value");
              try {
                env[stratus::VarName{item.substr(0, eq), 0}] = std::stoi(item.substr(eq + 1));
              } catch (const std::exception&) {
                throw stratus::InputError("environment entry '" + item +
                                          "' has a malformed value");
              }
            }
          }
          bool value = stratus::eval(s, *f, env);
          return {json{{"value", value}}, std::string(value ? "true" : "false") + "\n"};
        };
      });
    }
  }

  // ---- emit ----
  {
    auto* sub = app.add_subcommand("emit", "instantiate finite axiom-scheme fragments");
    auto theory = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto ffile = std::make_shared<std::string>();
    auto terms = std::make_shared<std::string>();
    auto tuples = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("sexpr");
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--theory", *theory, "w1, w2, or w3")->required();
    sub->add_option("--n", *n, "emit constants c_-n .. c_n")->required();
    sub->add_option("--formulas", *ffile, "formula file for the indiscernibility scheme");
    sub->add_option("--terms", *terms, "Skolem term signatures: name/arity,...");
    sub->add_option("--tuples", *tuples,
                    "explicit index tuples, ';' separated: \"-1;0\" or \"0 1;1 2\"");
    sub->add_option("--format", *format, "sexpr or tptp")
        ->check(CLI::IsMember({"sexpr", "tptp"}));
    sub->add_option("--out", *out_path, "write the document here as well");
    add_json_flag(sub);
    sub->callback([&, theory, n, ffile, terms, tuples, format, out_path] {
      command = "emit";
      action = [theory, n, ffile, terms, tuples, format, out_path]() -> ActionResult {
        stratus::theory::SchemeSelection sel;
        sel.theory = theory_from_name(*theory);
        sel.n_constants = *n;
        if (!ffile->empty()) sel.formulas = load_formulas(*ffile, {});
        if (!terms->empty()) sel.terms = parse_term_sigs(*terms);
        if (!tuples->empty()) sel.index_tuples = parse_tuples(*tuples);
        stratus::theory::EmitterOutput out = stratus::theory::instantiate(sel);
        std::string text = stratus::theory::emit(
            out.instances, *format == "tptp" ? stratus::theory::EmitFormat::TptpLike
                                             : stratus::theory::EmitFormat::Sexpr);
        if (!out_path->empty()) {
          std::ofstream of(*out_path);
          if (!of) throw stratus::InputError("cannot write file '" + *out_path + "'");
          of << text;
        }
        json names = json::array();
        for (const auto& inst : out.instances) names.push_back(inst.name);
        json skipped = json::array();
        std::ostringstream human;
        human << text;
        for (const auto& sk : out.skipped) {
          skipped.push_back(json{{"scheme_id", sk.scheme_id},
                                 {"term", sk.term},
                                 {"tuple", sk.tuple},
                                 {"reason", sk.reason}});
          human << "; skipped " << sk.scheme_id << " for " << sk.term << ": " << sk.reason
                << "\n";
        }
        return {json{{"count", out.instances.size()},
                     {"names", std::move(names)},
                     {"skipped", std::move(skipped)},
                     {"text", text}},
                human.str()};
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&started] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - started)
        .count();
  };

  try {
    ActionResult result = action();
    if (json_mode) {
      json envelope{{"schema", kSchemaVersion},
                    {"command", command},
                    {"status", "ok"},
                    {"payload", std::move(result.payload)},
                    {"timing_ms", elapsed_ms()}};
      std::cout << envelope.dump(2) << "\n";
    } else {
      std::cout << result.human;
    }
    return 0;
  } catch (const stratus::Error& e) {
    if (json_mode) {
      json envelope{{"schema", kSchemaVersion},
                    {"command", command},
                    {"status", "error"},
                    {"payload", json{{"error", e.what()}}},
                    {"timing_ms", elapsed_ms()}};
      std::cout << envelope.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
