// reasonkit — batch front end: load a decision function and constraints,
// pick an explanation target, enumerate sufficient reasons.
//
// Exit codes (scriptability contract):
//   0  success
//   2  instance outside the constraint (and not forced in ignore mode)
//   3  negative decision without --dual
//   4  parse or schema error in any input
//   5  node budget exhausted
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "reasonkit/constrained.hpp"
#include "reasonkit/errors.hpp"
#include "reasonkit/formula.hpp"
#include "reasonkit/ingest.hpp"
#include "reasonkit/obdd.hpp"
#include "reasonkit/reasons.hpp"
#include "reasonkit/selftest.hpp"

namespace {

using nlohmann::json;
using namespace reasonkit;

constexpr int kExitOk = 0;
constexpr int kExitOutOfC = 2;
constexpr int kExitNegative = 3;
constexpr int kExitBadInput = 4;
constexpr int kExitNodeBudget = 5;

bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// ---------------------------------------------------------------------------
// Problem loading: everything manager-independent, shareable across jobs.

struct ProblemSpec {
  std::string model_path;
  std::vector<std::string> constraint_paths;
  std::string order_text;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct Problem {
  UniversePtr universe;
  Formula model;
  std::vector<Formula> constraints;
  bool alternation = false;  // conjoin the board-alternation constraint
  std::vector<unsigned> order;
  std::uint64_t node_budget = kDefaultNodeBudget;

  Problem(UniversePtr u, Formula m) : universe(std::move(u)), model(std::move(m)) {}
};

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

// Member identifiers of a groups file, in order, without needing a universe.
std::vector<std::string> groups_member_names(const std::string& text) {
  std::vector<std::string> names;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string token;
    bool first = true;
    while (fields >> token) {
      if (first) {
        first = false;
        continue;  // "name:" prefix
      }
      names.push_back(token);
    }
  }
  return names;
}

Problem load_problem(const ProblemSpec& spec) {
  const bool tree_model = ends_with(spec.model_path, ".tree");

  struct ConstraintSource {
    enum class Kind { FormulaText, GroupsText, TttCell, TttAlternation } kind;
    std::string text;
  };
  std::vector<ConstraintSource> sources;
  bool ttt_requested = false;
  for (const std::string& path : spec.constraint_paths) {
    if (path == "ttt:cell") {
      sources.push_back({ConstraintSource::Kind::TttCell, ""});
      ttt_requested = true;
    } else if (path == "ttt:alternation") {
      sources.push_back({ConstraintSource::Kind::TttAlternation, ""});
      ttt_requested = true;
    } else if (ends_with(path, ".groups")) {
      sources.push_back({ConstraintSource::Kind::GroupsText, read_text_file(path)});
    } else {
      sources.push_back({ConstraintSource::Kind::FormulaText, read_text_file(path)});
    }
  }

  // Universe: a tree model declares it; the board builders fix it; plain
  // formula inputs infer it by first occurrence across model then
  // constraints.
  UniversePtr universe;
  std::optional<DecisionTreeDoc> tree;
  std::string model_text;
  if (tree_model) {
    tree = parse_tree(read_text_file(spec.model_path));
    universe = tree->universe;
  } else {
    model_text = read_text_file(spec.model_path);
    if (ttt_requested) {
      universe = ttt_universe();
    } else {
      std::vector<std::string> names = collect_identifiers(model_text);
      auto add_names = [&names](const std::vector<std::string>& more) {
        for (const std::string& name : more)
          if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
      };
      for (const ConstraintSource& source : sources) {
        if (source.kind == ConstraintSource::Kind::FormulaText)
          add_names(collect_identifiers(source.text));
        else if (source.kind == ConstraintSource::Kind::GroupsText)
          add_names(groups_member_names(source.text));
      }
      if (names.empty()) throw SchemaError("no variables found in model or constraints");
      universe = VarUniverse::make(std::move(names));
    }
  }

  Problem problem(universe, tree_model ? tree_to_formula(*tree)
                                       : parse_formula(model_text, universe));
  problem.node_budget = spec.node_budget;

  for (const ConstraintSource& source : sources) {
    switch (source.kind) {
      case ConstraintSource::Kind::FormulaText:
        problem.constraints.push_back(parse_formula(source.text, universe));
        break;
      case ConstraintSource::Kind::GroupsText:
        problem.constraints.push_back(
            onehot_constraint(parse_groups(source.text, universe), universe));
        break;
      case ConstraintSource::Kind::TttCell:
        problem.constraints.push_back(ttt_cell_constraint(universe));
        break;
      case ConstraintSource::Kind::TttAlternation:
        problem.alternation = true;
        // Needs a manager; conjoined at compile time. Validate early:
        if (!same_universe(universe, ttt_universe()))
          throw UniverseError("the alternation constraint needs the F0X…F8O board universe");
        break;
    }
  }

  if (!spec.order_text.empty()) {
    for (const std::string& name : split_names(spec.order_text))
      problem.order.push_back(universe->require(name));
    if (problem.order.size() != universe->size())
      throw SchemaError("--order must list every variable exactly once");
  }

  return problem;
}

Manager make_manager(const Problem& problem) {
  return problem.order.empty()
             ? Manager(problem.universe, problem.node_budget)
             : Manager(problem.universe, problem.order, problem.node_budget);
}

ConstrainedFn compile_problem(Manager& m, const Problem& problem) {
  ConstrainedFn cf;
  cf.manager = &m;
  cf.f = m.compile(problem.model);
  cf.kappa = Manager::kOne;
  for (const Formula& c : problem.constraints) cf.kappa = m.apply_and(cf.kappa, m.compile(c));
  if (problem.alternation) cf.kappa = m.apply_and(cf.kappa, ttt_alternation_constraint(m));
  return cf;
}

// ---------------------------------------------------------------------------
// Rendering

std::string term_text(const Term& t, const VarUniverse& u) {
  return t.empty() ? "true" : "(" + t.render(u) + ")";
}

json term_json(const ReasonEntry& entry, const VarUniverse& u) {
  json literals = json::array();
  for (const Literal& l : entry.term.literals())
    literals.push_back((l.positive ? "" : "!") + u.name(l.var));
  json out{{"literals", std::move(literals)},
           {"length", entry.term.size()},
           {"status", to_string(entry.status)}};
  if (entry.representative >= 0)
    out["representative"] = entry.representative;
  else
    out["representative"] = nullptr;
  return out;
}

json reason_set_json(const ReasonSet& rs, InstanceStatus status, bool dual, bool force,
                     bool unsat_warned) {
  json reasons = json::array();
  json lengths = json::array();
  for (const ReasonEntry& e : rs.entries) {
    reasons.push_back(term_json(e, *rs.universe));
    if (e.status == FilterStatus::Kept) lengths.push_back(e.term.size());
  }
  return json{{"mode", to_string(rs.mode)},
              {"instance", rs.instance.to_bitstring()},
              {"status", to_string(status)},
              {"dual", dual},
              {"force", force},
              {"filter_policy", to_string(rs.policy)},
              {"constraint_unsat", unsat_warned},
              {"reasons", std::move(reasons)},
              {"lengths", std::move(lengths)}};
}

std::string reason_set_text(const ReasonSet& rs, InstanceStatus status, bool dual) {
  const VarUniverse& u = *rs.universe;
  std::ostringstream out;
  out << "instance: " << rs.instance.to_bitstring() << "\n";
  out << "status: " << to_string(status) << (dual ? " (explaining the complement class)" : "")
      << "\n";
  out << "mode: " << to_string(rs.mode) << "\n";
  out << "filter: " << to_string(rs.policy) << "\n";
  out << "reasons (" << rs.kept_count() << "):\n";
  for (const ReasonEntry& e : rs.entries)
    if (e.status == FilterStatus::Kept) out << "  " << term_text(e.term, u) << "\n";
  bool any_filtered = false;
  for (const ReasonEntry& e : rs.entries) any_filtered |= e.status != FilterStatus::Kept;
  if (any_filtered) {
    out << "filtered out:\n";
    for (const ReasonEntry& e : rs.entries) {
      if (e.status == FilterStatus::Kept) continue;
      out << "  " << term_text(e.term, u) << " " << to_string(e.status) << " -> "
          << term_text(rs.entries[e.representative].term, u) << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// explain

struct ExplainOpts {
  ProblemSpec problem;
  std::string instance_text;
  std::string instances_file;
  std::string mode_text = "implies";
  std::string filter_text = "none";
  std::string format_text = "text";
  std::string dump_dot;
  bool dual = false;
  bool force = false;
  unsigned jobs = 1;
};

struct InstanceResult {
  int code = kExitOk;
  std::string text;       // human output or error line
  json doc;               // structured output
  bool warned_unsat = false;
};

InstanceResult run_one_instance(const ConstrainedFn& cf, const std::string& instance_text,
                                const ReasonQuery& query, bool structured) {
  InstanceResult result;
  Manager& m = *cf.manager;
  try {
    Instance x = parse_instance(instance_text, *m.universe());
    InstanceStatus status = cf.check_instance(x);
    result.warned_unsat = cf.constraint_unsat() && query.mode == Mode::Implies;
    ReasonSet rs = explain(cf, x, query);
    bool dual_used = !m.eval(cf.target(query.mode), x);
    if (structured)
      result.doc = reason_set_json(rs, status, dual_used, query.force, result.warned_unsat);
    else
      result.text = reason_set_text(rs, status, dual_used);
  } catch (const OutOfConstraintError& e) {
    result.code = kExitOutOfC;
    result.text = std::string("error: ") + e.what();
  } catch (const NegativeInstanceError& e) {
    result.code = kExitNegative;
    result.text = std::string("error: ") + e.what();
  } catch (const NodeBudgetError& e) {
    result.code = kExitNodeBudget;
    result.text = std::string("error: ") + e.what();
  } catch (const Error& e) {
    result.code = kExitBadInput;
    result.text = std::string("error: ") + e.what();
  }
  if (result.code != kExitOk && structured)
    result.doc = json{{"instance", instance_text}, {"error", result.text}, {"exit_code", result.code}};
  return result;
}

std::vector<std::string> read_instance_lines(const std::string& path) {
  std::istringstream lines(read_text_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

int run_explain(const ExplainOpts& opts) {
  Problem problem = load_problem(opts.problem);

  ReasonQuery query;
  query.mode = mode_from_string(opts.mode_text);
  query.policy = filter_policy_from_string(opts.filter_text);
  query.dual = opts.dual;
  query.force = opts.force;
  if (query.force && query.mode != Mode::Ignore)
    throw SchemaError("--force applies to ignore mode only");
  const bool structured = opts.format_text == "structured";

  std::vector<std::string> instances;
  if (!opts.instances_file.empty())
    instances = read_instance_lines(opts.instances_file);
  else
    instances.push_back(opts.instance_text);
  if (instances.empty()) throw SchemaError("no instances to explain");

  std::vector<InstanceResult> results(instances.size());
  unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, instances.size()));
  auto worker = [&](unsigned offset) {
    // Compilation happens once per worker; a failure there fails every
    // instance of this worker the same way instead of tearing the thread
    // (and with it the process) down.
    try {
      Manager m = make_manager(problem);
      ConstrainedFn cf = compile_problem(m, problem);
      for (std::size_t i = offset; i < instances.size(); i += jobs)
        results[i] = run_one_instance(cf, instances[i], query, structured);
    } catch (const Error& e) {
      for (std::size_t i = offset; i < instances.size(); i += jobs) {
        InstanceResult& r = results[i];
        r.code = dynamic_cast<const NodeBudgetError*>(&e) ? kExitNodeBudget : kExitBadInput;
        r.text = std::string("error: ") + e.what();
        if (structured)
          r.doc = json{{"instance", instances[i]}, {"error", r.text}, {"exit_code", r.code}};
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (std::thread& t : pool) t.join();
  }

  if (!opts.dump_dot.empty()) {
    Manager m = make_manager(problem);
    ConstrainedFn cf = compile_problem(m, problem);
    std::ofstream dot(opts.dump_dot);
    if (!dot) throw SchemaError("cannot open dot output file: " + opts.dump_dot);
    m.write_dot(cf.target(query.mode), dot, "target");
  }

  int exit_code = kExitOk;
  bool warned = false;
  for (const InstanceResult& r : results) {
    if (r.warned_unsat && !warned) {
      std::cerr << "warning: the constraint is unsatisfiable; the assumed-constraint target "
                   "is the constant 1 and the empty term is its only reason\n";
      warned = true;
    }
    if (exit_code == kExitOk && r.code != kExitOk) exit_code = r.code;
  }
  if (structured) {
    json out = json::array();
    for (InstanceResult& r : results) out.push_back(std::move(r.doc));
    if (out.size() == 1)
      std::cout << out[0].dump(2) << "\n";
    else
      std::cout << out.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (i) std::cout << "\n";
      if (results[i].code == kExitOk)
        std::cout << results[i].text;
      else
        std::cout << "instance: " << instances[i] << "\n" << results[i].text << "\n";
    }
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// compare

struct CompareOpts {
  ProblemSpec problem;
  std::string instance_text;
  std::string instances_file;
  std::string format_text = "text";
  bool dual = false;
};

json mode_block_json(const ReasonSet& rs) {
  json reasons = json::array();
  json lengths = json::array();
  for (const ReasonEntry& e : rs.entries) {
    reasons.push_back(term_json(e, *rs.universe));
    lengths.push_back(e.term.size());
  }
  return json{{"mode", to_string(rs.mode)},
              {"reasons", std::move(reasons)},
              {"lengths", std::move(lengths)}};
}

int compare_one(const ConstrainedFn& cf, const std::string& instance_text, bool dual,
                bool structured, json* doc_out) {
  Manager& m = *cf.manager;
  const VarUniverse& u = *m.universe();
  Instance x = parse_instance(instance_text, u);
  InstanceStatus status = cf.check_instance(x);

  ReasonSet sets[3];
  const Mode modes[3] = {Mode::Ignore, Mode::Implies, Mode::Conjoin};
  for (int i = 0; i < 3; ++i) {
    ReasonQuery query;
    query.mode = modes[i];
    query.dual = dual;
    sets[i] = explain(cf, x, query);
  }

  // Subsumption-chain witnesses: conjoin → ignore → implies.
  auto witness = [&](const ReasonSet& from, const ReasonSet& to) {
    std::vector<std::pair<const Term*, const Term*>> pairs;
    for (const ReasonEntry& t : from.entries) {
      const Term* found = nullptr;
      for (const ReasonEntry& s : to.entries)
        if (subsumes(s.term, t.term)) {
          found = &s.term;
          break;
        }
      pairs.emplace_back(&t.term, found);
    }
    return pairs;
  };
  auto conjoin_to_ignore = witness(sets[2], sets[0]);
  auto ignore_to_implies = witness(sets[0], sets[1]);

  auto lengths_of = [](const ReasonSet& rs) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const ReasonEntry& e : rs.entries) {
      lo = std::min(lo, e.term.size());
      hi = std::max(hi, e.term.size());
    }
    return std::pair<std::size_t, std::size_t>(lo, hi);
  };

  if (structured) {
    json chain = json::object();
    auto chain_json = [&](const std::vector<std::pair<const Term*, const Term*>>& pairs) {
      json list = json::array();
      for (auto [t, s] : pairs)
        list.push_back(json{{"reason", term_text(*t, u)},
                            {"subsumed_by", s ? json(term_text(*s, u)) : json(nullptr)}});
      return list;
    };
    chain["conjoin_to_ignore"] = chain_json(conjoin_to_ignore);
    chain["ignore_to_implies"] = chain_json(ignore_to_implies);
    *doc_out = json{{"instance", x.to_bitstring()},
                    {"status", to_string(status)},
                    {"dual", dual},
                    {"modes",
                     json{{"ignore", mode_block_json(sets[0])},
                          {"implies", mode_block_json(sets[1])},
                          {"conjoin", mode_block_json(sets[2])}}},
                    {"chain", std::move(chain)}};
    return kExitOk;
  }

  std::cout << "instance: " << x.to_bitstring() << "\n";
  std::cout << "status: " << to_string(status) << (dual ? " (complement class)" : "") << "\n";
  for (const ReasonSet& rs : sets) {
    auto [lo, hi] = lengths_of(rs);
    std::cout << "mode " << to_string(rs.mode) << ": " << rs.entries.size() << " reason"
              << (rs.entries.size() == 1 ? "" : "s");
    if (!rs.entries.empty()) std::cout << ", lengths " << lo << ".." << hi;
    std::cout << "\n";
    for (const ReasonEntry& e : rs.entries) std::cout << "  " << term_text(e.term, u) << "\n";
  }
  std::cout << "subsumption chain:\n";
  auto print_chain = [&](const char* from_name, const char* to_name,
                         const std::vector<std::pair<const Term*, const Term*>>& pairs) {
    for (auto [t, s] : pairs) {
      std::cout << "  " << from_name << " " << term_text(*t, u);
      if (s)
        std::cout << " subsumed by " << to_name << " " << term_text(*s, u) << "\n";
      else
        std::cout << " has no subsuming " << to_name << " reason (unexpected)\n";
    }
  };
  print_chain("conjoin", "ignore", conjoin_to_ignore);
  print_chain("ignore", "implies", ignore_to_implies);
  return kExitOk;
}

int run_compare(const CompareOpts& opts) {
  Problem problem = load_problem(opts.problem);
  const bool structured = opts.format_text == "structured";

  std::vector<std::string> instances;
  if (!opts.instances_file.empty())
    instances = read_instance_lines(opts.instances_file);
  else
    instances.push_back(opts.instance_text);
  if (instances.empty()) throw SchemaError("no instances to compare");

  Manager m = make_manager(problem);
  ConstrainedFn cf = compile_problem(m, problem);

  int exit_code = kExitOk;
  json docs = json::array();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    try {
      if (!structured && i) std::cout << "\n";
      json doc;
      compare_one(cf, instances[i], opts.dual, structured, &doc);
      if (structured) docs.push_back(std::move(doc));
    } catch (const OutOfConstraintError& e) {
      if (exit_code == kExitOk) exit_code = kExitOutOfC;
      std::cerr << "error: " << instances[i] << ": " << e.what() << "\n";
    } catch (const NegativeInstanceError& e) {
      if (exit_code == kExitOk) exit_code = kExitNegative;
      std::cerr << "error: " << instances[i] << ": " << e.what() << "\n";
    }
  }
  if (structured) {
    if (docs.size() == 1)
      std::cout << docs[0].dump(2) << "\n";
    else
      std::cout << docs.dump(2) << "\n";
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// selftest

int run_selftest_cmd(const SelftestOptions& options) {
  SelftestReport report = run_selftest(options);
  std::cout << "examples: " << report.example_matched << "/" << report.example_queries
            << " matched\n";
  std::cout << "tables: " << report.table_matched << "/" << report.table_rows
            << " rows matched\n";
  std::cout << "oracle agreement " << report.oracle_agreed << "/" << report.oracle_cases << "\n";
  for (const std::string& failure : report.failures) std::cerr << "mismatch: " << failure << "\n";
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sufficient-reason explanations of constrained classifiers"};
  app.require_subcommand(1);

  ExplainOpts explain_opts;
  CompareOpts compare_opts;
  SelftestOptions selftest_opts;

  auto add_problem_flags = [](CLI::App* cmd, ProblemSpec& spec) {
    cmd->add_option("--model", spec.model_path,
                    "decision function: a .tree document or a formula file")
        ->required();
    cmd->add_option("--constraints", spec.constraint_paths,
                    "constraint inputs, conjoined: formula files, .groups files, "
                    "or the builders ttt:cell / ttt:alternation");
    cmd->add_option("--order", spec.order_text,
                    "diagram variable order: comma-separated permutation of all variables");
    cmd->add_option("--node-budget", spec.node_budget, "maximum diagram nodes per manager")
        ->envname("REASONKIT_NODE_BUDGET");
  };

  CLI::App* explain_cmd =
      app.add_subcommand("explain", "enumerate the sufficient reasons for one decision");
  add_problem_flags(explain_cmd, explain_opts.problem);
  auto* inst_opt = explain_cmd->add_option("--instance", explain_opts.instance_text,
                                           "instance, e.g. LKPA=0011 or L=0,K=0,P=1,A=1");
  auto* file_opt = explain_cmd->add_option("--instances-file", explain_opts.instances_file,
                                           "file with one instance per line");
  inst_opt->excludes(file_opt);
  file_opt->excludes(inst_opt);
  explain_cmd->add_option("--mode", explain_opts.mode_text,
                          "constraint handling: ignore, implies (assume) or conjoin")
      ->check(CLI::IsMember({"ignore", "implies", "conjoin"}));
  explain_cmd->add_flag("--dual", explain_opts.dual,
                        "explain negative decisions via the complement class");
  explain_cmd->add_option("--filter", explain_opts.filter_text,
                          "reason filter: none, ceq (equivalence-class representatives) "
                          "or csub (constraint-subsumption maximal)")
      ->check(CLI::IsMember({"none", "ceq", "csub"}));
  explain_cmd->add_option("--format", explain_opts.format_text, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  explain_cmd->add_flag("--force", explain_opts.force,
                        "explain instances outside the constraint (ignore mode only)");
  explain_cmd->add_option("--jobs", explain_opts.jobs,
                          "worker threads for --instances-file (one manager each)");
  explain_cmd->add_option("--dump-dot", explain_opts.dump_dot,
                          "write the positive-class target's diagram as Graphviz");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "contrast reasons across all three constraint modes");
  add_problem_flags(compare_cmd, compare_opts.problem);
  auto* cinst_opt = compare_cmd->add_option("--instance", compare_opts.instance_text, "instance");
  auto* cfile_opt = compare_cmd->add_option("--instances-file", compare_opts.instances_file,
                                            "file with one instance per line");
  cinst_opt->excludes(cfile_opt);
  cfile_opt->excludes(cinst_opt);
  compare_cmd->add_flag("--dual", compare_opts.dual,
                        "explain negative decisions via the complement class");
  compare_cmd->add_option("--format", compare_opts.format_text, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));

  CLI::App* selftest_cmd = app.add_subcommand(
      "selftest", "run the bundled exact-answer suite and random oracle cross-checks");
  selftest_cmd->add_option("--seed", selftest_opts.seed, "random seed");
  selftest_cmd->add_option("--cases", selftest_opts.cases,
                           "number of random oracle cases (0 = bundled suite only)");
  selftest_cmd->add_option("--max-vars", selftest_opts.max_vars,
                           "largest universe for random cases (2..20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (explain_cmd->parsed()) {
      if (explain_opts.instance_text.empty() && explain_opts.instances_file.empty())
        throw SchemaError("explain needs --instance or --instances-file");
      return run_explain(explain_opts);
    }
    if (compare_cmd->parsed()) {
      if (compare_opts.instance_text.empty() && compare_opts.instances_file.empty())
        throw SchemaError("compare needs --instance or --instances-file");
      return run_compare(compare_opts);
    }
    return run_selftest_cmd(selftest_opts);
  } catch (const NodeBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNodeBudget;
  } catch (const OutOfConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOutOfC;
  } catch (const NegativeInstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
