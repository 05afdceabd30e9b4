#include "reasonkit/ingest.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "reasonkit/errors.hpp"
#include "reasonkit/term.hpp"

namespace reasonkit {

namespace {

using nlohmann::json;

std::unique_ptr<DecisionTreeDoc::Node> parse_tree_node(const json& value,
                                                       const VarUniverse& universe,
                                                       std::vector<bool>& on_path) {
  if (!value.is_object() || value.size() != 1)
    throw SchemaError("tree node must be an object with exactly one of \"node\" or \"leaf\"");

  auto out = std::make_unique<DecisionTreeDoc::Node>();
  if (value.contains("leaf")) {
    const json& leaf = value["leaf"];
    if (!leaf.is_object() || !leaf.contains("class"))
      throw SchemaError("leaf must be an object with a \"class\" field");
    const json& cls = leaf["class"];
    if (!cls.is_number_integer() || (cls.get<int>() != 0 && cls.get<int>() != 1))
      throw SchemaError("leaf class must be 0 or 1");
    out->is_leaf = true;
    out->leaf_class = cls.get<int>() == 1;
    return out;
  }
  if (!value.contains("node")) throw SchemaError("tree node must contain \"node\" or \"leaf\"");

  const json& node = value["node"];
  if (!node.is_object() || !node.contains("var") || !node.contains("if0") ||
      !node.contains("if1"))
    throw SchemaError("internal node needs \"var\", \"if0\" and \"if1\"");
  if (!node["var"].is_string()) throw SchemaError("node var must be a string");

  unsigned var = universe.require(node["var"].get<std::string>());
  if (on_path[var])
    throw SchemaError("variable '" + universe.name(var) + "' tested twice on one path");

  out->is_leaf = false;
  out->var = var;
  on_path[var] = true;
  out->if0 = parse_tree_node(node["if0"], universe, on_path);
  out->if1 = parse_tree_node(node["if1"], universe, on_path);
  on_path[var] = false;
  return out;
}

}  // namespace

DecisionTreeDoc parse_tree(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("tree file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vars") || !doc.contains("root"))
    throw SchemaError("tree file needs top-level \"vars\" and \"root\"");
  if (!doc["vars"].is_array()) throw SchemaError("\"vars\" must be a list of identifiers");

  std::vector<std::string> names;
  for (const json& v : doc["vars"]) {
    if (!v.is_string()) throw SchemaError("\"vars\" must be a list of identifiers");
    names.push_back(v.get<std::string>());
  }

  DecisionTreeDoc out;
  out.universe = VarUniverse::make(std::move(names));
  std::vector<bool> on_path(out.universe->size(), false);
  out.root = parse_tree_node(doc["root"], *out.universe, on_path);
  return out;
}

namespace {

void collect_paths(const DecisionTreeDoc::Node* node, Term& path, std::vector<Term>& ones) {
  if (node->is_leaf) {
    if (node->leaf_class) ones.push_back(path);
    return;
  }
  Term with0 = path;
  with0.add(node->var, false);
  collect_paths(node->if0.get(), with0, ones);
  Term with1 = path;
  with1.add(node->var, true);
  collect_paths(node->if1.get(), with1, ones);
}

Formula term_formula(const Term& t, const UniversePtr& universe) {
  Formula out = Formula::constant(universe, true);
  bool first = true;
  for (const Literal& l : t.literals()) {
    Formula lit = Formula::var(universe, l.var);
    if (!l.positive) lit = !lit;
    out = first ? lit : (out & lit);
    first = false;
  }
  return out;
}

}  // namespace

Formula tree_to_formula(const DecisionTreeDoc& doc) {
  if (!doc.root) throw PreconditionError("tree document has no root");
  std::vector<Term> ones;
  Term empty;
  collect_paths(doc.root.get(), empty, ones);
  if (ones.empty()) return Formula::constant(doc.universe, false);
  Formula out = term_formula(ones[0], doc.universe);
  for (std::size_t i = 1; i < ones.size(); ++i) out = out | term_formula(ones[i], doc.universe);
  return out;
}

bool tree_eval(const DecisionTreeDoc& doc, const Instance& x) {
  if (x.size() != doc.universe->size())
    throw PreconditionError("instance arity does not match universe");
  const DecisionTreeDoc::Node* node = doc.root.get();
  while (!node->is_leaf) node = x.bit(node->var) ? node->if1.get() : node->if0.get();
  return node->leaf_class;
}

std::vector<OneHotGroup> parse_groups(const std::string& text, const UniversePtr& universe) {
  std::vector<OneHotGroup> groups;
  std::vector<bool> used(universe->size(), false);
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head)) continue;  // blank line
    if (head.back() != ':')
      throw ParseError("expected 'name:' to open a group", line_no, 1);
    head.pop_back();
    if (head.empty()) throw ParseError("group name is empty", line_no, 1);
    OneHotGroup group;
    group.name = head;
    std::string member;
    while (fields >> member) {
      unsigned index = universe->require(member);
      if (used[index])
        throw SchemaError("variable '" + member + "' appears in more than one group");
      used[index] = true;
      group.members.push_back(member);
    }
    if (group.members.empty())
      throw ParseError("group '" + group.name + "' has no members", line_no, 1);
    groups.push_back(std::move(group));
  }
  return groups;
}

Formula onehot_constraint(const std::vector<OneHotGroup>& groups, UniversePtr universe) {
  if (groups.empty()) throw PreconditionError("onehot_constraint needs at least one group");
  Formula out = Formula::constant(universe, true);
  bool first_group = true;
  for (const OneHotGroup& group : groups) {
    Formula at_least_one = Formula::var(universe, group.members[0]);
    for (std::size_t i = 1; i < group.members.size(); ++i)
      at_least_one = at_least_one | Formula::var(universe, group.members[i]);
    Formula clause = at_least_one;
    for (std::size_t i = 0; i < group.members.size(); ++i)
      for (std::size_t j = i + 1; j < group.members.size(); ++j)
        clause = clause & !(Formula::var(universe, group.members[i]) &
                            Formula::var(universe, group.members[j]));
    out = first_group ? clause : (out & clause);
    first_group = false;
  }
  return out;
}

UniversePtr ttt_universe() {
  std::vector<std::string> names;
  names.reserve(18);
  for (int cell = 0; cell < 9; ++cell) {
    names.push_back("F" + std::to_string(cell) + "X");
    names.push_back("F" + std::to_string(cell) + "O");
  }
  return VarUniverse::make(std::move(names));
}

namespace {

void require_ttt_universe(const UniversePtr& universe) {
  static const UniversePtr expected = ttt_universe();
  if (!same_universe(universe, expected))
    throw UniverseError("expected the 18-variable board universe F0X, F0O, …, F8X, F8O");
}

}  // namespace

Formula ttt_cell_constraint(UniversePtr universe) {
  require_ttt_universe(universe);
  Formula out = Formula::constant(universe, true);
  for (int cell = 0; cell < 9; ++cell) {
    Formula clash = Formula::var(universe, 2 * cell) & Formula::var(universe, 2 * cell + 1);
    out = cell == 0 ? !clash : (out & !clash);
  }
  return out;
}

NodeRef ttt_alternation_constraint(Manager& m) {
  require_ttt_universe(m.universe());
  NodeRef result = Manager::kZero;
  for (unsigned s = 0; s < 512; ++s) {
    for (unsigned t = 0; t < 512; ++t) {
      if (s & t) continue;  // a cell cannot hold both marks
      int diff = __builtin_popcount(s) - __builtin_popcount(t);
      if (diff < 0 || diff > 1) continue;
      Term board;
      for (unsigned cell = 0; cell < 9; ++cell) {
        board.add(2 * cell, (s >> cell) & 1u);      // F<cell>X
        board.add(2 * cell + 1, (t >> cell) & 1u);  // F<cell>O
      }
      result = m.apply_or(result, m.cube(board));
    }
  }
  return result;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace reasonkit
