#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reasonkit/formula.hpp"
#include "reasonkit/obdd.hpp"

namespace reasonkit {

/// A serialized binary decision tree: internal nodes test one variable and
/// branch on its value, leaves carry the class bit. No variable repeats
/// along a path.
struct DecisionTreeDoc {
  struct Node {
    bool is_leaf = true;
    bool leaf_class = false;                       // leaves
    unsigned var = 0;                              // internal nodes
    std::unique_ptr<Node> if0, if1;                // children for var = 0 / 1
  };

  UniversePtr universe;
  std::unique_ptr<Node> root;
};

/// Parses the documented tree format (see docs/file-formats.md): a JSON
/// document with a "vars" list declaring the universe — the declaration
/// covers every variable of the wider problem, constraint-only ones
/// included — and a "root" built from {"node": {"var", "if0", "if1"}} and
/// {"leaf": {"class": 0|1}} objects. Malformed documents raise SchemaError,
/// undeclared variables UniverseError.
DecisionTreeDoc parse_tree(const std::string& text);

/// Disjunction over all class-1 paths of the conjunction of the literals
/// along the path; evaluates exactly like tree traversal.
Formula tree_to_formula(const DecisionTreeDoc& doc);

/// Direct traversal, used to cross-check tree_to_formula.
bool tree_eval(const DecisionTreeDoc& doc, const Instance& x);

/// A categorical feature expanded into indicator variables: exactly one
/// member is set in any feasible instance.
struct OneHotGroup {
  std::string name;
  std::vector<std::string> members;  // at least one; usually two or more
};

/// Parses a groups file: one "name: v1 v2 v3" line per group, # comments
/// allowed. Groups must not overlap and members must be declared.
std::vector<OneHotGroup> parse_groups(const std::string& text, const UniversePtr& universe);

/// ⋀ over groups of (⋁_i E_i) ∧ ⋀_{i<j} ¬(E_i ∧ E_j): exactly one member
/// of each group holds. A single-member group degenerates to that variable.
Formula onehot_constraint(const std::vector<OneHotGroup>& groups, UniversePtr universe);

/// The 18-variable tic-tac-toe board universe, cell-major:
/// F0X, F0O, F1X, F1O, …, F8X, F8O.
UniversePtr ttt_universe();

/// ⋀_{0≤i≤8} ¬(F_iX ∧ F_iO): no cell holds both marks. 3^9 models.
Formula ttt_cell_constraint(UniversePtr universe);

/// Reachable-board constraint: X moves first and players alternate, so the
/// marked cells split into disjoint X-cells S and O-cells T with
/// 0 ≤ |S| − |T| ≤ 1. Built directly in the manager as a union of fully
/// specified 18-literal cubes, one per admissible (S, T) pair — a formula
/// AST of that disjunction would be needlessly large.
NodeRef ttt_alternation_constraint(Manager& m);

/// Reads a whole file; throws SchemaError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace reasonkit
