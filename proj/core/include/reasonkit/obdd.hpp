#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "reasonkit/formula.hpp"
#include "reasonkit/term.hpp"

namespace reasonkit {

/// Handle to a node owned by a Manager. Handles from different managers
/// must never be mixed; 0 and 1 are the terminals in every manager.
using NodeRef = std::uint32_t;

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

/// Reduced ordered binary decision diagrams over a fixed variable universe.
///
/// Invariants maintained by construction:
///   - ordered: along every path, variable order positions strictly increase;
///   - reduced: no node has lo == hi, and no two distinct nodes agree on
///     (position, lo, hi);
/// together these make node identity coincide with semantic equality, so
/// f == g as functions exactly when the NodeRefs are equal.
///
/// Allocation is monotone: nodes are never freed. When the total would
/// exceed the budget, operations throw NodeBudgetError and the manager
/// stays usable for anything already built.
///
/// Not thread-safe; use one Manager per thread.
class Manager {
 public:
  explicit Manager(UniversePtr universe, std::size_t node_budget = kDefaultNodeBudget);

  /// `order[position] = variable index`; must be a permutation of the
  /// universe. The default order is declaration order.
  Manager(UniversePtr universe, std::vector<unsigned> order,
          std::size_t node_budget = kDefaultNodeBudget);

  const UniversePtr& universe() const { return universe_; }
  const std::vector<unsigned>& order() const { return order_; }
  std::size_t node_budget() const { return budget_; }

  /// Total nodes allocated so far, terminals included.
  std::size_t size() const { return nodes_.size(); }

  static constexpr NodeRef kZero = 0;
  static constexpr NodeRef kOne = 1;
  NodeRef zero() const { return kZero; }
  NodeRef one() const { return kOne; }
  NodeRef terminal(bool value) const { return value ? kOne : kZero; }

  NodeRef var(unsigned index);
  NodeRef nvar(unsigned index);
  NodeRef literal(const Literal& l) { return l.positive ? var(l.var) : nvar(l.var); }

  bool is_terminal(NodeRef f) const { return f <= kOne; }
  /// Variable tested at the root of a non-terminal node.
  unsigned top_var(NodeRef f) const;
  NodeRef lo(NodeRef f) const;
  NodeRef hi(NodeRef f) const;

  NodeRef apply_and(NodeRef a, NodeRef b);
  NodeRef apply_or(NodeRef a, NodeRef b);
  NodeRef apply_xor(NodeRef a, NodeRef b);
  NodeRef apply_implies(NodeRef a, NodeRef b);
  NodeRef apply_iff(NodeRef a, NodeRef b);
  NodeRef negate(NodeRef a);
  NodeRef ite(NodeRef f, NodeRef g, NodeRef h);

  /// f with `var` fixed to `value`.
  NodeRef cofactor(NodeRef f, unsigned var, bool value);
  /// ∀var. f  ==  f|var=0 ∧ f|var=1
  NodeRef forall(NodeRef f, unsigned var);
  /// ∃var. f  ==  f|var=0 ∨ f|var=1
  NodeRef exists(NodeRef f, unsigned var);

  /// Conjunction of the term's literals (the empty term gives ⊤).
  NodeRef cube(const Term& term);
  /// The full minterm of an instance.
  NodeRef cube(const Instance& x);

  /// Compiles a formula bottom-up; shared subtrees are translated once.
  NodeRef compile(const Formula& f);

  bool eval(NodeRef f, const Instance& x) const;

  /// Number of satisfying total assignments. Requires universe size < 64.
  std::uint64_t count_models(NodeRef f) const;

  /// Variables the function actually depends on, ascending by index.
  std::vector<unsigned> support(NodeRef f) const;

  /// Reachable decision nodes (terminals not counted).
  std::size_t node_count(NodeRef f) const;

  /// Graphviz rendering: boxes for terminals, solid edges to the hi child,
  /// dashed edges to the lo child.
  void write_dot(NodeRef f, std::ostream& out, const std::string& name = "obdd") const;

  unsigned level_of(unsigned var_index) const { return var_to_level_[var_index]; }
  unsigned var_at(unsigned level) const { return order_[level]; }

 private:
  enum class Op : std::uint8_t { And, Or, Xor, Implies, Iff, Cofactor0, Cofactor1 };

  struct Node {
    std::uint32_t level;
    NodeRef lo;
    NodeRef hi;
  };

  struct UniqueKey {
    std::uint32_t level;
    NodeRef lo;
    NodeRef hi;
    bool operator==(const UniqueKey& o) const {
      return level == o.level && lo == o.lo && hi == o.hi;
    }
  };
  struct UniqueHash {
    std::size_t operator()(const UniqueKey& k) const;
  };

  struct CacheKey {
    std::uint32_t op;
    NodeRef a;
    NodeRef b;
    bool operator==(const CacheKey& o) const { return op == o.op && a == o.a && b == o.b; }
  };
  struct CacheHash {
    std::size_t operator()(const CacheKey& k) const;
  };

  static constexpr std::uint32_t kTerminalLevel = 0xffffffffu;

  NodeRef mk(std::uint32_t level, NodeRef lo, NodeRef hi);
  NodeRef apply(Op op, NodeRef a, NodeRef b);
  NodeRef cofactor_level(NodeRef f, std::uint32_t level, bool value, Op tag, unsigned var);
  std::uint32_t level(NodeRef f) const { return nodes_[f].level; }

  UniversePtr universe_;
  std::vector<unsigned> order_;         // level -> var index
  std::vector<unsigned> var_to_level_;  // var index -> level
  std::size_t budget_;
  std::vector<Node> nodes_;
  std::unordered_map<UniqueKey, NodeRef, UniqueHash> unique_;
  std::unordered_map<CacheKey, NodeRef, CacheHash> cache_;
};

}  // namespace reasonkit
