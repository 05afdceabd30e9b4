#include "reasonkit/obdd.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <unordered_set>

namespace reasonkit {

namespace {

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t Manager::UniqueHash::operator()(const UniqueKey& k) const {
  std::uint64_t h = mix((std::uint64_t(k.level) << 32) | k.lo);
  return static_cast<std::size_t>(mix(h ^ k.hi));
}

std::size_t Manager::CacheHash::operator()(const CacheKey& k) const {
  std::uint64_t h = mix((std::uint64_t(k.op) << 32) | k.a);
  return static_cast<std::size_t>(mix(h ^ (std::uint64_t(k.b) << 13)));
}

Manager::Manager(UniversePtr universe, std::size_t node_budget)
    : Manager(std::move(universe), std::vector<unsigned>{}, node_budget) {}

Manager::Manager(UniversePtr universe, std::vector<unsigned> order, std::size_t node_budget)
    : universe_(std::move(universe)), order_(std::move(order)), budget_(node_budget) {
  if (!universe_) throw PreconditionError("Manager requires a universe");
  const unsigned n = static_cast<unsigned>(universe_->size());
  if (order_.empty()) {
    order_.resize(n);
    for (unsigned i = 0; i < n; ++i) order_[i] = i;
  }
  if (order_.size() != n) throw PreconditionError("variable order has the wrong arity");
  var_to_level_.assign(n, n);
  for (unsigned pos = 0; pos < order_.size(); ++pos) {
    unsigned v = order_[pos];
    if (v >= n || var_to_level_[v] != n)
      throw PreconditionError("variable order must be a permutation of the universe");
    var_to_level_[v] = pos;
  }
  if (budget_ < 2) throw PreconditionError("node budget must allow the terminals");
  nodes_.push_back({kTerminalLevel, kZero, kZero});  // 0
  nodes_.push_back({kTerminalLevel, kOne, kOne});    // 1
}

unsigned Manager::top_var(NodeRef f) const {
  if (is_terminal(f)) throw PreconditionError("terminal node has no top variable");
  return order_[nodes_[f].level];
}

NodeRef Manager::lo(NodeRef f) const {
  if (is_terminal(f)) throw PreconditionError("terminal node has no children");
  return nodes_[f].lo;
}

NodeRef Manager::hi(NodeRef f) const {
  if (is_terminal(f)) throw PreconditionError("terminal node has no children");
  return nodes_[f].hi;
}

NodeRef Manager::mk(std::uint32_t level, NodeRef lo, NodeRef hi) {
  if (lo == hi) return lo;  // reduction: redundant test
  UniqueKey key{level, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() >= budget_)
    throw NodeBudgetError("node budget of " + std::to_string(budget_) + " nodes exceeded");
  NodeRef ref = static_cast<NodeRef>(nodes_.size());
  nodes_.push_back({level, lo, hi});
  unique_.emplace(key, ref);
  return ref;
}

NodeRef Manager::var(unsigned index) {
  if (index >= universe_->size()) throw UniverseError("variable index out of range");
  return mk(var_to_level_[index], kZero, kOne);
}

NodeRef Manager::nvar(unsigned index) {
  if (index >= universe_->size()) throw UniverseError("variable index out of range");
  return mk(var_to_level_[index], kOne, kZero);
}

NodeRef Manager::apply(Op op, NodeRef a, NodeRef b) {
  switch (op) {
    case Op::And:
      if (a == kZero || b == kZero) return kZero;
      if (a == kOne) return b;
      if (b == kOne) return a;
      if (a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case Op::Or:
      if (a == kOne || b == kOne) return kOne;
      if (a == kZero) return b;
      if (b == kZero) return a;
      if (a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case Op::Xor:
      if (a == kZero) return b;
      if (b == kZero) return a;
      if (a == b) return kZero;
      if (a == kOne && b == kOne) return kZero;
      if (a > b) std::swap(a, b);
      break;
    case Op::Implies:
      if (a == kZero || b == kOne) return kOne;
      if (a == kOne) return b;
      if (a == b) return kOne;
      break;
    case Op::Iff:
      if (a == b) return kOne;
      if (a == kOne) return b;
      if (b == kOne) return a;
      if (a == kZero && b == kZero) return kOne;
      if (a > b) std::swap(a, b);
      break;
    default:
      break;
  }
  if (is_terminal(a) && is_terminal(b)) {
    bool va = a == kOne, vb = b == kOne;
    bool out = false;
    switch (op) {
      case Op::And: out = va && vb; break;
      case Op::Or: out = va || vb; break;
      case Op::Xor: out = va != vb; break;
      case Op::Implies: out = !va || vb; break;
      case Op::Iff: out = va == vb; break;
      default: break;
    }
    return terminal(out);
  }

  CacheKey key{static_cast<std::uint32_t>(op), a, b};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  std::uint32_t la = level(a), lb = level(b);
  std::uint32_t m = std::min(la, lb);
  NodeRef a0 = la == m ? nodes_[a].lo : a;
  NodeRef a1 = la == m ? nodes_[a].hi : a;
  NodeRef b0 = lb == m ? nodes_[b].lo : b;
  NodeRef b1 = lb == m ? nodes_[b].hi : b;
  NodeRef r = mk(m, apply(op, a0, b0), apply(op, a1, b1));
  cache_.emplace(key, r);
  return r;
}

NodeRef Manager::apply_and(NodeRef a, NodeRef b) { return apply(Op::And, a, b); }
NodeRef Manager::apply_or(NodeRef a, NodeRef b) { return apply(Op::Or, a, b); }
NodeRef Manager::apply_xor(NodeRef a, NodeRef b) { return apply(Op::Xor, a, b); }
NodeRef Manager::apply_implies(NodeRef a, NodeRef b) { return apply(Op::Implies, a, b); }
NodeRef Manager::apply_iff(NodeRef a, NodeRef b) { return apply(Op::Iff, a, b); }

NodeRef Manager::negate(NodeRef a) { return apply(Op::Xor, a, kOne); }

NodeRef Manager::ite(NodeRef f, NodeRef g, NodeRef h) {
  return apply_or(apply_and(f, g), apply_and(negate(f), h));
}

NodeRef Manager::cofactor_level(NodeRef f, std::uint32_t lvl, bool value, Op tag, unsigned v) {
  if (level(f) > lvl) return f;  // terminal or below the variable: unchanged
  if (level(f) == lvl) return value ? nodes_[f].hi : nodes_[f].lo;
  CacheKey key{static_cast<std::uint32_t>(tag), f, v};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  NodeRef r = mk(level(f), cofactor_level(nodes_[f].lo, lvl, value, tag, v),
                 cofactor_level(nodes_[f].hi, lvl, value, tag, v));
  cache_.emplace(key, r);
  return r;
}

NodeRef Manager::cofactor(NodeRef f, unsigned v, bool value) {
  if (v >= universe_->size()) throw UniverseError("variable index out of range");
  return cofactor_level(f, var_to_level_[v], value, value ? Op::Cofactor1 : Op::Cofactor0, v);
}

NodeRef Manager::forall(NodeRef f, unsigned v) {
  return apply_and(cofactor(f, v, false), cofactor(f, v, true));
}

NodeRef Manager::exists(NodeRef f, unsigned v) {
  return apply_or(cofactor(f, v, false), cofactor(f, v, true));
}

NodeRef Manager::cube(const Term& term) {
  // Build bottom-up in descending order position so each mk call is ordered.
  std::vector<Literal> lits = term.literals();
  std::sort(lits.begin(), lits.end(), [this](const Literal& a, const Literal& b) {
    return var_to_level_[a.var] > var_to_level_[b.var];
  });
  NodeRef node = kOne;
  for (const Literal& l : lits) {
    std::uint32_t lvl = var_to_level_[l.var];
    node = l.positive ? mk(lvl, kZero, node) : mk(lvl, node, kZero);
  }
  return node;
}

NodeRef Manager::cube(const Instance& x) {
  if (x.size() != universe_->size())
    throw PreconditionError("instance arity does not match universe");
  NodeRef node = kOne;
  for (unsigned pos = static_cast<unsigned>(order_.size()); pos-- > 0;) {
    unsigned v = order_[pos];
    node = x.bit(v) ? mk(pos, kZero, node) : mk(pos, node, kZero);
  }
  return node;
}

NodeRef Manager::compile(const Formula& f) {
  if (!same_universe(f.universe(), universe_))
    throw UniverseError("formula universe does not match manager universe");
  std::unordered_map<const Formula::Node*, NodeRef> memo;

  auto rec = [&](auto&& self, const Formula::Node* node) -> NodeRef {
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    NodeRef r = kZero;
    switch (node->kind) {
      case Formula::Kind::Var: r = var(node->var); break;
      case Formula::Kind::Const: r = terminal(node->value); break;
      case Formula::Kind::Not: r = negate(self(self, node->left.get())); break;
      case Formula::Kind::And:
        r = apply_and(self(self, node->left.get()), self(self, node->right.get()));
        break;
      case Formula::Kind::Or:
        r = apply_or(self(self, node->left.get()), self(self, node->right.get()));
        break;
      case Formula::Kind::Implies:
        r = apply_implies(self(self, node->left.get()), self(self, node->right.get()));
        break;
      case Formula::Kind::Iff:
        r = apply_iff(self(self, node->left.get()), self(self, node->right.get()));
        break;
    }
    memo.emplace(node, r);
    return r;
  };
  return rec(rec, f.root().get());
}

bool Manager::eval(NodeRef f, const Instance& x) const {
  if (x.size() != universe_->size())
    throw PreconditionError("instance arity does not match universe");
  while (!is_terminal(f)) {
    const Node& node = nodes_[f];
    f = x.bit(order_[node.level]) ? node.hi : node.lo;
  }
  return f == kOne;
}

std::uint64_t Manager::count_models(NodeRef f) const {
  const unsigned n = static_cast<unsigned>(universe_->size());
  if (n >= 64) throw PreconditionError("model counting requires fewer than 64 variables");
  std::unordered_map<NodeRef, std::uint64_t> memo;
  auto eff = [&](NodeRef g) -> unsigned {
    return is_terminal(g) ? n : static_cast<unsigned>(nodes_[g].level);
  };
  // count(g) = number of models of g over the variables strictly below
  // (and including) g's own level, i.e. over levels [eff(g), n).
  auto rec = [&](auto&& self, NodeRef g) -> std::uint64_t {
    if (g == kZero) return 0;
    if (g == kOne) return 1;
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    const Node& node = nodes_[g];
    std::uint64_t clo = self(self, node.lo) << (eff(node.lo) - node.level - 1);
    std::uint64_t chi = self(self, node.hi) << (eff(node.hi) - node.level - 1);
    std::uint64_t total = clo + chi;
    memo.emplace(g, total);
    return total;
  };
  return rec(rec, f) << eff(f);
}

std::vector<unsigned> Manager::support(NodeRef f) const {
  std::unordered_set<NodeRef> seen;
  std::set<unsigned> vars;
  std::vector<NodeRef> stack{f};
  while (!stack.empty()) {
    NodeRef g = stack.back();
    stack.pop_back();
    if (is_terminal(g) || !seen.insert(g).second) continue;
    const Node& node = nodes_[g];
    vars.insert(order_[node.level]);
    stack.push_back(node.lo);
    stack.push_back(node.hi);
  }
  return {vars.begin(), vars.end()};
}

std::size_t Manager::node_count(NodeRef f) const {
  std::unordered_set<NodeRef> seen;
  std::vector<NodeRef> stack{f};
  std::size_t internal = 0;
  while (!stack.empty()) {
    NodeRef g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    if (is_terminal(g)) continue;
    ++internal;
    stack.push_back(nodes_[g].lo);
    stack.push_back(nodes_[g].hi);
  }
  return internal;
}

void Manager::write_dot(NodeRef f, std::ostream& out, const std::string& name) const {
  out << "digraph " << name << " {\n";
  out << "  rankdir=TB;\n";
  std::unordered_set<NodeRef> seen;
  std::vector<NodeRef> stack{f};
  std::vector<NodeRef> nodes;
  while (!stack.empty()) {
    NodeRef g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    nodes.push_back(g);
    if (is_terminal(g)) continue;
    stack.push_back(nodes_[g].lo);
    stack.push_back(nodes_[g].hi);
  }
  std::sort(nodes.begin(), nodes.end());
  for (NodeRef g : nodes) {
    if (is_terminal(g)) {
      out << "  n" << g << " [shape=box,label=\"" << (g == kOne ? 1 : 0) << "\"];\n";
    } else {
      out << "  n" << g << " [shape=circle,label=\"" << universe_->name(order_[nodes_[g].level])
          << "\"];\n";
    }
  }
  for (NodeRef g : nodes) {
    if (is_terminal(g)) continue;
    out << "  n" << g << " -> n" << nodes_[g].hi << ";\n";
    out << "  n" << g << " -> n" << nodes_[g].lo << " [style=dashed];\n";
  }
  out << "}\n";
}

}  // namespace reasonkit
