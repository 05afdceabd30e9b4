#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reasonkit/errors.hpp"

namespace reasonkit {

class VarUniverse;
using UniversePtr = std::shared_ptr<const VarUniverse>;

/// The ordered set of named Boolean variables a formula is written over.
/// The declaration index doubles as the default decision-diagram order
/// position. Immutable after construction; share freely across threads.
class VarUniverse {
 public:
  /// Builds a universe from distinct identifiers. Throws SchemaError on
  /// duplicates or identifiers that do not match [A-Za-z_][A-Za-z0-9_]*.
  static UniversePtr make(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(unsigned index) const { return names_[index]; }
  const std::vector<std::string>& names() const { return names_; }

  /// Index of `name`, or -1 when it is not declared.
  int index_of(std::string_view name) const;

  /// Index of `name`; throws UniverseError when it is not declared.
  unsigned require(std::string_view name) const;

  bool operator==(const VarUniverse& other) const { return names_ == other.names_; }

  static bool valid_identifier(std::string_view name);

 private:
  explicit VarUniverse(std::vector<std::string> names);

  std::vector<std::string> names_;
  std::vector<std::pair<std::string, unsigned>> index_;  // sorted by name
};

/// Compares two universe handles by content (same names in the same order).
bool same_universe(const UniversePtr& a, const UniversePtr& b);

/// A total assignment: one bit per universe variable, in declaration order.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<bool> bits) : bits_(std::move(bits)) {}

  /// Parses a plain bitstring such as "0011" (variable 0 first).
  static Instance from_bits(std::string_view bits);

  /// Expands an integer index into bits; variable 0 is the most significant.
  static Instance from_index(std::uint64_t index, unsigned n);

  unsigned size() const { return static_cast<unsigned>(bits_.size()); }
  bool bit(unsigned i) const { return bits_[i]; }
  void set(unsigned i, bool value) { bits_[i] = value; }
  void push_back(bool value) { bits_.push_back(value); }

  /// Integer encoding with variable 0 as the most significant bit.
  std::uint64_t as_index() const;

  std::string to_bitstring() const;

  bool operator==(const Instance& other) const { return bits_ == other.bits_; }

 private:
  std::vector<bool> bits_;
};

/// Immutable Boolean formula over a fixed universe. Nodes are shared, so
/// copies are cheap; a shared subtree always behaves as its unfolding.
class Formula {
 public:
  enum class Kind : std::uint8_t { Var, Const, Not, And, Or, Implies, Iff };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    unsigned var = 0;     // Kind::Var
    bool value = false;   // Kind::Const
    NodePtr left, right;  // Not uses left only
  };

  static Formula var(UniversePtr universe, unsigned index);
  static Formula var(UniversePtr universe, std::string_view name);
  static Formula constant(UniversePtr universe, bool value);

  Formula operator!() const;
  Formula operator&(const Formula& rhs) const;
  Formula operator|(const Formula& rhs) const;
  friend Formula implies(const Formula& lhs, const Formula& rhs);
  friend Formula iff(const Formula& lhs, const Formula& rhs);

  /// Standard Boolean semantics; `x` must assign every universe variable.
  bool eval(const Instance& x) const;

  /// Renders the formula so that parsing the result reproduces the same
  /// tree: binary nodes fully parenthesized, constants as true/false.
  std::string to_string() const;

  /// Structural (not semantic) equality.
  bool same_structure(const Formula& other) const;

  const UniversePtr& universe() const { return universe_; }
  const NodePtr& root() const { return root_; }
  Kind kind() const { return root_->kind; }

 private:
  Formula(UniversePtr universe, NodePtr root)
      : universe_(std::move(universe)), root_(std::move(root)) {}

  static UniversePtr merged_universe(const Formula& a, const Formula& b);

  UniversePtr universe_;
  NodePtr root_;
};

Formula implies(const Formula& lhs, const Formula& rhs);
Formula iff(const Formula& lhs, const Formula& rhs);

/// Parses formula text against a fixed universe. Unknown identifiers raise
/// UniverseError; syntax problems raise ParseError with line/column.
Formula parse_formula(std::string_view text, UniversePtr universe);

/// Parses formula text and infers the universe from the identifiers in
/// first-occurrence order.
std::pair<Formula, UniversePtr> parse_formula(std::string_view text);

/// Identifiers appearing in formula text, in first-occurrence order
/// (constants true/false excluded). Tolerates any token stream; used to
/// infer a shared universe across several formula files before parsing.
std::vector<std::string> collect_identifiers(std::string_view text);

/// Parses an instance. Accepted forms:
///   - "0011"                 bitstring in universe declaration order
///   - "LKPA=0011"            labelled bitstring (label is decorative)
///   - "L=0,K=0,P=1,A=1"      comma list; must assign every variable once
Instance parse_instance(std::string_view text, const VarUniverse& universe);

}  // namespace reasonkit
