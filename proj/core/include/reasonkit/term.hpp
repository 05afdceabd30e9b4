#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reasonkit/formula.hpp"

namespace reasonkit {

/// One literal of a term: a variable index and its required value.
struct Literal {
  unsigned var;
  bool positive;

  bool operator==(const Literal& other) const {
    return var == other.var && positive == other.positive;
  }
};

/// A consistent conjunction of literals over distinct variables, kept sorted
/// by variable index. The empty term is the tautology.
class Term {
 public:
  Term() = default;

  explicit Term(std::vector<Literal> literals) : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end(),
              [](const Literal& a, const Literal& b) { return a.var < b.var; });
  }

  static Term of(std::initializer_list<Literal> literals) {
    return Term(std::vector<Literal>(literals));
  }

  const std::vector<Literal>& literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }

  void add(unsigned var, bool positive) {
    auto it = std::lower_bound(literals_.begin(), literals_.end(), var,
                               [](const Literal& l, unsigned v) { return l.var < v; });
    literals_.insert(it, Literal{var, positive});
  }

  /// True when every literal of this term holds under `x`.
  bool satisfied_by(const Instance& x) const {
    for (const Literal& l : literals_)
      if (x.bit(l.var) != l.positive) return false;
    return true;
  }

  /// Renders like "!L & K & P"; the empty term renders as "true".
  std::string render(const VarUniverse& universe) const {
    if (literals_.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < literals_.size(); ++i) {
      if (i) out += " & ";
      if (!literals_[i].positive) out += '!';
      out += universe.name(literals_[i].var);
    }
    return out;
  }

  bool operator==(const Term& other) const { return literals_ == other.literals_; }

 private:
  std::vector<Literal> literals_;
};

/// lits(s) ⊆ lits(t): every model of t is a model of s, so s covers at
/// least as much as t. The empty term subsumes everything.
inline bool subsumes(const Term& s, const Term& t) {
  const auto& a = s.literals();
  const auto& b = t.literals();
  if (a.size() > b.size()) return false;
  std::size_t j = 0;
  for (const Literal& l : a) {
    while (j < b.size() && b[j].var < l.var) ++j;
    if (j == b.size() || !(b[j] == l)) return false;
    ++j;
  }
  return true;
}

/// Display ordering for a single literal: positive literals come before
/// negative ones, then lower variable indices first. This is also the
/// tie-break used when one term of an equivalence class must stand for
/// the others.
inline bool literal_less(const Literal& a, const Literal& b) {
  if (a.positive != b.positive) return a.positive;
  return a.var < b.var;
}

/// Canonical term ordering: shorter terms first, then lexicographic on the
/// literal ordering above.
inline bool term_less(const Term& s, const Term& t) {
  if (s.size() != t.size()) return s.size() < t.size();
  const auto& a = s.literals();
  const auto& b = t.literals();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return literal_less(a[i], b[i]);
  }
  return false;
}

}  // namespace reasonkit
