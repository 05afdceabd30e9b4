#pragma once

#include <string>
#include <vector>

#include "reasonkit/constrained.hpp"
#include "reasonkit/obdd.hpp"
#include "reasonkit/term.hpp"

namespace reasonkit {

/// Post-processing applied to an enumerated reason set:
///   None        — report every sufficient reason.
///   CeqClasses  — report one representative per constraint-equivalence
///                 class (shortest member, ties broken by literal order).
///   CsubMaximal — report only reasons maximal in the constraint-
///                 subsumption order. Can hide succinct reasons; opt-in.
enum class FilterPolicy { None, CeqClasses, CsubMaximal };

const char* to_string(FilterPolicy policy);
FilterPolicy filter_policy_from_string(const std::string& text);

enum class FilterStatus { Kept, MergedIntoRepresentative, DroppedSubsumed };

const char* to_string(FilterStatus status);

struct ReasonEntry {
  Term term;
  FilterStatus status = FilterStatus::Kept;
  /// For merged/dropped entries: index of the representative (CeqClasses)
  /// or of a constraint-dominating reason (CsubMaximal); -1 when kept.
  int representative = -1;
};

/// The outcome of one explanation query: every sufficient reason in
/// canonical order (ascending length, then literal order), annotated with
/// what the filter policy did to it.
struct ReasonSet {
  UniversePtr universe;
  Instance instance;
  Mode mode = Mode::Ignore;
  NodeRef target = Manager::kZero;
  FilterPolicy policy = FilterPolicy::None;
  std::vector<ReasonEntry> entries;

  /// Surviving reasons, in canonical order.
  std::vector<Term> kept() const;
  std::size_t kept_count() const;
};

/// [t] ⊆ [g]: the cube of t never leaves g's onset.
bool is_implicant(Manager& m, const Term& t, NodeRef target);

/// s and t cover the same points inside the constraint:
/// [s] ∩ [κ] == [t] ∩ [κ].
bool constraint_equivalent(Manager& m, const Term& s, const Term& t, NodeRef kappa);

/// s constraint-subsumes t: [t] ∩ [κ] ⊆ [s] ∩ [κ]. Mirrors subsumes(s, t),
/// which is the κ = ⊤ case.
bool constraint_subsumes(Manager& m, const Term& s, const Term& t, NodeRef kappa);

/// All sufficient reasons of target(x) = 1: prime implicants of `target`
/// satisfied by x, in canonical order. Requires eval(target, x) == 1.
/// Shannon expansion over the diagram, memoized per query on node
/// identity; at each node the branch that keeps the decision variable is
/// pruned against the branch that drops it.
std::vector<Term> sufficient_reasons(Manager& m, NodeRef target, const Instance& x);

/// Wraps an enumeration into an unfiltered ReasonSet.
ReasonSet make_reason_set(Manager& m, NodeRef target, const Instance& x, Mode mode);

/// Applies `policy` under constraint `kappa`, annotating every entry.
/// Kept entries of the result are still an antichain under subsumption.
ReasonSet filter_representatives(Manager& m, const ReasonSet& rs, NodeRef kappa,
                                 FilterPolicy policy);

struct ReasonQuery {
  Mode mode = Mode::Implies;
  FilterPolicy policy = FilterPolicy::None;
  bool dual = false;   // explain negative decisions via the complement class
  bool force = false;  // permit out-of-constraint instances (Ignore mode only)
};

/// End-to-end convenience: validates the instance against the constraint,
/// picks the (dual) target, enumerates and filters.
///   - out-of-constraint instances are rejected unless query.force and
///     mode Ignore;
///   - negative instances are rejected unless query.dual, in which case
///     the complement decision is explained.
ReasonSet explain(const ConstrainedFn& fn, const Instance& x, const ReasonQuery& query);

}  // namespace reasonkit
