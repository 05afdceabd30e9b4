#pragma once

#include <string>

#include "reasonkit/obdd.hpp"

namespace reasonkit {

/// How the domain constraint enters the function whose prime implicants
/// are reported:
///   Ignore  — explain f itself; the constraint plays no role.
///   Implies — explain κ → f: behaviour outside the constraint is forced
///             to 1, so reasons never need to re-establish feasibility.
///   Conjoin — explain κ ∧ f: behaviour outside the constraint is forced
///             to 0, so reasons must entail feasibility too.
enum class Mode { Ignore, Implies, Conjoin };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& text);

enum class InstanceStatus { InCPositive, InCNegative, OutOfC };

const char* to_string(InstanceStatus status);

/// A classifier together with a hard domain constraint, both compiled in
/// the same manager. κ is the conjunction of all constraint formulas
/// (⊤ when there are none).
struct ConstrainedFn {
  Manager* manager = nullptr;
  NodeRef f = Manager::kZero;
  NodeRef kappa = Manager::kOne;

  /// The total function whose reasons are reported for positive instances.
  NodeRef target(Mode mode) const;

  /// Same, for explaining the negative decision (the complement class).
  NodeRef dual_target(Mode mode) const;

  InstanceStatus check_instance(const Instance& x) const;

  bool constraint_unsat() const { return kappa == Manager::kZero; }
};

}  // namespace reasonkit
