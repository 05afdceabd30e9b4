#include "reasonkit/constrained.hpp"

#include "reasonkit/errors.hpp"

namespace reasonkit {

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Ignore: return "ignore";
    case Mode::Implies: return "implies";
    case Mode::Conjoin: return "conjoin";
  }
  return "?";
}

Mode mode_from_string(const std::string& text) {
  if (text == "ignore") return Mode::Ignore;
  if (text == "implies") return Mode::Implies;
  if (text == "conjoin") return Mode::Conjoin;
  throw SchemaError("unknown mode: '" + text + "' (expected ignore, implies or conjoin)");
}

const char* to_string(InstanceStatus status) {
  switch (status) {
    case InstanceStatus::InCPositive: return "IN_C_POSITIVE";
    case InstanceStatus::InCNegative: return "IN_C_NEGATIVE";
    case InstanceStatus::OutOfC: return "OUT_OF_C";
  }
  return "?";
}

NodeRef ConstrainedFn::target(Mode mode) const {
  switch (mode) {
    case Mode::Ignore: return f;
    case Mode::Implies: return manager->apply_implies(kappa, f);
    case Mode::Conjoin: return manager->apply_and(kappa, f);
  }
  throw PreconditionError("unreachable mode");
}

NodeRef ConstrainedFn::dual_target(Mode mode) const {
  NodeRef nf = manager->negate(f);
  switch (mode) {
    case Mode::Ignore: return nf;
    case Mode::Implies: return manager->apply_implies(kappa, nf);
    case Mode::Conjoin: return manager->apply_and(kappa, nf);
  }
  throw PreconditionError("unreachable mode");
}

InstanceStatus ConstrainedFn::check_instance(const Instance& x) const {
  if (!manager->eval(kappa, x)) return InstanceStatus::OutOfC;
  return manager->eval(f, x) ? InstanceStatus::InCPositive : InstanceStatus::InCNegative;
}

}  // namespace reasonkit
