#include "reasonkit/reasons.hpp"

#include <algorithm>
#include <unordered_map>

#include "reasonkit/errors.hpp"

namespace reasonkit {

const char* to_string(FilterPolicy policy) {
  switch (policy) {
    case FilterPolicy::None: return "none";
    case FilterPolicy::CeqClasses: return "ceq";
    case FilterPolicy::CsubMaximal: return "csub";
  }
  return "?";
}

FilterPolicy filter_policy_from_string(const std::string& text) {
  if (text == "none") return FilterPolicy::None;
  if (text == "ceq") return FilterPolicy::CeqClasses;
  if (text == "csub") return FilterPolicy::CsubMaximal;
  throw SchemaError("unknown filter policy: '" + text + "' (expected none, ceq or csub)");
}

const char* to_string(FilterStatus status) {
  switch (status) {
    case FilterStatus::Kept: return "kept";
    case FilterStatus::MergedIntoRepresentative: return "merged-into-representative";
    case FilterStatus::DroppedSubsumed: return "dropped-subsumed";
  }
  return "?";
}

std::vector<Term> ReasonSet::kept() const {
  std::vector<Term> out;
  for (const ReasonEntry& e : entries)
    if (e.status == FilterStatus::Kept) out.push_back(e.term);
  return out;
}

std::size_t ReasonSet::kept_count() const {
  std::size_t n = 0;
  for (const ReasonEntry& e : entries)
    if (e.status == FilterStatus::Kept) ++n;
  return n;
}

bool is_implicant(Manager& m, const Term& t, NodeRef target) {
  return m.apply_and(m.cube(t), m.negate(target)) == Manager::kZero;
}

bool constraint_equivalent(Manager& m, const Term& s, const Term& t, NodeRef kappa) {
  return m.apply_and(m.cube(s), kappa) == m.apply_and(m.cube(t), kappa);
}

bool constraint_subsumes(Manager& m, const Term& s, const Term& t, NodeRef kappa) {
  NodeRef in_s = m.apply_and(m.cube(s), kappa);
  NodeRef in_t = m.apply_and(m.cube(t), kappa);
  return m.apply_implies(in_t, in_s) == Manager::kOne;
}

std::vector<Term> sufficient_reasons(Manager& m, NodeRef target, const Instance& x) {
  if (x.size() != m.universe()->size())
    throw PreconditionError("instance arity does not match universe");
  if (!m.eval(target, x))
    throw PreconditionError("instance is not a positive instance of the target");

  // Shannon expansion restricted to x. At a node g testing v:
  //   A = reasons of ∀v.g        — the reasons that do not mention v;
  //   B = lit(v, x_v) ∧ reasons of the child x follows.
  // A term of B survives only if nothing in A is contained in it; the
  // union is then exactly the prime implicants of g that x satisfies.
  // Memoized on node identity: the result depends only on (g, x).
  std::unordered_map<NodeRef, std::vector<Term>> memo;
  auto rec = [&](auto&& self, NodeRef g) -> const std::vector<Term>& {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    std::vector<Term> result;
    if (g == Manager::kOne) {
      result.push_back(Term{});
    } else if (g != Manager::kZero) {
      unsigned v = m.top_var(g);
      NodeRef dropped = m.apply_and(m.lo(g), m.hi(g));
      NodeRef followed = x.bit(v) ? m.hi(g) : m.lo(g);
      const std::vector<Term>& a = self(self, dropped);
      result = a;
      // `followed` may alias `dropped`'s memo entry; copy before extending.
      const std::vector<Term> b = self(self, followed);
      for (const Term& t : b) {
        Term extended = t;
        extended.add(v, x.bit(v));
        bool dominated = std::any_of(a.begin(), a.end(),
                                     [&](const Term& s) { return subsumes(s, extended); });
        if (!dominated) result.push_back(std::move(extended));
      }
    }
    return memo.emplace(g, std::move(result)).first->second;
  };

  std::vector<Term> out = rec(rec, target);
  std::sort(out.begin(), out.end(), term_less);
  return out;
}

ReasonSet make_reason_set(Manager& m, NodeRef target, const Instance& x, Mode mode) {
  ReasonSet rs;
  rs.universe = m.universe();
  rs.instance = x;
  rs.mode = mode;
  rs.target = target;
  rs.policy = FilterPolicy::None;
  for (Term& t : sufficient_reasons(m, target, x))
    rs.entries.push_back(ReasonEntry{std::move(t), FilterStatus::Kept, -1});
  return rs;
}

ReasonSet filter_representatives(Manager& m, const ReasonSet& rs, NodeRef kappa,
                                 FilterPolicy policy) {
  ReasonSet out = rs;
  out.policy = policy;
  for (ReasonEntry& e : out.entries) {
    e.status = FilterStatus::Kept;
    e.representative = -1;
  }
  if (policy == FilterPolicy::None || out.entries.empty()) return out;

  std::vector<NodeRef> within_c;
  within_c.reserve(out.entries.size());
  for (const ReasonEntry& e : out.entries)
    within_c.push_back(m.apply_and(m.cube(e.term), kappa));

  if (policy == FilterPolicy::CeqClasses) {
    // Entries are in canonical order, so the first member of each
    // equivalence class is the shortest (ties already broken by the
    // literal order) and becomes the representative.
    std::unordered_map<NodeRef, int> representative_of;
    for (int i = 0; i < static_cast<int>(out.entries.size()); ++i) {
      auto [it, fresh] = representative_of.emplace(within_c[i], i);
      if (!fresh) {
        out.entries[i].status = FilterStatus::MergedIntoRepresentative;
        out.entries[i].representative = it->second;
      }
    }
    return out;
  }

  // CsubMaximal: drop anything whose coverage within the constraint is
  // strictly contained in another reason's coverage.
  for (int i = 0; i < static_cast<int>(out.entries.size()); ++i) {
    for (int j = 0; j < static_cast<int>(out.entries.size()); ++j) {
      if (i == j || within_c[i] == within_c[j]) continue;
      if (m.apply_implies(within_c[i], within_c[j]) == Manager::kOne) {
        out.entries[i].status = FilterStatus::DroppedSubsumed;
        out.entries[i].representative = j;
        break;
      }
    }
  }
  return out;
}

ReasonSet explain(const ConstrainedFn& fn, const Instance& x, const ReasonQuery& query) {
  Manager& m = *fn.manager;
  InstanceStatus status = fn.check_instance(x);
  bool vacuous_constraint = fn.constraint_unsat() && query.mode == Mode::Implies;
  if (status == InstanceStatus::OutOfC && !vacuous_constraint &&
      !(query.force && query.mode == Mode::Ignore))
    throw OutOfConstraintError(
        "instance does not satisfy the constraint; forcing is only available in ignore mode");

  NodeRef positive_target = fn.target(query.mode);
  bool positive = m.eval(positive_target, x);
  if (!positive && !query.dual)
    throw NegativeInstanceError(
        "instance is a negative decision; request the dual to explain the complement class");

  NodeRef target = positive ? positive_target : fn.dual_target(query.mode);
  ReasonSet rs = make_reason_set(m, target, x, query.mode);
  return filter_representatives(m, rs, fn.kappa, query.policy);
}

}  // namespace reasonkit
