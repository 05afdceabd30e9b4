#include "reasonkit/selftest.hpp"

#include <algorithm>
#include <sstream>

#include "reasonkit/constrained.hpp"
#include "reasonkit/errors.hpp"
#include "reasonkit/generate.hpp"
#include "reasonkit/obdd.hpp"
#include "reasonkit/oracle.hpp"
#include "reasonkit/reasons.hpp"

namespace reasonkit {

namespace {

UniversePtr numbered_universe(unsigned n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (unsigned i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  return VarUniverse::make(std::move(names));
}

RandomCase chain_case(unsigned n) {
  // kappa = X1 -> (X2 & … & Xn), f = X1 & … & Xn, x = 1…1.
  UniversePtr u = numbered_universe(n);
  Formula rest = Formula::var(u, 1u);
  for (unsigned i = 2; i < n; ++i) rest = rest & Formula::var(u, i);
  Formula f = Formula::var(u, 0u) & rest;
  Formula kappa = implies(Formula::var(u, 0u), rest);
  Instance x(std::vector<bool>(n, true));
  return RandomCase{u, f, kappa, x};
}

}  // namespace

std::vector<RandomCase> make_reason_cases(std::uint64_t seed, unsigned count, unsigned min_vars,
                                          unsigned max_vars) {
  if (min_vars < 2) min_vars = 2;
  if (max_vars < min_vars) max_vars = min_vars;
  if (max_vars > oracle::kMaxOracleVars)
    throw PreconditionError("random cases are cross-checked by the oracle; keep max_vars <= 20");

  Rng rng(seed);
  std::vector<RandomCase> cases;
  cases.reserve(count);
  unsigned attempts_left = count * 1000 + 1000;
  while (cases.size() < count) {
    if (attempts_left-- == 0)
      throw PreconditionError("could not sample enough satisfiable constrained cases");
    unsigned n = min_vars + static_cast<unsigned>(rng.below(max_vars - min_vars + 1));
    UniversePtr u = numbered_universe(n);
    Formula f = random_formula(rng, u, n + static_cast<unsigned>(rng.below(2 * n)));
    Formula kappa = random_formula(rng, u, 1 + static_cast<unsigned>(rng.below(n)));

    oracle::TruthTable tf = oracle::table_of(f);
    oracle::TruthTable tk = oracle::table_of(kappa);
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t row = 0; row < tf.rows(); ++row)
      if (tf.get(row) && tk.get(row)) candidates.push_back(row);
    if (candidates.empty()) continue;  // no in-constraint positive instance; resample

    Instance x = Instance::from_index(candidates[rng.below(candidates.size())], n);
    cases.push_back(RandomCase{u, std::move(f), std::move(kappa), std::move(x)});
  }

  // A pinned slot guarantees the corpus contains the strict shortening
  // witness regardless of seed.
  if (count > 0) cases[count / 2] = chain_case(std::min(max_vars, std::max(min_vars, 5u)));
  return cases;
}

namespace {

std::string render_set(const std::vector<Term>& terms, const VarUniverse& u) {
  std::string out = "{";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += terms[i].render(u);
  }
  return out + "}";
}

}  // namespace

bool oracle_agrees(const RandomCase& c, std::string* detail) {
  const unsigned n = static_cast<unsigned>(c.universe->size());

  Manager m(c.universe);
  NodeRef f = m.compile(c.f);
  NodeRef kappa = m.compile(c.kappa);
  std::vector<Term> from_diagram = sufficient_reasons(m, m.apply_implies(kappa, f), c.x);

  oracle::TruthTable tf = oracle::table_of(c.f);
  oracle::TruthTable tk = oracle::table_of(c.kappa);
  oracle::TruthTable onset(n);
  for (std::uint64_t row = 0; row < tf.rows(); ++row)
    onset.set(row, tf.get(row) && tk.get(row));
  std::vector<Term> from_oracle = oracle::brute_reasons_partial(onset, tk, c.x);

  if (from_diagram == from_oracle) return true;
  if (detail) {
    std::ostringstream msg;
    msg << "f = " << c.f.to_string() << ", kappa = " << c.kappa.to_string() << ", x = "
        << c.x.to_bitstring() << ": diagram " << render_set(from_diagram, *c.universe)
        << " vs oracle " << render_set(from_oracle, *c.universe);
    *detail = msg.str();
  }
  return false;
}

namespace {

struct ExactSuite {
  SelftestReport* report;

  void check_query(const char* label, const ConstrainedFn& cf, const Instance& x,
                   const ReasonQuery& query, const std::vector<Term>& expected) {
    ++report->example_queries;
    std::vector<Term> got;
    try {
      got = explain(cf, x, query).kept();
    } catch (const Error& e) {
      report->failures.push_back(std::string(label) + ": " + e.what());
      return;
    }
    std::vector<Term> want = expected;
    std::sort(want.begin(), want.end(), term_less);
    if (got == want) {
      ++report->example_matched;
    } else {
      report->failures.push_back(std::string(label) + ": got " +
                                 render_set(got, *cf.manager->universe()) + ", expected " +
                                 render_set(want, *cf.manager->universe()));
    }
  }

  void check_flag(const char* label, bool got, bool expected) {
    ++report->example_queries;
    if (got == expected) {
      ++report->example_matched;
    } else {
      report->failures.push_back(std::string(label) + ": got " + (got ? "true" : "false") +
                                 ", expected " + (expected ? "true" : "false"));
    }
  }
};

Term make_term(std::initializer_list<std::pair<unsigned, bool>> lits) {
  Term t;
  for (auto [v, bit] : lits) t.add(v, bit);
  return t;
}

void run_exact_suite(SelftestReport& report) {
  ExactSuite suite{&report};

  // Two-variable biconditional under the implication constraint.
  {
    UniversePtr u = numbered_universe(2);
    Manager m(u);
    Formula f = iff(Formula::var(u, 0u), Formula::var(u, 1u));
    Formula kappa = implies(Formula::var(u, 0u), Formula::var(u, 1u));
    ConstrainedFn cf{&m, m.compile(f), m.compile(kappa)};

    Instance x00 = Instance::from_bits("00");
    Instance x11 = Instance::from_bits("11");
    suite.check_query("biconditional ignore 00", cf, x00, {Mode::Ignore},
                      {make_term({{0, false}, {1, false}})});
    suite.check_query("biconditional ignore 11", cf, x11, {Mode::Ignore},
                      {make_term({{0, true}, {1, true}})});
    suite.check_query("biconditional implies 00", cf, x00, {Mode::Implies},
                      {make_term({{1, false}})});
    suite.check_query("biconditional implies 11", cf, x11, {Mode::Implies},
                      {make_term({{0, true}})});
    suite.check_query("biconditional conjoin 00", cf, x00, {Mode::Conjoin},
                      {make_term({{0, false}, {1, false}})});
    suite.check_query("biconditional conjoin 11", cf, x11, {Mode::Conjoin},
                      {make_term({{0, true}, {1, true}})});

    // Negative instance explained through the complement class.
    ConstrainedFn unconstrained{&m, cf.f, m.one()};
    ReasonQuery dual;
    dual.mode = Mode::Ignore;
    dual.dual = true;
    suite.check_query("biconditional dual 01", unconstrained, Instance::from_bits("01"), dual,
                      {make_term({{0, false}, {1, true}})});
  }

  // Equivalence modulo an exclusive-or constraint.
  {
    UniversePtr u = numbered_universe(2);
    Manager m(u);
    Formula x1 = Formula::var(u, 0u), x2 = Formula::var(u, 1u);
    NodeRef xor_c = m.compile((x1 | x2) & !(x1 & x2));
    Term not_x1 = make_term({{0, false}});
    Term just_x2 = make_term({{1, true}});
    suite.check_flag("exclusive-or equivalence !X1 ~ X2",
                     constraint_equivalent(m, not_x1, just_x2, xor_c), true);
    suite.check_flag("unconstrained equivalence !X1 ~ X2",
                     constraint_equivalent(m, not_x1, just_x2, m.one()), false);
  }

  // Eligibility table: L,K,P,A decision function under the study constraint.
  {
    UniversePtr u = VarUniverse::make({"L", "K", "P", "A"});
    Manager m(u);
    Formula f = parse_formula("(L & K) | (!L & K & P) | (!L & !K & P & A)", u);
    Formula kappa = parse_formula("(P | L) & (A -> P) & (K -> (A | L))", u);
    ConstrainedFn cf{&m, m.compile(f), m.compile(kappa)};

    const unsigned L = 0, K = 1, P = 2, A = 3;
    struct Row {
      const char* bits;
      std::vector<Term> ignore;
      std::vector<Term> implies;
    };
    const Row rows[] = {
        {"0011", {make_term({{L, false}, {P, true}, {A, true}})}, {make_term({{L, false}, {A, true}})}},
        {"0111",
         {make_term({{L, false}, {P, true}, {A, true}}), make_term({{K, true}, {P, true}})},
         {make_term({{L, false}, {A, true}}), make_term({{K, true}})}},
        {"1100", {make_term({{L, true}, {K, true}})}, {make_term({{K, true}})}},
        {"1110",
         {make_term({{L, true}, {K, true}}), make_term({{K, true}, {P, true}})},
         {make_term({{K, true}})}},
        {"1111",
         {make_term({{L, true}, {K, true}}), make_term({{K, true}, {P, true}})},
         {make_term({{K, true}})}},
    };
    for (const Row& row : rows) {
      ++report.table_rows;
      unsigned before = report.failures.size();
      Instance x = Instance::from_bits(row.bits);

      std::vector<Term> got_ignore = explain(cf, x, {Mode::Ignore}).kept();
      std::vector<Term> want_ignore = row.ignore;
      std::sort(want_ignore.begin(), want_ignore.end(), term_less);
      if (got_ignore != want_ignore)
        report.failures.push_back(std::string("eligibility row ") + row.bits + " ignoring: got " +
                                  render_set(got_ignore, *u) + ", expected " +
                                  render_set(want_ignore, *u));

      std::vector<Term> got_implies = explain(cf, x, {Mode::Implies}).kept();
      std::vector<Term> want_implies = row.implies;
      std::sort(want_implies.begin(), want_implies.end(), term_less);
      if (got_implies != want_implies)
        report.failures.push_back(std::string("eligibility row ") + row.bits + " assuming: got " +
                                  render_set(got_implies, *u) + ", expected " +
                                  render_set(want_implies, *u));

      if (report.failures.size() == before) ++report.table_matched;
    }
  }
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  run_exact_suite(report);
  if (options.cases > 0) {
    std::vector<RandomCase> cases = make_reason_cases(
        options.seed, options.cases, std::min(4u, options.max_vars), options.max_vars);
    for (const RandomCase& c : cases) {
      ++report.oracle_cases;
      std::string detail;
      if (oracle_agrees(c, &detail)) {
        ++report.oracle_agreed;
      } else {
        report.failures.push_back("oracle mismatch: " + detail);
      }
    }
  }
  return report;
}

}  // namespace reasonkit
