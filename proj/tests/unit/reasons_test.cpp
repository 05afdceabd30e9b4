#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "reasonkit/generate.hpp"
#include "reasonkit/oracle.hpp"
#include "reasonkit/reasons.hpp"

using namespace reasonkit;

namespace {

UniversePtr small_universe(unsigned n) {
  std::vector<std::string> names;
  for (unsigned i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  return VarUniverse::make(std::move(names));
}

std::vector<std::string> rendered(const std::vector<Term>& ts, const VarUniverse& u) {
  std::vector<std::string> out;
  for (const Term& t : ts) out.push_back(t.render(u));
  return out;
}

}  // namespace

TEST_SUITE("reasons") {
  TEST_CASE("term subsumption basics") {
    Term nx2 = Term::of({{1, false}});
    Term nx1nx2 = Term::of({{0, false}, {1, false}});
    CHECK(subsumes(nx2, nx1nx2));
    CHECK_FALSE(subsumes(nx1nx2, nx2));
    CHECK(subsumes(nx2, nx2));
    CHECK(subsumes(Term(), nx1nx2));
    CHECK_FALSE(subsumes(Term::of({{1, true}}), nx1nx2));  // polarity matters
  }

  TEST_CASE("canonical term order: length first, positives before negatives") {
    auto u = small_universe(2);
    Term x2 = Term::of({{1, true}});
    Term nx1 = Term::of({{0, false}});
    Term x1x2 = Term::of({{0, true}, {1, true}});
    CHECK(term_less(x2, nx1));        // positive literal sorts first
    CHECK(term_less(nx1, x1x2));      // shorter sorts first
    CHECK_FALSE(term_less(x2, x2));
    CHECK(literal_less(Literal{5, true}, Literal{0, false}));
  }

  TEST_CASE("implicant test against a diagram") {
    auto u = small_universe(2);
    Manager m(u);
    NodeRef f = m.compile(parse_formula("X1 <-> X2", u));
    CHECK(is_implicant(m, Term::of({{0, true}, {1, true}}), f));
    CHECK_FALSE(is_implicant(m, Term::of({{0, true}}), f));
    CHECK_FALSE(is_implicant(m, Term(), f));
    CHECK(is_implicant(m, Term(), m.one()));
    CHECK_FALSE(is_implicant(m, Term::of({{0, true}}), m.zero()));
  }

  TEST_CASE("sufficient reasons of the biconditional, all three modes") {
    auto u = small_universe(2);
    Manager m(u);
    ConstrainedFn fn{&m, m.compile(parse_formula("X1 <-> X2", u)),
                     m.compile(parse_formula("X1 -> X2", u))};
    Instance low = Instance::from_bits("00");
    Instance high = Instance::from_bits("11");

    auto run = [&](Mode mode, const Instance& x) {
      return rendered(sufficient_reasons(m, fn.target(mode), x), *u);
    };
    CHECK(run(Mode::Ignore, low) == std::vector<std::string>{"!X1 & !X2"});
    CHECK(run(Mode::Ignore, high) == std::vector<std::string>{"X1 & X2"});
    CHECK(run(Mode::Implies, low) == std::vector<std::string>{"!X2"});
    CHECK(run(Mode::Implies, high) == std::vector<std::string>{"X1"});
    CHECK(run(Mode::Conjoin, low) == std::vector<std::string>{"!X1 & !X2"});
    CHECK(run(Mode::Conjoin, high) == std::vector<std::string>{"X1 & X2"});
  }

  TEST_CASE("reasons for a tautological target collapse to the empty term") {
    auto u = small_universe(2);
    Manager m(u);
    auto rs = sufficient_reasons(m, m.one(), Instance::from_bits("10"));
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].empty());
  }

  TEST_CASE("enumeration requires a positive instance") {
    auto u = small_universe(2);
    Manager m(u);
    NodeRef f = m.compile(parse_formula("X1 & X2", u));
    CHECK_THROWS_AS(sufficient_reasons(m, f, Instance::from_bits("01")), PreconditionError);
  }

  TEST_CASE("constraint equivalence and subsumption under an exclusive-or") {
    auto u = small_universe(2);
    Manager m(u);
    NodeRef xor_k = m.compile(parse_formula("(X1 | X2) & !(X1 & X2)", u));
    Term nx1 = Term::of({{0, false}});
    Term x2 = Term::of({{1, true}});
    CHECK(constraint_equivalent(m, nx1, x2, xor_k));
    CHECK(constraint_subsumes(m, nx1, x2, xor_k));
    CHECK(constraint_subsumes(m, x2, nx1, xor_k));
    CHECK_FALSE(constraint_equivalent(m, nx1, x2, m.one()));
    CHECK_FALSE(constraint_subsumes(m, nx1, x2, m.one()));
    // plain subsumption is the unconstrained special case
    Term x1x2 = Term::of({{0, true}, {1, true}});
    Term x1 = Term::of({{0, true}});
    CHECK(constraint_subsumes(m, x1, x1x2, m.one()));
    CHECK_FALSE(constraint_subsumes(m, x1x2, x1, m.one()));
  }

  TEST_CASE("filters: none keeps everything") {
    auto u = small_universe(2);
    Manager m(u);
    ConstrainedFn fn{&m, m.compile(parse_formula("!X1 | X2", u)),
                     m.compile(parse_formula("(X1 | X2) & !(X1 & X2)", u))};
    ReasonSet rs = make_reason_set(m, fn.target(Mode::Ignore), Instance::from_bits("01"),
                                   Mode::Ignore);
    ReasonSet none = filter_representatives(m, rs, fn.kappa, FilterPolicy::None);
    CHECK(none.entries.size() == 2);
    CHECK(none.kept_count() == 2);
    CHECK(rendered(none.kept(), *u) == std::vector<std::string>{"X2", "!X1"});
  }

  TEST_CASE("equivalence classes keep one representative") {
    auto u = small_universe(2);
    Manager m(u);
    // under exclusive-or, !X1 and X2 describe the same feasible points
    ConstrainedFn fn{&m, m.compile(parse_formula("!X1 | X2", u)),
                     m.compile(parse_formula("(X1 | X2) & !(X1 & X2)", u))};
    ReasonSet rs = make_reason_set(m, fn.target(Mode::Ignore), Instance::from_bits("01"),
                                   Mode::Ignore);
    ReasonSet ceq = filter_representatives(m, rs, fn.kappa, FilterPolicy::CeqClasses);
    REQUIRE(ceq.entries.size() == 2);
    CHECK(ceq.entries[0].term.render(*u) == "X2");
    CHECK(ceq.entries[0].status == FilterStatus::Kept);
    CHECK(ceq.entries[0].representative == -1);
    CHECK(ceq.entries[1].term.render(*u) == "!X1");
    CHECK(ceq.entries[1].status == FilterStatus::MergedIntoRepresentative);
    CHECK(ceq.entries[1].representative == 0);
    CHECK(rendered(ceq.kept(), *u) == std::vector<std::string>{"X2"});
  }

  TEST_CASE("subsumption-maximal filtering drops constraint-dominated reasons") {
    auto u = VarUniverse::make({"E1", "E2", "E3", "E4", "M"});
    Manager m(u);
    Formula f = parse_formula("M & !E3 & !E4", u);
    Formula onehot = parse_formula(
        "(E1 | E2 | E3 | E4) & !(E1 & E2) & !(E1 & E3) & !(E1 & E4)"
        " & !(E2 & E3) & !(E2 & E4) & !(E3 & E4)",
        u);
    ConstrainedFn fn{&m, m.compile(f), m.compile(onehot)};
    Instance x = Instance::from_bits("10001");
    ReasonSet rs = make_reason_set(m, fn.target(Mode::Implies), x, Mode::Implies);
    CHECK(rendered(rs.kept(), *u) ==
          std::vector<std::string>{"E1 & M", "!E3 & !E4 & M"});

    ReasonSet csub = filter_representatives(m, rs, fn.kappa, FilterPolicy::CsubMaximal);
    CHECK(rendered(csub.kept(), *u) == std::vector<std::string>{"!E3 & !E4 & M"});
    REQUIRE(csub.entries.size() == 2);
    CHECK(csub.entries[0].status == FilterStatus::DroppedSubsumed);
    CHECK(csub.entries[0].representative == 1);
    CHECK(csub.entries[1].status == FilterStatus::Kept);

    // the two reasons are not constraint-equivalent, so ceq keeps both
    ReasonSet ceq = filter_representatives(m, rs, fn.kappa, FilterPolicy::CeqClasses);
    CHECK(ceq.kept_count() == 2);
  }

  TEST_CASE("explain validates the instance against the constraint") {
    auto u = small_universe(2);
    Manager m(u);
    ConstrainedFn fn{&m, m.compile(parse_formula("X1 <-> X2", u)),
                     m.compile(parse_formula("X1 -> X2", u))};

    ReasonQuery q;  // implies, no filter
    CHECK_THROWS_AS(explain(fn, Instance::from_bits("10"), q), OutOfConstraintError);
    CHECK_THROWS_AS(explain(fn, Instance::from_bits("01"), q), NegativeInstanceError);

    ReasonSet ok = explain(fn, Instance::from_bits("11"), q);
    CHECK(rendered(ok.kept(), *u) == std::vector<std::string>{"X1"});
    CHECK(ok.mode == Mode::Implies);

    ReasonQuery dual = q;
    dual.dual = true;
    ReasonSet neg = explain(fn, Instance::from_bits("01"), dual);
    CHECK(rendered(neg.kept(), *u) == std::vector<std::string>{"!X1 & X2"});

    ReasonQuery force = q;
    force.force = true;
    // forcing is only honoured when the constraint is out of the picture
    CHECK_THROWS_AS(explain(fn, Instance::from_bits("10"), force), OutOfConstraintError);
    force.mode = Mode::Ignore;
    // 10 gets past the constraint check but is still a negative decision
    CHECK_THROWS_AS(explain(fn, Instance::from_bits("10"), force), NegativeInstanceError);
  }

  TEST_CASE("explain of a forced-out-of-constraint negative needs dual too") {
    auto u = small_universe(2);
    Manager m(u);
    ConstrainedFn fn{&m, m.compile(parse_formula("X1 <-> X2", u)),
                     m.compile(parse_formula("X1 -> X2", u))};
    ReasonQuery q;
    q.mode = Mode::Ignore;
    q.force = true;
    q.dual = true;
    ReasonSet neg = explain(fn, Instance::from_bits("10"), q);
    CHECK(rendered(neg.kept(), *u) == std::vector<std::string>{"X1 & !X2"});
  }

  TEST_CASE("an unsatisfiable constraint yields the vacuous explanation") {
    auto u = small_universe(2);
    Manager m(u);
    ConstrainedFn fn{&m, m.var(0), m.compile(parse_formula("X1 & !X1", u))};
    ReasonQuery q;  // implies
    CHECK(fn.constraint_unsat());
    ReasonSet rs = explain(fn, Instance::from_bits("01"), q);
    REQUIRE(rs.kept_count() == 1);
    CHECK(rs.kept()[0].empty());
    // under conjoin the instance is simply out of the constraint
    q.mode = Mode::Conjoin;
    CHECK_THROWS_AS(explain(fn, Instance::from_bits("01"), q), OutOfConstraintError);
  }

  TEST_CASE("reason sets come back in canonical order") {
    auto u = small_universe(3);
    Manager m(u);
    NodeRef f = m.compile(parse_formula("X1 | (X2 & X3)", u));
    auto rs = sufficient_reasons(m, f, Instance::from_bits("111"));
    CHECK(rendered(rs, *u) == std::vector<std::string>{"X1", "X2 & X3"});
    CHECK(std::is_sorted(rs.begin(), rs.end(), term_less));
  }

  TEST_CASE("random cross-check against the brute-force oracle") {
    Rng rng(53);
    unsigned checked = 0;
    for (int round = 0; round < 60; ++round) {
      unsigned n = 3 + unsigned(rng.below(5));
      auto u = small_universe(n);
      Formula f = random_formula(rng, u, 2 * n);
      oracle::TruthTable t = oracle::table_of(f);

      std::uint64_t row = t.rows();
      for (std::uint64_t r = 0; r < t.rows(); ++r)
        if (t.get(r)) {
          row = r;
          break;
        }
      if (row == t.rows()) continue;
      Instance x = Instance::from_index(row, n);

      Manager m(u);
      auto got = sufficient_reasons(m, m.compile(f), x);
      auto want = oracle::brute_reasons(t, x);
      CHECK(got == want);
      ++checked;
    }
    CHECK(checked > 30);
  }

  TEST_CASE("kept reasons always satisfy the instance and the target") {
    Rng rng(59);
    for (int round = 0; round < 25; ++round) {
      unsigned n = 4 + unsigned(rng.below(3));
      auto u = small_universe(n);
      Manager m(u);
      ConstrainedFn fn{&m, m.compile(random_formula(rng, u, 2 * n)),
                       m.compile(random_formula(rng, u, n))};
      NodeRef ok = m.apply_and(fn.kappa, fn.f);
      if (ok == m.zero()) continue;
      // find a feasible positive instance by walking the diagram
      Instance x;
      {
        std::vector<bool> bits(n, false);
        NodeRef cur = ok;
        while (!m.is_terminal(cur)) {
          unsigned v = m.top_var(cur);
          bool take_hi = m.hi(cur) != m.zero();
          bits[v] = take_hi;
          cur = take_hi ? m.hi(cur) : m.lo(cur);
        }
        x = Instance(bits);
      }
      for (Mode mode : {Mode::Ignore, Mode::Implies, Mode::Conjoin}) {
        NodeRef target = fn.target(mode);
        auto rs = sufficient_reasons(m, target, x);
        CHECK_FALSE(rs.empty());
        for (const Term& r : rs) {
          CHECK(r.satisfied_by(x));
          CHECK(is_implicant(m, r, target));
          // primality: removing any literal breaks implicancy
          for (std::size_t drop = 0; drop < r.size(); ++drop) {
            Term weaker;
            for (std::size_t i = 0; i < r.size(); ++i)
              if (i != drop) weaker.add(r.literals()[i].var, r.literals()[i].positive);
            CHECK_FALSE(is_implicant(m, weaker, target));
          }
        }
        for (std::size_t i = 0; i < rs.size(); ++i)
          for (std::size_t j = 0; j < rs.size(); ++j)
            if (i != j) CHECK_FALSE(subsumes(rs[i], rs[j]));
      }
    }
  }

  TEST_CASE("repeated queries are deterministic") {
    auto u = small_universe(6);
    Manager m(u);
    Rng rng(61);
    NodeRef f = m.compile(random_formula(rng, u, 14));
    if (f == m.zero()) f = m.one();
    Instance x;
    {
      std::vector<bool> bits(6, false);
      NodeRef cur = f;
      while (!m.is_terminal(cur)) {
        unsigned v = m.top_var(cur);
        bool take_hi = m.hi(cur) != m.zero();
        bits[v] = take_hi;
        cur = take_hi ? m.hi(cur) : m.lo(cur);
      }
      x = Instance(bits);
    }
    auto first = sufficient_reasons(m, f, x);
    auto second = sufficient_reasons(m, f, x);
    CHECK(first == second);
  }
}
