#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reasonkit/formula.hpp"

namespace reasonkit {

/// One randomly sampled explanation problem: a decision function, a
/// constraint, and an in-constraint positive instance.
struct RandomCase {
  UniversePtr universe;
  Formula f;
  Formula kappa;
  Instance x;
};

/// Deterministically samples `count` cases with universe sizes in
/// [min_vars, max_vars]. Every case has eval(kappa, x) = eval(f, x) = 1.
/// One slot is replaced by the chain family
///   kappa = X1 -> (X2 & … & Xn),  f = X1 & … & Xn,  x = all-ones,
/// whose shortest reason provably shrinks from n literals (constraint
/// ignored) to the single literal X1 (constraint assumed), guaranteeing a
/// strict witness for the shortest-reason comparisons.
std::vector<RandomCase> make_reason_cases(std::uint64_t seed, unsigned count, unsigned min_vars,
                                          unsigned max_vars);

/// True when the diagram-based enumeration of the case's assumed-constraint
/// reasons equals the brute-force partial-function oracle. On mismatch,
/// `detail` receives a description.
bool oracle_agrees(const RandomCase& c, std::string* detail = nullptr);

struct SelftestOptions {
  std::uint64_t seed = 1;
  unsigned cases = 100;
  unsigned max_vars = 8;
};

struct SelftestReport {
  unsigned example_queries = 0;  // bundled single-instance checks
  unsigned example_matched = 0;
  unsigned table_rows = 0;  // bundled two-mode table rows
  unsigned table_matched = 0;
  unsigned oracle_cases = 0;
  unsigned oracle_agreed = 0;
  std::vector<std::string> failures;

  bool ok() const {
    return example_matched == example_queries && table_matched == table_rows &&
           oracle_agreed == oracle_cases;
  }
};

/// Runs the bundled exact-answer suite plus `options.cases` random oracle
/// cross-checks (`cases = 0` runs the bundled suite only).
SelftestReport run_selftest(const SelftestOptions& options);

}  // namespace reasonkit
