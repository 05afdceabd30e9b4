#include "reasonkit/oracle.hpp"

#include <algorithm>

#include "reasonkit/errors.hpp"

namespace reasonkit {
namespace oracle {

TruthTable::TruthTable(unsigned n) : n_(n) {
  if (n > kMaxOracleVars)
    throw PreconditionError("oracle truth tables support at most " +
                            std::to_string(kMaxOracleVars) + " variables");
  bits_.assign(std::size_t(1) << n, false);
}

TruthTable table_of(const Formula& f) {
  const unsigned n = static_cast<unsigned>(f.universe()->size());
  TruthTable table(n);
  for (std::uint64_t row = 0; row < table.rows(); ++row)
    table.set(row, f.eval(Instance::from_index(row, n)));
  return table;
}

namespace {

// Rows covered by the partial assignment (mask, bits): variables in `mask`
// pinned to the corresponding bit of `bits`, the rest free. Calls fn(row).
template <typename Fn>
void for_each_covered_row(std::uint64_t mask, std::uint64_t bits, unsigned n, Fn&& fn) {
  std::uint64_t free_mask = ~mask & ((std::uint64_t(1) << n) - 1);
  // Enumerate submasks of free_mask, OR'd onto the pinned bits.
  std::uint64_t sub = 0;
  while (true) {
    fn(bits | sub);
    if (sub == free_mask) break;
    sub = (sub - free_mask) & free_mask;  // next submask in increasing order
  }
}

Term term_from_mask(std::uint64_t mask, const Instance& x) {
  Term t;
  for (unsigned v = 0; v < x.size(); ++v)
    if (mask & (std::uint64_t(1) << (x.size() - 1 - v))) t.add(v, x.bit(v));
  return t;
}

// Shared core: enumerate subsets of x's literals by ascending cardinality;
// keep a subset if `good(mask)` holds and no already-kept subset is
// contained in it.
template <typename Good>
std::vector<Term> minimal_subsets(const Instance& x, Good&& good) {
  const unsigned n = x.size();
  std::vector<std::uint64_t> kept_masks;
  std::vector<std::vector<std::uint64_t>> buckets(n + 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask)
    buckets[static_cast<unsigned>(__builtin_popcountll(mask))].push_back(mask);
  for (unsigned size = 0; size <= n; ++size) {
    for (std::uint64_t mask : buckets[size]) {
      bool dominated = std::any_of(kept_masks.begin(), kept_masks.end(),
                                   [&](std::uint64_t k) { return (k & mask) == k; });
      if (dominated) continue;
      if (good(mask)) kept_masks.push_back(mask);
    }
  }
  std::vector<Term> reasons;
  reasons.reserve(kept_masks.size());
  for (std::uint64_t mask : kept_masks) reasons.push_back(term_from_mask(mask, x));
  std::sort(reasons.begin(), reasons.end(), term_less);
  return reasons;
}

}  // namespace

bool is_implicant(const Term& t, const TruthTable& table) {
  const unsigned n = table.vars();
  std::uint64_t mask = 0, bits = 0;
  for (const Literal& l : t.literals()) {
    std::uint64_t bit = std::uint64_t(1) << (n - 1 - l.var);
    mask |= bit;
    if (l.positive) bits |= bit;
  }
  bool ok = true;
  for_each_covered_row(mask, bits, n, [&](std::uint64_t row) { ok = ok && table.get(row); });
  return ok;
}

std::vector<Term> brute_reasons(const TruthTable& table, const Instance& x) {
  const unsigned n = table.vars();
  if (x.size() != n) throw PreconditionError("instance arity does not match table");
  if (!table.get(x.as_index()))
    throw PreconditionError("instance is not accepted; it has no sufficient reasons");
  const std::uint64_t xbits = x.as_index();
  return minimal_subsets(x, [&](std::uint64_t mask) {
    bool ok = true;
    for_each_covered_row(mask, xbits & mask, n, [&](std::uint64_t row) {
      ok = ok && table.get(row);
    });
    return ok;
  });
}

std::vector<Term> brute_reasons_partial(const TruthTable& onset, const TruthTable& care,
                                        const Instance& x) {
  const unsigned n = onset.vars();
  if (care.vars() != n) throw PreconditionError("onset and care tables disagree on arity");
  if (x.size() != n) throw PreconditionError("instance arity does not match table");
  for (std::uint64_t row = 0; row < onset.rows(); ++row)
    if (onset.get(row) && !care.get(row))
      throw PreconditionError("onset row outside the care set");
  if (!onset.get(x.as_index()))
    throw PreconditionError("instance is not accepted; it has no sufficient reasons");
  const std::uint64_t xbits = x.as_index();
  return minimal_subsets(x, [&](std::uint64_t mask) {
    bool ok = true;
    for_each_covered_row(mask, xbits & mask, n, [&](std::uint64_t row) {
      ok = ok && (!care.get(row) || onset.get(row));
    });
    return ok;
  });
}

}  // namespace oracle
}  // namespace reasonkit
