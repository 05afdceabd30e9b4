#pragma once

#include <cstdint>
#include <vector>

#include "reasonkit/formula.hpp"
#include "reasonkit/term.hpp"

namespace reasonkit {
namespace oracle {

inline constexpr unsigned kMaxOracleVars = 20;

/// Explicit truth table over n <= 20 variables. Row r assigns variable 0
/// the most significant bit of r, matching Instance::from_index.
class TruthTable {
 public:
  explicit TruthTable(unsigned n);

  unsigned vars() const { return n_; }
  std::uint64_t rows() const { return std::uint64_t(1) << n_; }

  bool get(std::uint64_t row) const { return bits_[row]; }
  void set(std::uint64_t row, bool value) { bits_[row] = value; }

  bool operator==(const TruthTable& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
  }

 private:
  unsigned n_;
  std::vector<bool> bits_;
};

/// Tabulates a formula by evaluating every assignment.
TruthTable table_of(const Formula& f);

/// True when term `t` is an implicant of the table: every row satisfying
/// all literals of t is a 1-row.
bool is_implicant(const Term& t, const TruthTable& table);

/// Reference enumeration of the sufficient reasons for x under `table`
/// (which must have table(x) = 1): all prime implicants of the table that
/// x satisfies, found by trying literal subsets of x in ascending size and
/// discarding supersets of anything already accepted. Exponential; meant
/// for cross-checking, not production use.
std::vector<Term> brute_reasons(const TruthTable& table, const Instance& x);

/// Same enumeration for a partially specified function: `onset` gives the
/// rows that must map to 1, `care` the rows whose value matters at all
/// (onset must lie inside care). A subset of x's literals qualifies when
/// every care row it covers is an onset row — x itself always being one
/// such row — and the reasons are the minimal qualifying subsets.
/// Requires x to be an onset row.
std::vector<Term> brute_reasons_partial(const TruthTable& onset, const TruthTable& care,
                                        const Instance& x);

}  // namespace oracle
}  // namespace reasonkit
