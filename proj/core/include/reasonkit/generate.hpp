#pragma once

#include <cstdint>

#include "reasonkit/formula.hpp"

namespace reasonkit {

/// Deterministic splitmix64 stream. Reproducible across platforms and
/// standard libraries, which std::uniform_int_distribution is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform-enough value in [0, bound); bound must be positive. The
  /// modulo bias is irrelevant for test-case generation.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  bool coin() { return next() & 1u; }

 private:
  std::uint64_t state_;
};

/// Random formula over the whole universe with roughly `size` connectives
/// and leaves. Leans on variables over constants so most formulas are
/// non-degenerate.
Formula random_formula(Rng& rng, const UniversePtr& universe, unsigned size);

Instance random_instance(Rng& rng, unsigned n);

}  // namespace reasonkit
