#include "reasonkit/generate.hpp"

namespace reasonkit {

namespace {

Formula random_node(Rng& rng, const UniversePtr& universe, unsigned size) {
  if (size <= 1) {
    // 1-in-16 constants keep degenerate subtrees rare but covered.
    if (rng.below(16) == 0) return Formula::constant(universe, rng.coin());
    return Formula::var(universe, static_cast<unsigned>(rng.below(universe->size())));
  }
  switch (rng.below(10)) {
    case 0:
    case 1:
      return !random_node(rng, universe, size - 1);
    default: {
      unsigned left = 1 + static_cast<unsigned>(rng.below(size - 1));
      Formula a = random_node(rng, universe, left);
      Formula b = random_node(rng, universe, size - left);
      switch (rng.below(4)) {
        case 0: return a & b;
        case 1: return a | b;
        case 2: return implies(a, b);
        default: return iff(a, b);
      }
    }
  }
}

}  // namespace

Formula random_formula(Rng& rng, const UniversePtr& universe, unsigned size) {
  if (size == 0) size = 1;
  return random_node(rng, universe, size);
}

Instance random_instance(Rng& rng, unsigned n) {
  std::vector<bool> bits(n);
  for (unsigned i = 0; i < n; ++i) bits[i] = rng.coin();
  return Instance(std::move(bits));
}

}  // namespace reasonkit
