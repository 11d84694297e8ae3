#include "airtime/rng.hpp"

#include <cassert>
#include <limits>

namespace airtime {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  assert(bound > 0);
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

}  // namespace airtime
