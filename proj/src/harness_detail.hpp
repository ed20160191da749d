#pragma once

#include <random>

#include "bbs/euler.hpp"
#include "bbs/profile.hpp"

namespace bbs::detail {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// U_n uniform in [0, Delta_n] on [start, start + boxes), redrawn while empty.
inline EulerState random_state(Rng& rng, const CapacityProfile& profile, BoxIndex start, Count boxes) {
  EulerState s{0, start, std::vector<Count>(static_cast<std::size_t>(boxes), 0), profile};
  do {
    for (Count i = 0; i < boxes; ++i) s.counts[static_cast<std::size_t>(i)] = uniform(rng, 0, profile.capacity(start + i));
  } while (s.empty());
  return s;
}

}  // namespace bbs::detail
