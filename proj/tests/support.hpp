#pragma once

// Deterministic generators shared by the property tests.

#include <cstdint>
#include <vector>

#include "bbs/euler.hpp"
#include "bbs/profile.hpp"
#include "bbs/toda.hpp"

namespace testing {

/// xorshift64*; fixed seeds keep every property test reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ULL + 1) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  bool chance(int percent) { return range(0, 99) < percent; }

 private:
  std::uint64_t state_;
};

inline bbs::CapacityProfile random_profile(Gen& g, bbs::Count max_capacity, bbs::BoxIndex start, bbs::Count boxes) {
  if (g.chance(25)) {
    std::vector<bbs::Count> pattern(static_cast<std::size_t>(g.range(1, 4)));
    for (auto& c : pattern) c = g.range(1, max_capacity);
    return bbs::CapacityProfile::repeating(start, pattern);
  }
  std::vector<bbs::Count> caps(static_cast<std::size_t>(boxes));
  for (auto& c : caps) c = g.range(1, max_capacity);
  return {start, caps, g.range(1, max_capacity)};
}

/// Nonempty state on at most max_window boxes.
inline bbs::EulerState random_state(Gen& g, const bbs::CapacityProfile& profile, bbs::Count max_window) {
  const bbs::Count boxes = g.range(1, max_window);
  bbs::EulerState s{0, g.range(-6, 6), std::vector<bbs::Count>(static_cast<std::size_t>(boxes)), profile};
  do {
    for (bbs::Count i = 0; i < boxes; ++i) {
      s.counts[static_cast<std::size_t>(i)] = g.range(0, profile.capacity(s.window_start + i));
    }
  } while (s.empty());
  return s;
}

inline bbs::EulerState random_state(Gen& g, bbs::Count max_capacity, bbs::Count max_window) {
  const auto profile = random_profile(g, max_capacity, g.range(-6, 6), max_window);
  return random_state(g, profile, max_window);
}

/// Toda state on the unit profile (every size and gap is reachable there).
inline bbs::TodaState random_unit_toda(Gen& g, bbs::Count max_solitons, bbs::Count max_block) {
  bbs::TodaState t;
  t.sizes.resize(static_cast<std::size_t>(g.range(1, max_solitons)));
  for (auto& q : t.sizes) q = g.range(1, max_block);
  t.gaps.resize(t.sizes.size() - 1);
  for (auto& e : t.gaps) e = g.range(1, max_block);
  t.anchor = g.range(-10, 10);
  t.profile = bbs::CapacityProfile::uniform(1);
  return t;
}

}  // namespace testing
