#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <bit>

#include "bbs/solutions.hpp"
#include "support.hpp"

using bbs::CapacityProfile;
using bbs::CarrierSchedule;
using bbs::Count;
using bbs::Time;
using bbs::XInt;

namespace {

using V = std::vector<Count>;

const auto kFree = CarrierSchedule::constant(XInt::inf());

/// sum_{j=0}^{upper-1} f(j), negated over [upper, -1] when upper < 0.
template <class F>
XInt plain_sum(Time upper, F f) {
  XInt s = 0;
  for (Time j = std::min<Time>(upper, 0); j < std::max<Time>(upper, 0); ++j) s += f(j);
  return upper >= 0 ? s : -s;
}

/// Euler potential straight from the definition, subsets as bitmasks.
XInt potential_oracle(const bbs::EulerSolitonParams& p, int k, Time t, bbs::BoxIndex n) {
  const std::size_t size = p.amplitudes.size();
  XInt best = 0;
  for (unsigned mask = 1; mask < (1u << size); ++mask) {
    XInt v = 0;
    for (std::size_t i = 0; i < size; ++i) {
      if (!(mask >> i & 1u)) continue;
      const Count amp = p.amplitudes[i];
      v += XInt(p.phases[i]) - plain_sum(n, [&](Time j) { return XInt(std::min(amp, p.profile.capacity(j))); }) +
           plain_sum(t, [&](Time j) { return bbs::tmin(XInt(amp), p.schedule.at(j)); }) - (k == 1 ? amp : 0);
      for (std::size_t j = i + 1; j < size; ++j) {
        if (mask >> j & 1u) v += 2 * std::min(amp, p.amplitudes[j]);
      }
    }
    best = bbs::tmin(best, v);
  }
  return best;
}

/// T (odd) and Tbar from the definition: every n-subset of the N indices as a
/// bitmask, members taken in increasing order.
XInt tau_oracle(const bbs::TauParams& p, int k, Time t, std::int64_t n, bool odd) {
  const auto size = static_cast<std::int64_t>(p.amplitudes.size());
  if (n == -1 || n == size + 1) return XInt::inf();
  if (n == 0) return 0;
  XInt best = XInt::inf();
  for (unsigned mask = 0; mask < (1u << size); ++mask) {
    if (std::popcount(mask) != n) continue;
    XInt v = 0;
    std::int64_t i = 0;
    for (std::int64_t r = 0; r < size; ++r) {
      if (!(mask >> r & 1u)) continue;
      const Count amp = p.amplitudes[static_cast<std::size_t>(r)];
      const Count shift = 2 * (n - 1 - i) - (odd ? 1 : 0);
      v += XInt(p.weights[static_cast<std::size_t>(r)]) + shift * amp -
           (2 * (n - 1) + t + k) * std::min(amp, p.capacity) +
           plain_sum(odd ? t + 1 : t, [&](Time j) { return bbs::tmin(XInt(amp), p.schedule.at(j)); });
      ++i;
    }
    best = bbs::tmin(best, v);
  }
  return best;
}

bbs::TauParams tau_params(V p, V w, Count delta, CarrierSchedule schedule) {
  return {std::move(p), std::move(w), delta, std::move(schedule)};
}

CarrierSchedule random_schedule(testing::Gen& g, Count lo, Count hi, Time last) {
  std::map<Time, XInt> entries;
  for (Time t = 1; t <= last; ++t) entries[t] = g.chance(20) ? XInt::inf() : XInt(g.range(lo, hi));
  return {entries, XInt::inf()};
}

}  // namespace

TEST_CASE("signed sums") {
  auto one = [](std::int64_t) { return XInt(1); };
  CHECK(bbs::signed_sum(3, one) == XInt(3));
  CHECK(bbs::signed_sum(0, one) == XInt(0));
  CHECK(bbs::signed_sum(-2, one) == XInt(-2));
  auto ident = [](std::int64_t j) { return XInt(j); };
  CHECK(bbs::signed_sum(4, ident) == XInt(6));
  CHECK(bbs::signed_sum(-3, ident) == XInt(6));  // -(-3 - 2 - 1)
}

TEST_CASE("euler potential matches the subset definition") {
  testing::Gen g(71);
  for (int i = 0; i < 100; ++i) {
    const auto size = static_cast<std::size_t>(g.range(1, 4));
    bbs::EulerSolitonParams p;
    for (std::size_t k = 0; k < size; ++k) {
      p.amplitudes.push_back(g.range(1, 8));
      p.phases.push_back(g.range(-15, 15));
    }
    p.profile = testing::random_profile(g, 4, g.range(-4, 4), g.range(1, 8));
    p.schedule = random_schedule(g, 1, 8, 6);
    for (Time t = -3; t <= 6; t += 3) {
      for (bbs::BoxIndex n = -10; n <= 10; n += 4) {
        for (int k = 0; k <= 1; ++k) CHECK(bbs::euler_potential(p, k, t, n) == potential_oracle(p, k, t, n));
      }
    }
  }
}

TEST_CASE("single soliton of size 3 moves 3 boxes per step") {
  const bbs::EulerSolitonParams p{{3}, {0}, CapacityProfile::uniform(1), kFree};
  bbs::BoxIndex previous = 0;
  for (Time t = 0; t <= 6; ++t) {
    const auto s = bbs::euler_nsoliton(p, -40, 60, t).state(p.profile);
    CHECK(s.total() == 3);
    const auto first = std::find(s.counts.begin(), s.counts.end(), 1) - s.counts.begin();
    const bbs::BoxIndex start = s.window_start + first;
    CHECK(s.at(start) == 1);
    CHECK(s.at(start + 1) == 1);
    CHECK(s.at(start + 2) == 1);
    if (t > 0) CHECK(start - previous == 3);
    previous = start;
  }
  CHECK(bbs::verify_euler_solution(p, 0, 10).ok());
}

TEST_CASE("phases far out give the empty solution") {
  const bbs::EulerSolitonParams p{{2, 4}, {500, 900}, CapacityProfile::uniform(1), kFree};
  const auto s = bbs::euler_nsoliton(p, -20, 20, 0);
  CHECK(std::all_of(s.counts.begin(), s.counts.end(), [](Count u) { return u == 0; }));
  CHECK(bbs::verify_euler_solution(p, -20, 20, 0, 5).ok());
}

TEST_CASE("two solitons of sizes 1 and 3 follow euler_step") {
  const bbs::EulerSolitonParams p{{1, 3}, {-2, 7}, CapacityProfile::uniform(1), kFree};
  const auto report = bbs::verify_euler_solution(p, 0, 10);
  CHECK(report.max_residual() == 0);
  CHECK(report.evolution_mismatches == 0);
  CHECK(report.ok());
}

TEST_CASE("random euler soliton families") {
  testing::Gen g(73);
  for (int i = 0; i < 120; ++i) {
    bbs::EulerSolitonParams p;
    const auto size = static_cast<std::size_t>(g.range(1, 3));
    while (p.amplitudes.size() < size) {
      const Count a = g.range(1, 8);
      if (std::find(p.amplitudes.begin(), p.amplitudes.end(), a) == p.amplitudes.end()) p.amplitudes.push_back(a);
    }
    for (std::size_t k = 0; k < size; ++k) p.phases.push_back(g.range(-20, 20));
    p.profile = testing::random_profile(g, 4, g.range(-4, 4), g.range(1, 10));
    p.schedule = random_schedule(g, 1, 8, 12);
    const auto report = bbs::verify_euler_solution(p, 0, 10);
    CHECK(report.ok());
  }
}

TEST_CASE("tied amplitudes produce a report") {
  const bbs::EulerSolitonParams p{{3, 3}, {0, 8}, CapacityProfile::uniform(2), CarrierSchedule::constant(4)};
  CHECK_NOTHROW(bbs::verify_euler_solution(p, -60, 60, 0, 10));
}

TEST_CASE("tau boundary values") {
  const auto p = tau_params({2, 5}, {0, 0}, 2, kFree);
  for (int k = 0; k <= 1; ++k) {
    for (Time t = -2; t <= 3; ++t) {
      CHECK(bbs::tau_T(p, k, t, 0) == XInt(0));
      CHECK(bbs::tau_T_bar(p, k, t, 0) == XInt(0));
      CHECK(bbs::tau_T(p, k, t, -1) == XInt::inf());
      CHECK(bbs::tau_T_bar(p, k, t, 3) == XInt::inf());
    }
  }
  CHECK_THROWS(bbs::tau_T(p, 0, 0, 4));
  CHECK_THROWS(tau_params({5, 2}, {0, 0}, 2, kFree).validate());
}

TEST_CASE("tau potentials match the bitmask oracle") {
  testing::Gen g(79);
  for (int i = 0; i < 150; ++i) {
    V amps;
    const auto size = g.range(1, 5);
    for (int k = 0; k < size; ++k) amps.push_back(g.range(0, 10));
    std::sort(amps.begin(), amps.end());
    V weights;
    for (int k = 0; k < size; ++k) weights.push_back(g.range(-10, 10));
    const Count delta = g.range(1, 4);
    const auto p = tau_params(amps, weights, delta, random_schedule(g, delta, delta + 6, 8));
    for (Time t = -3; t <= 8; ++t) {
      for (std::int64_t n = -1; n <= size + 1; ++n) {
        for (int k = 0; k <= 1; ++k) {
          CHECK(bbs::tau_T(p, k, t, n) == tau_oracle(p, k, t, n, true));
          CHECK(bbs::tau_T_bar(p, k, t, n) == tau_oracle(p, k, t, n, false));
        }
      }
    }
  }
}

TEST_CASE("one soliton: constant size and carrier load min(P, M_t)") {
  for (Count amp = 0; amp <= 7; ++amp) {
    for (Count delta = 1; delta <= 4; ++delta) {
      testing::Gen g(static_cast<std::uint64_t>(amp * 10 + delta));
      const auto p = tau_params({amp}, {g.range(-10, 10)}, delta, random_schedule(g, delta, delta + 6, 12));
      for (Time t = 0; t <= 10; ++t) {
        const auto s = bbs::tau_toda_state(p, t);
        CHECK(s.sizes == V{amp});
        CHECK(XInt(s.exit_loads[0]) == bbs::tmin(XInt(amp), p.schedule.at(t)));
      }
    }
  }
  const auto four = tau_params({4}, {0}, 2, kFree);
  for (Time t = 0; t < 5; ++t) CHECK(bbs::tau_toda_state(four, t).sizes == V{4});
}

TEST_CASE("two solitons P = (2, 5), W = 0, Delta = 2, M = 5") {
  // Values from a separate exhaustive evaluation of the potentials.
  const auto p = tau_params({2, 5}, {0, 0}, 2, CarrierSchedule({}, 5));
  const std::vector<V> gaps{{2}, {5}, {8}, {11}, {14}, {17}};
  for (Time t = 0; t <= 5; ++t) {
    const auto s = bbs::tau_toda_state(p, t);
    CHECK(s.sizes == V{2, 5});
    CHECK(s.gaps == gaps[static_cast<std::size_t>(t)]);
    CHECK(s.limited_sizes == V{2, 5});
    CHECK(s.limited_gaps == gaps[static_cast<std::size_t>(t)]);
    CHECK(s.entry_loads == (t == 0 ? V{2, 5, 2} : V{2, 2, 2}));
    CHECK(s.exit_loads == (t == 0 ? V{5, 5} : V{2, 5}));
  }
  for (Time t = 0; t <= 3; ++t) CHECK(bbs::tau_T(p, 0, t, 1) == XInt(0));
  const V expected{-8, -5, -2, 1};
  for (Time t = 0; t <= 3; ++t) CHECK(bbs::tau_T_bar(p, 1, t, 2) == XInt(expected[static_cast<std::size_t>(t)]));
  CHECK(bbs::verify_tau_solution(p, 0, 15).ok());
}

TEST_CASE("random tau solutions satisfy every equation") {
  testing::Gen g(83);
  for (int i = 0; i < 120; ++i) {
    const auto size = g.range(2, 3);
    V amps;
    while (static_cast<std::int64_t>(amps.size()) < size) {
      const Count a = g.range(1, 10);
      if (std::find(amps.begin(), amps.end(), a) == amps.end()) amps.push_back(a);
    }
    std::sort(amps.begin(), amps.end());
    V weights;
    for (int k = 0; k < size; ++k) weights.push_back(g.range(-10, 10));
    const Count delta = g.range(1, 4);
    const auto p = tau_params(amps, weights, delta, random_schedule(g, delta, delta + 6, 16));
    const auto report = bbs::verify_tau_solution(p, 0, 15);
    CHECK(report.max_residual() == 0);
    CHECK(report.min_gap >= 1);
    CHECK(report.ok());
  }
}

TEST_CASE("carrier capacity equal to the box capacity") {
  for (Count delta = 1; delta <= 4; ++delta) {
    const auto p = tau_params({1, 3, 6}, {4, -2, 0}, delta, CarrierSchedule({}, delta));
    CHECK(bbs::verify_tau_solution(p, 0, 15).ok());
  }
}

TEST_CASE("a carrier below the box capacity is flagged") {
  const auto p = tau_params({1, 3}, {0, 0}, 4, CarrierSchedule({}, 2));
  const auto report = bbs::verify_tau_solution(p, 0, 5);
  CHECK(report.capacity_violations == 5);
  CHECK_FALSE(report.ok());
}
