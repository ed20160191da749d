#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bbs/euler.hpp"
#include "support.hpp"

using bbs::CapacityProfile;
using bbs::CarrierSchedule;
using bbs::Count;
using bbs::EulerState;
using bbs::XInt;

namespace {

const auto kUnit = CapacityProfile::uniform(1);
const auto kFree = CarrierSchedule::constant(XInt::inf());

EulerState unit_state(std::vector<Count> counts) { return {0, 0, std::move(counts), kUnit}; }

std::vector<Count> counts_on(const EulerState& s, bbs::BoxIndex first, bbs::BoxIndex last) {
  std::vector<Count> out;
  for (auto n = first; n < last; ++n) out.push_back(s.at(n));
  return out;
}

XInt random_carrier(testing::Gen& g) { return g.chance(15) ? XInt::inf() : XInt(g.range(1, 10)); }

}  // namespace

TEST_CASE("unbounded carrier on unit boxes") {
  const auto step = bbs::euler_step(unit_state({1, 1, 0, 1, 0, 0}), kFree);
  CHECK(counts_on(step.state, 0, 6) == std::vector<Count>{0, 0, 1, 0, 1, 1});
  CHECK(step.state.time == 1);
}

TEST_CASE("carrier of capacity 2 drops a ball and puts it back") {
  const auto step = bbs::euler_step(unit_state({1, 1, 1, 0, 0, 1, 0}), CarrierSchedule::constant(2));
  CHECK(counts_on(step.state, 0, 7) == std::vector<Count>{0, 0, 1, 1, 1, 0, 1});
  CHECK(std::vector<Count>(step.trace.limited.begin(), step.trace.limited.begin() + 7) ==
        std::vector<Count>{0, 0, 0, 1, 1, 0, 1});
  CHECK(step.trace.removed[2] == 1);
  CHECK(step.trace.recovered[2] == 1);
  Count removed = 0;
  for (Count r : step.trace.removed) removed += r;
  CHECK(removed == 1);

  const auto residual = bbs::umkdv_residual(unit_state({1, 1, 1, 0, 0, 1, 0}), step.state, step.trace, 2);
  CHECK(residual.ok());
}

TEST_CASE("empty state stays empty") {
  const CapacityProfile profile(0, {3, 5}, 2);
  const EulerState empty{4, 0, {0, 0, 0}, profile};
  for (XInt m : {XInt(1), XInt(3), XInt::inf()}) {
    const auto step = bbs::euler_step(empty, CarrierSchedule::constant(m));
    CHECK(step.state.empty());
    CHECK(step.state.time == 5);
    for (Count v : step.trace.loads) CHECK(v == 0);
    for (Count v : step.trace.limited) CHECK(v == 0);
    CHECK(bbs::umkdv_residual(empty, step.state, step.trace, m).ok());
    CHECK(bbs::carrier_oracle_step(empty, CarrierSchedule::constant(m)).empty());
  }
}

TEST_CASE("oracle reproduces the worked examples") {
  CHECK(counts_on(bbs::carrier_oracle_step(unit_state({1, 1, 0, 1, 0, 0}), kFree), 0, 6) ==
        std::vector<Count>{0, 0, 1, 0, 1, 1});
  CHECK(counts_on(bbs::carrier_oracle_step(unit_state({1, 1, 1, 0, 0, 1, 0}), CarrierSchedule::constant(2)), 0, 7) ==
        std::vector<Count>{0, 0, 1, 1, 1, 0, 1});

  // M = 1: the second ball is dropped at box 1 and put back there.
  const auto s = unit_state({1, 1});
  const auto step = bbs::euler_step(s, CarrierSchedule::constant(1));
  CHECK(step.trace.removed[1] == 1);
  CHECK(bbs::same_counts(step.state, bbs::carrier_oracle_step(s, CarrierSchedule::constant(1))));
  CHECK(counts_on(step.state, 0, 3) == std::vector<Count>{0, 1, 1});
}

TEST_CASE("a single ball moves to the next box with room") {
  // Box 1 is full, so the ball from box 0 waits for box 2.
  const EulerState blocked{0, 0, {1, 1}, CapacityProfile(0, {2, 1, 3}, 1)};
  const auto step = bbs::euler_step(blocked, CarrierSchedule::constant(2));
  CHECK(counts_on(step.state, 0, 3) == std::vector<Count>{0, 0, 2});
  CHECK(bbs::same_counts(step.state, bbs::carrier_oracle_step(blocked, CarrierSchedule::constant(2))));

  for (Count m = 1; m <= 3; ++m) {
    const EulerState one{0, 3, {1}, CapacityProfile::uniform(2)};
    const auto next = bbs::euler_step(one, CarrierSchedule::constant(m)).state;
    CHECK(next.at(3) == 0);
    CHECK(next.at(4) == 1);
    CHECK(next.total() == 1);
  }
}

TEST_CASE("nukdv step") {
  CHECK(counts_on(bbs::nukdv_step(unit_state({1, 0, 1, 1, 0, 0})), 0, 6) == std::vector<Count>{0, 1, 0, 0, 1, 1});
  const EulerState one{0, 7, {1}, kUnit};
  const auto next = bbs::nukdv_step(one);
  CHECK(next.at(8) == 1);
  CHECK(next.total() == 1);
}

TEST_CASE("invalid states are rejected") {
  CHECK_THROWS_AS(bbs::euler_step(unit_state({2}), kFree), bbs::InvalidState);
  CHECK_THROWS_AS(bbs::euler_step(unit_state({-1}), kFree), bbs::InvalidState);
  CHECK_NOTHROW(EulerState({0, 0, {3, 5}, CapacityProfile(0, {3, 5}, 1)}).validate());
}

TEST_CASE("helpers") {
  EulerState s{0, -2, {0, 1, 0, 0}, kUnit};
  bbs::trim_trailing(s);
  CHECK(s.counts.size() == 2);
  CHECK(s.window_end() == 0);
  const EulerState t{0, -1, {1, 1}, kUnit};
  CHECK(bbs::first_difference(s, t) == bbs::BoxIndex{0});
  CHECK_FALSE(bbs::first_difference(s, s).has_value());
  CHECK(bbs::same_counts(EulerState{0, 0, {0, 1}, kUnit}, EulerState{0, 1, {1, 0, 0}, kUnit}));
}

TEST_CASE("euler_step agrees with the ball-by-ball carrier on random states") {
  testing::Gen g(2024);
  for (int i = 0; i < 3000; ++i) {
    EulerState s = testing::random_state(g, 5, 24);
    std::map<bbs::Time, XInt> entries;
    for (bbs::Time t = 1; t <= 6; ++t) entries[t] = random_carrier(g);
    const CarrierSchedule schedule(entries, XInt::inf());
    for (int step = 0; step < 6; ++step) {
      const auto fast = bbs::euler_step(s, schedule);
      const auto slow = bbs::carrier_oracle_step(s, schedule);
      REQUIRE(bbs::same_counts(fast.state, slow));
      CHECK(fast.state.total() == s.total());
      CHECK(bbs::umkdv_residual(s, fast.state, fast.trace, schedule.at(s.time + 1)).ok());
      s = fast.state;
    }
  }
}

TEST_CASE("an unbounded carrier reduces to the nukdv step") {
  testing::Gen g(7);
  for (int i = 0; i < 1000; ++i) {
    const EulerState s = testing::random_state(g, 4, 20);
    CHECK(bbs::same_counts(bbs::euler_step(s, kFree).state, bbs::nukdv_step(s)));
  }
}

TEST_CASE("the umkdv check notices a wrong step") {
  const auto s = unit_state({1, 1, 0, 0});
  auto step = bbs::euler_step(s, kFree);
  step.state.counts = {0, 1, 1, 0};
  CHECK_FALSE(bbs::umkdv_residual(s, step.state, step.trace, XInt::inf()).ok());
}
