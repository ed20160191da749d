#include "bbs/euler.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <string>

namespace bbs {

Count EulerState::at(BoxIndex n) const noexcept {
  if (n < window_start || n >= window_end()) return 0;
  return counts[static_cast<std::size_t>(n - window_start)];
}

Count EulerState::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), Count{0}); }

void EulerState::validate() const {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const BoxIndex n = window_start + static_cast<BoxIndex>(i);
    const Count cap = profile.capacity(n);
    if (counts[i] < 0 || counts[i] > cap) {
      throw InvalidState("box " + std::to_string(n) + " holds " + std::to_string(counts[i]) +
                         " balls, capacity " + std::to_string(cap));
    }
  }
}

bool same_counts(const EulerState& a, const EulerState& b) noexcept {
  const BoxIndex lo = std::min(a.window_start, b.window_start);
  const BoxIndex hi = std::max(a.window_end(), b.window_end());
  for (BoxIndex n = lo; n < hi; ++n) {
    if (a.at(n) != b.at(n)) return false;
  }
  return true;
}

std::optional<BoxIndex> first_difference(const EulerState& a, const EulerState& b) {
  const BoxIndex lo = std::min(a.window_start, b.window_start);
  const BoxIndex hi = std::max(a.window_end(), b.window_end());
  for (BoxIndex n = lo; n < hi; ++n) {
    if (a.at(n) != b.at(n)) return n;
  }
  return std::nullopt;
}

void trim_trailing(EulerState& state) {
  while (!state.counts.empty() && state.counts.back() == 0) state.counts.pop_back();
}

Count EulerStepTrace::load_at(BoxIndex n) const noexcept {
  const BoxIndex i = n - window_start;
  if (i < 0 || i >= static_cast<BoxIndex>(loads.size())) return 0;
  return loads[static_cast<std::size_t>(i)];
}

namespace {

// The carrier can hold at most `total` balls and every box has room for at
// least one, so it is empty after `total` boxes past the last ball.
std::size_t extended_length(const EulerState& state) {
  return state.counts.size() + static_cast<std::size_t>(state.total());
}

}  // namespace

EulerStep euler_step(const EulerState& state, const CarrierSchedule& schedule) {
  state.validate();
  const XInt m = schedule.at(state.time + 1);
  const std::size_t len = extended_length(state);

  EulerStep out;
  out.state.time = state.time + 1;
  out.state.window_start = state.window_start;
  out.state.profile = state.profile;
  out.state.counts.assign(len, 0);

  EulerStepTrace& tr = out.trace;
  tr.window_start = state.window_start;
  tr.carrier_capacity = m;
  tr.limited.assign(len, 0);
  tr.loads.assign(len, 0);
  tr.removed.assign(len, 0);
  tr.recovered.assign(len, 0);

  Count load = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const BoxIndex n = state.window_start + static_cast<BoxIndex>(i);
    const Count u = i < state.counts.size() ? state.counts[i] : 0;
    const Count room = state.profile.capacity(n) - u;

    const Count limited = std::min(room, load);
    const Count gathered = load + u;
    const Count kept = tmin(XInt(gathered), m).value();
    const Count next_load = kept - limited;

    tr.loads[i] = load;
    tr.limited[i] = limited;
    tr.removed[i] = gathered - kept;
    tr.recovered[i] = gathered - kept;
    out.state.counts[i] = u + load - next_load;
    load = next_load;
  }
  if (load != 0) throw WindowOverflow("carrier still holds " + std::to_string(load) + " balls at window edge");

  trim_trailing(out.state);
  return out;
}

EulerState carrier_oracle_step(const EulerState& state, const CarrierSchedule& schedule) {
  state.validate();
  const XInt m = schedule.at(state.time + 1);
  const std::size_t len = extended_length(state);

  std::vector<Count> boxes(len, 0);
  std::vector<Count> removed(len, 0);
  // Origin box of every ball in the carrier, oldest first.
  std::deque<BoxIndex> carrier;

  for (std::size_t i = 0; i < len; ++i) {
    const BoxIndex n = state.window_start + static_cast<BoxIndex>(i);
    const Count u = i < state.counts.size() ? state.counts[i] : 0;
    Count free_places = state.profile.capacity(n) - u;

    for (Count k = 0; k < u; ++k) carrier.push_back(n);
    while (m.finite() && static_cast<Count>(carrier.size()) > m.value()) {
      carrier.pop_back();
      ++removed[i];
    }
    // Balls picked up here never go back into the same box.
    while (free_places > 0 && !carrier.empty() && carrier.front() != n) {
      carrier.pop_front();
      ++boxes[i];
      --free_places;
    }
  }
  if (!carrier.empty()) throw WindowOverflow("oracle carrier not empty at window edge");

  for (std::size_t i = 0; i < len; ++i) boxes[i] += removed[i];

  EulerState next{state.time + 1, state.window_start, std::move(boxes), state.profile};
  trim_trailing(next);
  return next;
}

EulerState nukdv_step(const EulerState& state) {
  state.validate();
  const std::size_t len = extended_length(state);
  EulerState next{state.time + 1, state.window_start, std::vector<Count>(len, 0), state.profile};

  Count pending = 0;  // sum_{j<n} (U_j - U'_j)
  for (std::size_t i = 0; i < len; ++i) {
    const BoxIndex n = state.window_start + static_cast<BoxIndex>(i);
    const Count u = i < state.counts.size() ? state.counts[i] : 0;
    next.counts[i] = std::min(state.profile.capacity(n) - u, pending);
    pending += u - next.counts[i];
  }
  if (pending != 0) throw WindowOverflow("nukdv step did not settle inside the window");

  trim_trailing(next);
  return next;
}

UmkdvResidual umkdv_residual(const EulerState& before, const EulerState& after,
                             const EulerStepTrace& trace, XInt carrier_capacity) {
  const BoxIndex lo = std::min({before.window_start, after.window_start, trace.window_start});
  const BoxIndex hi = std::max({before.window_end(), after.window_end(),
                                trace.window_start + static_cast<BoxIndex>(trace.loads.size())});
  UmkdvResidual r;
  Count sum_before = 0;  // sum_{j<n} U_j
  Count sum_after = 0;   // sum_{j<n} U'_j
  for (BoxIndex n = lo; n < hi; ++n) {
    const Count u = before.at(n);
    const Count un = after.at(n);
    const Count drift = sum_before - sum_after;
    const XInt excess = pos(XInt(sum_before + u - sum_after) - carrier_capacity);
    const XInt rhs = tmin(XInt(before.profile.capacity(n) - u), XInt(drift)) + excess;

    const XInt gap = XInt(un) - rhs;
    const Count v = gap.finite() ? std::abs(gap.value()) : INT64_MAX;
    if (v > r.max_violation) {
      r.max_violation = v;
      r.worst_box = n;
    }
    r.carrier_violation = std::max(r.carrier_violation, std::abs(trace.load_at(n) - drift));

    sum_before += u;
    sum_after += un;
  }
  return r;
}

}  // namespace bbs
