#include "bbs/toda.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace bbs {

namespace {

/// E_n with the boundary convention E_0 = E_N = +inf.
XInt gap_at(std::span<const Count> gaps, std::size_t n) {
  if (n == 0 || n > gaps.size()) return XInt::inf();
  return gaps[n - 1];
}

void check_shape(std::span<const Count> sizes, std::span<const Count> gaps) {
  if (sizes.empty()) throw InvalidState("a Toda state needs at least one soliton");
  if (gaps.size() + 1 != sizes.size()) {
    throw InvalidState("expected " + std::to_string(sizes.size() - 1) + " interior gaps, got " +
                       std::to_string(gaps.size()));
  }
}

void check_positive(std::span<const Count> sizes, std::span<const Count> gaps, const char* where) {
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    if (sizes[n] < 1) throw Degenerate(std::string(where) + ": soliton " + std::to_string(n) + " has size " + std::to_string(sizes[n]));
  }
  for (std::size_t n = 0; n < gaps.size(); ++n) {
    if (gaps[n] < 1) throw Degenerate(std::string(where) + ": gap " + std::to_string(n + 1) + " has size " + std::to_string(gaps[n]));
  }
}

}  // namespace

Count TodaState::total() const noexcept { return std::accumulate(sizes.begin(), sizes.end(), Count{0}); }

void TodaState::validate() const {
  check_shape(sizes, gaps);
  for (Count q : sizes) {
    if (q < 1) throw InvalidState("soliton sizes must be >= 1");
  }
  for (Count e : gaps) {
    if (e < 1) throw InvalidState("gap sizes must be >= 1");
  }
}

TodaState to_toda_state(const BlockDecomposition& blocks, const CapacityProfile& profile, Time time) {
  return {time, blocks.sizes, blocks.gaps, blocks.anchor, profile};
}

EulerState to_euler_state(const TodaState& state) {
  return positions_to_state(state.anchor, state.sizes, state.gaps, state.profile, state.time);
}

UTodaStep utoda_step(std::span<const Count> sizes, std::span<const Count> gaps) {
  check_shape(sizes, gaps);
  const std::size_t n_sol = sizes.size();
  UTodaStep out;
  out.sizes.resize(n_sol);
  out.carrier.resize(n_sol);

  XInt carrier = sizes[0];
  for (std::size_t n = 0; n < n_sol; ++n) {
    if (n > 0) carrier = carrier - out.sizes[n - 1] + sizes[n];
    out.carrier[n] = carrier.value();
    out.sizes[n] = tmin(gap_at(gaps, n + 1), carrier).value();
  }
  for (std::size_t n = 1; n < n_sol; ++n) {
    out.gaps.push_back((gap_at(gaps, n) - out.sizes[n - 1] + sizes[n]).value());
  }
  check_positive(out.sizes, out.gaps, "utoda_step");
  return out;
}

UTodaStep utoda_step_sumform(std::span<const Count> sizes, std::span<const Count> gaps) {
  check_shape(sizes, gaps);
  const std::size_t n_sol = sizes.size();
  UTodaStep out;
  out.sizes.resize(n_sol);
  out.carrier.resize(n_sol);

  for (std::size_t n = 0; n < n_sol; ++n) {
    XInt taken = 0;
    for (std::size_t j = 0; j <= n; ++j) taken += sizes[j];
    for (std::size_t j = 0; j < n; ++j) taken -= out.sizes[j];
    out.carrier[n] = taken.value();
    out.sizes[n] = tmin(gap_at(gaps, n + 1), taken).value();
  }
  for (std::size_t n = 1; n < n_sol; ++n) {
    out.gaps.push_back((gap_at(gaps, n) - out.sizes[n - 1] + sizes[n]).value());
  }
  check_positive(out.sizes, out.gaps, "utoda_step_sumform");
  return out;
}

TodaState utoda_state_step(const TodaState& state) {
  state.validate();
  UTodaStep step = utoda_step(state.sizes, state.gaps);
  return {state.time + 1, std::move(step.sizes), std::move(step.gaps), state.anchor + state.sizes[0], state.profile};
}

LagrangePositions to_lagrange(SegmentIndex anchor, std::span<const Count> sizes, std::span<const Count> gaps) {
  check_shape(sizes, gaps);
  LagrangePositions pos;
  SegmentIndex x = anchor;
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    pos.soliton_starts.push_back(x);
    const SegmentIndex y = x + sizes[n];
    pos.gap_starts.push_back(y);
    if (n < gaps.size()) x = y + gaps[n];
  }
  return pos;
}

TodaCoordinates from_lagrange(const LagrangePositions& positions) {
  const auto& xs = positions.soliton_starts;
  const auto& ys = positions.gap_starts;
  if (xs.empty() || xs.size() != ys.size()) {
    throw InconsistentPositions("need N soliton starts and N gap starts with N >= 1");
  }
  TodaCoordinates c;
  c.anchor = xs[0];
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const Count q = ys[n] - xs[n];
    if (q < 1) throw InconsistentPositions("soliton " + std::to_string(n) + " has size " + std::to_string(q));
    c.sizes.push_back(q);
    if (n + 1 < xs.size()) {
      const Count e = xs[n + 1] - ys[n];
      if (e < 1) throw InconsistentPositions("gap " + std::to_string(n + 1) + " has size " + std::to_string(e));
      c.gaps.push_back(e);
    }
  }
  return c;
}

LagrangePositions lagrange_step(const LagrangePositions& positions) {
  from_lagrange(positions);
  const std::size_t n_sol = positions.soliton_starts.size();
  // X_n with X_N = +inf; Y_n with Y_0 = -inf.
  auto x_at = [&](std::size_t n) -> XInt {
    return n < n_sol ? XInt(positions.soliton_starts[n]) : XInt::inf();
  };
  auto y_at = [&](std::size_t n) -> XInt { return n == 0 ? XInt::neg_inf() : XInt(positions.gap_starts[n - 1]); };

  LagrangePositions next;
  next.soliton_starts = positions.gap_starts;  // X'_n = Y_{n+1}
  auto x_next = [&](std::size_t n) -> XInt { return next.soliton_starts[n]; };

  XInt before = 0;  // sum_{j=1}^{n} (Y_j - X_{j-1})
  XInt after = 0;   // sum_{j=1}^{n-1} (Y'_j - X'_{j-1})
  for (std::size_t n = 1; n <= n_sol; ++n) {
    before += y_at(n) - x_at(n - 1);
    if (n >= 2) after += XInt(next.gap_starts[n - 2]) - x_next(n - 2);
    const XInt y_new = y_at(n) + tmin(x_at(n) - y_at(n), before - after);
    next.gap_starts.push_back(y_new.value());
  }
  return next;
}

BlockCapacities capacities_for_state(const TodaState& state) {
  state.validate();
  return block_capacities(SegmentGeometry(state.profile), state.anchor, state.sizes, state.gaps);
}

ExTodaStep extoda_step(const TodaState& state) {
  ExTodaStep out;
  out.trace.capacities = capacities_for_state(state);
  const auto& lambda = out.trace.capacities.gap;  // Lambda_{n+1} at index n
  const std::size_t n_sol = state.sizes.size();
  auto lambda_at = [&](std::size_t n) -> XInt { return lambda[n - 1]; };

  std::vector<Count> sizes(n_sol);
  std::vector<XInt> carrier(n_sol);
  for (std::size_t n = 0; n < n_sol; ++n) {
    carrier[n] = n == 0 ? XInt(state.sizes[0]) : carrier[n - 1] - sizes[n - 1] + state.sizes[n];
    sizes[n] = tmin(gap_at(state.gaps, n + 1) - pos(lambda_at(n + 1) - carrier[n]), carrier[n]).value();
  }
  std::vector<Count> gaps;
  for (std::size_t n = 1; n < n_sol; ++n) {
    const XInt e = gap_at(state.gaps, n) - sizes[n - 1] + state.sizes[n] - pos(lambda_at(n) - carrier[n - 1]) +
                   pos(lambda_at(n + 1) - carrier[n]);
    gaps.push_back(e.value());
  }
  check_positive(sizes, gaps, "extoda_step");

  for (const XInt& d : carrier) out.trace.carrier.push_back(d.value());
  const SegmentIndex anchor = state.anchor + tmax(carrier[0], lambda_at(1)).value();
  out.state = {state.time + 1, std::move(sizes), std::move(gaps), anchor, state.profile};
  return out;
}

EnuTodaOutput enutoda_kernel(const EnuTodaInput& in) {
  check_shape(in.sizes, in.gaps);
  const std::size_t n_sol = in.sizes.size();
  if (in.head_capacity.size() != n_sol || in.gap_capacity.size() != n_sol) {
    throw std::invalid_argument("enutoda_kernel: capacity arrays must have N entries");
  }
  const XInt m = in.carrier_capacity;
  auto head = [&](std::size_t n) -> XInt { return n < n_sol ? in.head_capacity[n] : in.trailing_head_capacity; };
  auto lambda = [&](std::size_t n) -> XInt { return in.gap_capacity[n - 1]; };
  auto q = [&](std::size_t n) -> XInt { return in.sizes[n]; };

  std::vector<XInt> entry(n_sol + 1);
  std::vector<XInt> exit(n_sol);
  std::vector<XInt> limited(n_sol);

  // Size-limit pass.
  entry[0] = head(0);
  for (std::size_t n = 0; n < n_sol; ++n) {
    if (n > 0) entry[n] = tmin(exit[n - 1] - limited[n - 1] + head(n), m);
    exit[n] = tmin(entry[n] + q(n) - head(n), m);
    limited[n] = tmin(gap_at(in.gaps, n + 1) - pos(lambda(n + 1) - exit[n]), exit[n]);
  }
  entry[n_sol] = tmin(exit[n_sol - 1] - limited[n_sol - 1] + head(n_sol), m);

  std::vector<XInt> limited_gaps;
  for (std::size_t n = 1; n < n_sol; ++n) {
    limited_gaps.push_back(gap_at(in.gaps, n) - limited[n - 1] + q(n) - pos(lambda(n) - exit[n - 1]) +
                           pos(lambda(n + 1) - exit[n]));
  }

  // Recovery pass.
  EnuTodaOutput out;
  for (std::size_t n = 0; n < n_sol; ++n) {
    out.sizes.push_back((q(n) + entry[n] - entry[n + 1] - head(n) + head(n + 1)).value());
  }
  for (std::size_t n = 1; n < n_sol; ++n) {
    out.gaps.push_back((limited_gaps[n - 1] + limited[n - 1] - q(n) - exit[n - 1] + exit[n]).value());
  }

  auto values = [](const std::vector<XInt>& xs) {
    std::vector<Count> v;
    v.reserve(xs.size());
    for (const XInt& x : xs) v.push_back(x.value());
    return v;
  };
  out.trace.limited_sizes = values(limited);
  out.trace.limited_gaps = values(limited_gaps);
  out.trace.entry_loads = values(entry);
  out.trace.exit_loads = values(exit);
  out.trace.carrier_capacity = m;
  return out;
}

TodaStep enutoda_step(const TodaState& state, const CarrierSchedule& schedule, Count trailing_head_capacity) {
  const BlockCapacities caps = capacities_for_state(state);
  const XInt m = schedule.at(state.time + 1);
  for (std::size_t n = 0; n < caps.head.size(); ++n) {
    if (XInt(caps.head[n]) > m) {
      throw CapacityViolation("K_" + std::to_string(n) + " = " + std::to_string(caps.head[n]) +
                              " exceeds carrier capacity " + m.to_string() + " at t = " +
                              std::to_string(state.time + 1));
    }
  }

  EnuTodaOutput k = enutoda_kernel({state.sizes, state.gaps, caps.head, caps.gap, m, trailing_head_capacity});
  check_positive(k.sizes, k.gaps, "enutoda_step");

  const Count exit0 = k.trace.exit_loads[0];
  const Count lambda1 = caps.gap[0];
  k.trace.limited_anchor = state.anchor + state.sizes[0] + std::max<Count>(0, lambda1 - exit0);
  k.trace.capacities = caps;

  TodaStep out;
  out.state = {state.time + 1, std::move(k.sizes), std::move(k.gaps), state.anchor + std::max(exit0, lambda1),
               state.profile};
  out.trace = std::move(k.trace);
  return out;
}

}  // namespace bbs
