#include "bbs/solutions.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace bbs {

namespace {

Count mismatch(XInt a, XInt b) {
  if (a == b) return 0;
  if (!a.finite() || !b.finite()) return INT64_MAX;
  const std::int64_t d = a.value() - b.value();
  return d < 0 ? -d : d;
}

void raise(Count& slot, Count v) { slot = std::max(slot, v); }

void check_soliton_count(std::size_t n) {
  if (n == 0) throw std::invalid_argument("need at least one soliton");
  if (n > kMaxSolitons) throw std::invalid_argument("at most 15 solitons are supported by subset enumeration");
}

/// Potentials F^{k,t}_n over n in [first, last] (inclusive) for fixed k and t.
std::vector<XInt> potential_row(const EulerSolitonParams& p, int k, Time t, BoxIndex first, BoxIndex last) {
  const std::size_t count = p.solitons();
  const std::uint32_t subsets = 1u << count;

  // Pair interaction of every subset, each unordered pair counted once.
  std::vector<XInt> interaction(subsets, XInt(0));
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    XInt w = 0;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        if ((mask >> i & 1u) && (mask >> j & 1u)) w += 2 * std::min(p.amplitudes[i], p.amplitudes[j]);
      }
    }
    interaction[mask] = w;
  }

  std::vector<XInt> phase(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Count amp = p.amplitudes[i];
    const XInt space = signed_sum(first, [&](std::int64_t j) { return XInt(std::min(amp, p.profile.capacity(j))); });
    const XInt time = signed_sum(t, [&](std::int64_t j) { return tmin(XInt(amp), p.schedule.at(j)); });
    phase[i] = XInt(p.phases[i]) - space + time - (k == 1 ? amp : 0);
  }

  std::vector<XInt> row;
  row.reserve(static_cast<std::size_t>(last - first + 1));
  for (BoxIndex n = first; n <= last; ++n) {
    XInt best = 0;
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      XInt v = interaction[mask];
      for (std::size_t i = 0; i < count; ++i) {
        if (mask >> i & 1u) v += phase[i];
      }
      best = tmin(best, v);
    }
    row.push_back(best);
    for (std::size_t i = 0; i < count; ++i) phase[i] -= std::min(p.amplitudes[i], p.profile.capacity(n));
  }
  return row;
}

}  // namespace

void EulerSolitonParams::validate() const {
  check_soliton_count(amplitudes.size());
  if (phases.size() != amplitudes.size()) throw std::invalid_argument("need one phase per amplitude");
  for (Count a : amplitudes) {
    if (a < 0) throw std::invalid_argument("amplitudes must be >= 0");
  }
}

XInt euler_potential(const EulerSolitonParams& params, int k, Time t, BoxIndex n) {
  params.validate();
  return potential_row(params, k, t, n, n).front();
}

EulerState EulerSolitonSlice::state(const CapacityProfile& profile) const {
  EulerState s{time, first, counts, profile};
  trim_trailing(s);
  return s;
}

EulerSolitonSlice euler_nsoliton(const EulerSolitonParams& params, BoxIndex first, BoxIndex last, Time t) {
  params.validate();
  if (last <= first) throw std::invalid_argument("empty box range");
  const auto f0_now = potential_row(params, 0, t, first, last);
  const auto f1_now = potential_row(params, 1, t, first, last);
  const auto f0_next = potential_row(params, 0, t + 1, first, last);
  const auto f1_next = potential_row(params, 1, t + 1, first, last);

  EulerSolitonSlice s;
  s.time = t;
  s.first = first;
  for (std::size_t i = 0; i + 1 < f0_now.size(); ++i) {
    s.counts.push_back((f0_next[i + 1] - f0_next[i] + f1_next[i] - f1_next[i + 1]).value());
    s.limited.push_back((f0_now[i] - f0_now[i + 1] + f0_next[i + 1] - f0_next[i]).value());
    s.loads.push_back((f0_now[i] - f0_next[i] + f1_next[i] - f1_now[i]).value());
  }
  return s;
}

Count EulerSolutionReport::max_residual() const noexcept {
  return std::max({limited_residual, carrier_residual, recovery_residual});
}

EulerSolutionReport verify_euler_solution(const EulerSolitonParams& params, BoxIndex first, BoxIndex last,
                                          Time t_first, Time t_last) {
  EulerSolutionReport r;
  const auto width = static_cast<std::size_t>(last - first);

  auto check_range = [&](const EulerSolitonSlice& s) {
    for (std::size_t i = 0; i < width; ++i) {
      const Count u = s.counts[i];
      if (u < 0 || u > params.profile.capacity(first + static_cast<BoxIndex>(i))) ++r.range_violations;
    }
    r.edge_mass += std::abs(s.counts.front()) + std::abs(s.counts.back());
  };

  EulerSolitonSlice cur = euler_nsoliton(params, first, last, t_first);
  check_range(cur);
  for (Time t = t_first; t < t_last; ++t) {
    const EulerSolitonSlice next = euler_nsoliton(params, first, last, t + 1);
    check_range(next);
    r.edge_mass += std::abs(next.loads.front());
    const XInt m = params.schedule.at(t + 1);

    for (std::size_t i = 0; i < width; ++i) {
      const BoxIndex n = first + static_cast<BoxIndex>(i);
      const Count room = params.profile.capacity(n) - cur.counts[i];
      raise(r.limited_residual, mismatch(next.limited[i], std::min(room, next.loads[i])));
      if (i > 0) {
        const XInt rhs = tmin(XInt(next.loads[i - 1] + cur.counts[i - 1]), m) - next.limited[i - 1];
        raise(r.carrier_residual, mismatch(next.loads[i], rhs));
      }
      if (i + 1 < width) {
        raise(r.recovery_residual, mismatch(next.counts[i], cur.counts[i] + next.loads[i] - next.loads[i + 1]));
      }
    }

    if (r.range_violations == 0) {
      const EulerStep step = euler_step(cur.state(params.profile), params.schedule);
      if (!same_counts(step.state, next.state(params.profile))) ++r.evolution_mismatches;
    }
    cur = next;
  }
  return r;
}

std::pair<BoxIndex, BoxIndex> euler_solution_window(const EulerSolitonParams& params, Time t_first, Time t_last) {
  params.validate();
  BoxIndex half = 32;
  for (int round = 0; round < 12; ++round, half *= 2) {
    bool clear = true;
    Count first_mass = -1;
    for (Time t = t_first; t <= t_last && clear; ++t) {
      const EulerSolitonSlice s = euler_nsoliton(params, -half, half, t);
      Count mass = 0;
      for (Count u : s.counts) mass += std::abs(u);
      if (first_mass < 0) first_mass = mass;
      clear = mass > 0 && mass == first_mass && s.counts.front() == 0 && s.counts.back() == 0 && s.loads.front() == 0;
    }
    if (clear) return {-half, half};
  }
  throw std::invalid_argument("could not find a box range holding the solution");
}

EulerSolutionReport verify_euler_solution(const EulerSolitonParams& params, Time t_first, Time t_last) {
  const auto [first, last] = euler_solution_window(params, t_first, t_last);
  return verify_euler_solution(params, first, last, t_first, t_last);
}

// --- tau functions -------------------------------------------------------------

void TauParams::validate() const {
  check_soliton_count(amplitudes.size());
  if (weights.size() != amplitudes.size()) throw std::invalid_argument("need one weight per amplitude");
  if (capacity < 1) throw std::invalid_argument("box capacity must be >= 1");
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (amplitudes[i] < 0) throw std::invalid_argument("amplitudes must be >= 0");
    if (i > 0 && amplitudes[i] < amplitudes[i - 1]) throw std::invalid_argument("amplitudes must be nondecreasing");
  }
}

namespace {

// Shared body of T and Tbar: `odd` selects the -P_{r_i} term and the extra time
// factor of T.
XInt tau_potential(const TauParams& p, int k, Time t, std::int64_t n, bool odd) {
  p.validate();
  const auto size = static_cast<std::int64_t>(p.solitons());
  if (n == -1 || n == size + 1) return XInt::inf();
  if (n < -1 || n > size + 1) throw std::out_of_range("tau index out of range");
  if (n == 0) return 0;

  const Time horizon = odd ? t + 1 : t;
  std::vector<XInt> base(p.solitons());
  for (std::size_t i = 0; i < p.solitons(); ++i) {
    const Count amp = p.amplitudes[i];
    const XInt time = signed_sum(horizon, [&](std::int64_t j) { return tmin(XInt(amp), p.schedule.at(j)); });
    base[i] = XInt(p.weights[i]) + time -
              XInt(checked_mul(checked_add(2 * (n - 1), checked_add(t, k)), std::min(amp, p.capacity)));
  }

  // Enumerate r_0 < ... < r_{n-1}.
  std::vector<std::int64_t> r(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = i;
  XInt best = XInt::inf();
  while (true) {
    XInt v = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(r[static_cast<std::size_t>(i)]);
      const std::int64_t coeff = 2 * (n - 1 - i) - (odd ? 1 : 0);
      v += base[idx] + XInt(checked_mul(coeff, p.amplitudes[idx]));
    }
    best = tmin(best, v);

    std::int64_t i = n - 1;
    while (i >= 0 && r[static_cast<std::size_t>(i)] == size - n + i) --i;
    if (i < 0) break;
    ++r[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < n; ++j) r[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

}  // namespace

XInt tau_T(const TauParams& params, int k, Time t, std::int64_t n) { return tau_potential(params, k, t, n, true); }

XInt tau_T_bar(const TauParams& params, int k, Time t, std::int64_t n) {
  return tau_potential(params, k, t, n, false);
}

TauTodaState tau_toda_state(const TauParams& params, Time t) {
  params.validate();
  const auto size = static_cast<std::int64_t>(params.solitons());
  // Row of a potential over n = -1 .. N+1, indexed by n + 1.
  auto row = [&](bool odd, int k, Time time) {
    std::vector<XInt> v;
    for (std::int64_t n = -1; n <= size + 1; ++n) v.push_back(odd ? tau_T(params, k, time, n) : tau_T_bar(params, k, time, n));
    return v;
  };
  const auto t0 = row(true, 0, t);
  const auto t1 = row(true, 1, t);
  const auto t1_prev = row(true, 1, t - 1);
  const auto b0 = row(false, 0, t);
  const auto b0_next = row(false, 0, t + 1);
  const auto b1 = row(false, 1, t);
  const auto b1_next = row(false, 1, t + 1);
  auto at = [](const std::vector<XInt>& v, std::int64_t n) { return v[static_cast<std::size_t>(n + 1)]; };
  const XInt twice_cap = 2 * params.capacity;

  TauTodaState s;
  s.time = t;
  for (std::int64_t n = 0; n < size; ++n) {
    s.sizes.push_back((at(b0_next, n + 1) - at(b0_next, n) + at(t1, n) - at(t1, n + 1)).value());
    s.limited_sizes.push_back((at(b0_next, n + 1) - at(b0_next, n) + at(b1, n) - at(b1, n + 1)).value());
    s.exit_loads.push_back((at(t0, n + 1) - at(b0_next, n) + at(b1, n) - at(t1_prev, n + 1)).value());
  }
  for (std::int64_t n = 1; n < size; ++n) {
    s.gaps.push_back((at(t0, n + 1) - at(t0, n) + at(b1_next, n - 1) - at(b1_next, n) + twice_cap).value());
    s.limited_gaps.push_back((at(b0, n + 1) - at(b0, n) + at(b1_next, n - 1) - at(b1_next, n) + twice_cap).value());
  }
  for (std::int64_t n = 0; n <= size; ++n) {
    s.entry_loads.push_back((at(b0, n) - at(b0_next, n) + at(t1, n) - at(t1_prev, n) + params.capacity).value());
  }
  return s;
}

Count TauReport::max_residual() const noexcept {
  return std::max({limited_size_residual, limited_gap_residual, entry_load_residual, exit_load_residual,
                   size_residual, gap_residual});
}

TauReport verify_tau_solution(const TauParams& params, Time t_first, Time t_last) {
  params.validate();
  TauReport r;
  const std::size_t count = params.solitons();
  const XInt cap = params.capacity;

  auto track_positivity = [&](const TauTodaState& s) {
    for (Count q : s.sizes) r.min_size = std::min(r.min_size, q);
    for (Count e : s.gaps) r.min_gap = std::min(r.min_gap, e);
  };

  TauTodaState cur = tau_toda_state(params, t_first);
  track_positivity(cur);
  for (Time t = t_first; t < t_last; ++t) {
    const TauTodaState next = tau_toda_state(params, t + 1);
    track_positivity(next);
    const XInt m = params.schedule.at(t + 1);
    if (cap > m) ++r.capacity_violations;

    auto gap = [&](std::size_t n) -> XInt { return n == 0 || n == count ? XInt::inf() : XInt(cur.gaps[n - 1]); };
    const auto& qbar = next.limited_sizes;
    const auto& dbar = next.exit_loads;
    const auto& cbar = next.entry_loads;

    for (std::size_t n = 0; n < count; ++n) {
      raise(r.limited_size_residual, mismatch(qbar[n], tmin(gap(n + 1) - pos(cap - dbar[n]), dbar[n])));
      raise(r.exit_load_residual, mismatch(dbar[n], tmin(XInt(cbar[n]) + cur.sizes[n] - cap, m)));
      raise(r.size_residual, mismatch(next.sizes[n], XInt(cur.sizes[n]) + cbar[n] - cbar[n + 1]));
    }
    raise(r.entry_load_residual, mismatch(cbar[0], cap));
    for (std::size_t n = 1; n <= count; ++n) {
      raise(r.entry_load_residual, mismatch(cbar[n], tmin(XInt(dbar[n - 1]) - qbar[n - 1] + cap, m)));
    }
    for (std::size_t n = 1; n < count; ++n) {
      const XInt ebar = gap(n) - qbar[n - 1] + cur.sizes[n] - pos(cap - dbar[n - 1]) + pos(cap - dbar[n]);
      raise(r.limited_gap_residual, mismatch(next.limited_gaps[n - 1], ebar));
      const XInt e = XInt(next.limited_gaps[n - 1]) + qbar[n - 1] - cur.sizes[n] - dbar[n - 1] + dbar[n];
      raise(r.gap_residual, mismatch(next.gaps[n - 1], e));
    }

    try {
      const TodaState state{t, cur.sizes, cur.gaps, 0, CapacityProfile::uniform(params.capacity)};
      const TodaStep step = enutoda_step(state, params.schedule);
      const auto& tr = step.trace;
      const bool same = step.state.sizes == next.sizes && step.state.gaps == next.gaps &&
                        tr.limited_sizes == next.limited_sizes && tr.limited_gaps == next.limited_gaps &&
                        tr.exit_loads == next.exit_loads &&
                        std::equal(cbar.begin(), cbar.end() - 1, tr.entry_loads.begin());
      if (!same) ++r.evolution_mismatches;
    } catch (const std::exception& e) {
      ++r.evolution_mismatches;
      r.notes.push_back("t=" + std::to_string(t) + ": " + e.what());
    }
    cur = next;
  }
  return r;
}

}  // namespace bbs
