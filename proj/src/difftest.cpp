#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "bbs/harness.hpp"
#include "harness_detail.hpp"

namespace bbs {

using detail::Rng;
using detail::uniform;

std::string to_string(DiffMode mode) {
  switch (mode) {
    case DiffMode::Carrier: return "carrier";
    case DiffMode::Unit: return "unit";
    case DiffMode::Full: return "full";
    case DiffMode::Chain: return "chain";
  }
  return "?";
}

DiffMode diff_mode_from_string(const std::string& name) {
  for (DiffMode m : {DiffMode::Carrier, DiffMode::Unit, DiffMode::Full, DiffMode::Chain}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown difftest mode \"" + name + "\" (carrier, unit, full, chain)");
}

void DiffBounds::validate() const {
  if (max_window < 1) throw std::invalid_argument("max window must be >= 1");
  if (max_capacity < 1) throw std::invalid_argument("max capacity must be >= 1");
  if (carrier_span < 0) throw std::invalid_argument("carrier span must be >= 0");
  if (max_carrier < 1) throw std::invalid_argument("max carrier capacity must be >= 1");
  if (max_solitons < 0) throw std::invalid_argument("max solitons must be >= 0");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
}

DiffCounters& DiffCounters::operator+=(const DiffCounters& o) {
  euler_steps += o.euler_steps;
  oracle_steps += o.oracle_steps;
  toda_steps += o.toda_steps;
  umkdv_checks += o.umkdv_checks;
  conservation_checks += o.conservation_checks;
  positivity_checks += o.positivity_checks;
  reduction_checks += o.reduction_checks;
  return *this;
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 of seed + index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct CaseResult {
  DiffCounters counters;
  std::optional<DiffFailure> failure;
};

/// Signals the first failing quantity of a case.
struct Mismatch {
  std::string quantity;
  std::string detail;
};

std::string join(const std::vector<Count>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string describe(const EulerState& s) { return "window_start=" + std::to_string(s.window_start) + " counts=" + join(s.counts); }

CapacityProfile random_profile(Rng& rng, const DiffBounds& b, BoxIndex start, Count boxes) {
  if (uniform(rng, 0, 3) == 0) {
    std::vector<Count> pattern(static_cast<std::size_t>(uniform(rng, 1, 4)));
    for (auto& c : pattern) c = uniform(rng, 1, b.max_capacity);
    return CapacityProfile::repeating(start + uniform(rng, 0, 3), pattern);
  }
  std::vector<Count> caps(static_cast<std::size_t>(boxes));
  for (auto& c : caps) c = uniform(rng, 1, b.max_capacity);
  return {start, caps, uniform(rng, 1, b.max_capacity)};
}

std::size_t soliton_count(const EulerState& s) { return extract_blocks(expand(s)).solitons(); }

EulerState draw_state(Rng& rng, const DiffBounds& b, const CapacityProfile* fixed_profile) {
  while (true) {
    const Count boxes = uniform(rng, 1, b.max_window);
    const BoxIndex start = uniform(rng, -8, 8);
    const CapacityProfile profile = fixed_profile ? *fixed_profile : random_profile(rng, b, start, boxes);
    EulerState s = detail::random_state(rng, profile, start, boxes);
    if (b.max_solitons == 0 || soliton_count(s) <= static_cast<std::size_t>(b.max_solitons)) return s;
  }
}

CarrierSchedule draw_schedule(Rng& rng, const DiffBounds& b, Count lo, Count hi) {
  std::map<Time, XInt> entries;
  for (Time t = 1; t <= b.steps; ++t) {
    entries[t] = uniform(rng, 0, 5) == 0 ? XInt::inf() : XInt(uniform(rng, lo, hi));
  }
  return {entries, XInt::inf()};
}

void expect(bool cond, const char* quantity, const std::string& detail) {
  if (!cond) throw Mismatch{quantity, detail};
}

/// The Euler side of every step: euler_step, the ball-by-ball oracle, the
/// u-mKdV form and conservation. Returns the next state.
EulerState check_euler_step(const EulerState& s, const CarrierSchedule& schedule, DiffCounters& c, bool unbounded) {
  const XInt m = schedule.at(s.time + 1);
  const EulerStep step = euler_step(s, schedule);
  ++c.euler_steps;

  const EulerState oracle = carrier_oracle_step(s, schedule);
  ++c.oracle_steps;
  expect(same_counts(step.state, oracle), "counts(euler vs oracle)",
         "euler " + describe(step.state) + ", oracle " + describe(oracle));

  if (unbounded) {
    const EulerState free = nukdv_step(s);
    expect(same_counts(step.state, free), "counts(euler vs nukdv)",
           "euler " + describe(step.state) + ", nukdv " + describe(free));
  }

  ++c.conservation_checks;
  expect(step.state.total() == s.total(), "conservation(euler)",
         std::to_string(s.total()) + " -> " + std::to_string(step.state.total()));

  const auto& tr = step.trace;
  for (std::size_t i = 0; i < tr.loads.size(); ++i) {
    const BoxIndex n = tr.window_start + static_cast<BoxIndex>(i);
    expect(tr.loads[i] >= 0 && XInt(tr.loads[i]) <= m, "trace(load)", "box " + std::to_string(n));
    expect(tr.limited[i] >= 0 && tr.limited[i] <= s.profile.capacity(n), "trace(limited)", "box " + std::to_string(n));
  }

  const UmkdvResidual r = umkdv_residual(s, step.state, step.trace, m);
  ++c.umkdv_checks;
  expect(r.ok(), "umkdv_residual",
         "max " + std::to_string(r.max_violation) + ", carrier " + std::to_string(r.carrier_violation) + " at box " +
             std::to_string(r.worst_box));
  return step.state;
}

void check_toda_positivity(const TodaState& before, const TodaState& after, DiffCounters& c) {
  ++c.conservation_checks;
  expect(after.total() == before.total(), "conservation(toda)",
         std::to_string(before.total()) + " -> " + std::to_string(after.total()));
  ++c.positivity_checks;
  const bool positive = std::all_of(after.sizes.begin(), after.sizes.end(), [](Count q) { return q >= 1; }) &&
                        std::all_of(after.gaps.begin(), after.gaps.end(), [](Count e) { return e >= 1; });
  expect(positive, "positivity(toda)", "Q=" + join(after.sizes) + " E=" + join(after.gaps));
}

io::Json euler_toda_states(const EulerState& e, const CarrierSchedule& schedule, const std::optional<TodaState>& t) {
  io::Json j;
  j["euler"] = io::to_json(e, schedule);
  if (t) j["toda"] = io::to_json(*t);
  return j;
}

CaseResult run_euler_case(Rng& rng, const DiffBounds& b, std::size_t index, std::uint64_t seed) {
  CaseResult out;
  EulerState s;
  CarrierSchedule schedule;
  bool with_toda = true;
  bool unbounded = false;

  switch (b.mode) {
    case DiffMode::Carrier: {
      s = draw_state(rng, b, nullptr);
      schedule = draw_schedule(rng, b, 1, b.max_carrier);
      with_toda = false;
      break;
    }
    case DiffMode::Unit: {
      const auto unit = CapacityProfile::uniform(1);
      s = draw_state(rng, b, &unit);
      schedule = CarrierSchedule::constant(XInt::inf());
      unbounded = true;
      break;
    }
    default: {
      s = draw_state(rng, b, nullptr);
      const Count top = s.profile.max_capacity();
      schedule = draw_schedule(rng, b, top, top + b.carrier_span);
      break;
    }
  }

  std::optional<TodaState> toda;
  Count step = 0;
  try {
    if (with_toda) toda = to_toda_state(extract_blocks(expand(s)), s.profile, s.time);
    for (; step < b.steps; ++step) {
      const EulerState next = check_euler_step(s, schedule, out.counters, unbounded);
      if (toda) {
        const TodaState after = b.mode == DiffMode::Unit ? utoda_state_step(*toda) : enutoda_step(*toda, schedule).state;
        ++out.counters.toda_steps;
        check_toda_positivity(*toda, after, out.counters);
        const EulerState rebuilt = to_euler_state(after);
        expect(same_counts(next, rebuilt), "counts(euler vs toda)",
               "euler " + describe(next) + ", toda " + describe(rebuilt));
        toda = after;
      }
      s = next;
    }
  } catch (const Mismatch& m) {
    out.failure = DiffFailure{index, seed, step, m.quantity, m.detail, euler_toda_states(s, schedule, toda)};
  } catch (const CapacityViolation& e) {
    out.failure = DiffFailure{index, seed, step, "CapacityViolation", e.what(), euler_toda_states(s, schedule, toda)};
  } catch (const Degenerate& e) {
    out.failure = DiffFailure{index, seed, step, "Degenerate", e.what(), euler_toda_states(s, schedule, toda)};
  } catch (const std::exception& e) {
    out.failure = DiffFailure{index, seed, step, "exception", e.what(), euler_toda_states(s, schedule, toda)};
  }
  return out;
}

/// Any sizes and gaps are reachable when every box holds one ball.
TodaState draw_toda(Rng& rng, const DiffBounds& b) {
  const Count limit = b.max_solitons == 0 ? 5 : b.max_solitons;
  TodaState t;
  t.sizes.resize(static_cast<std::size_t>(uniform(rng, 1, limit)));
  for (auto& q : t.sizes) q = uniform(rng, 1, 8);
  t.gaps.resize(t.sizes.size() - 1);
  for (auto& e : t.gaps) e = uniform(rng, 1, 8);
  t.anchor = uniform(rng, -10, 10);
  t.profile = CapacityProfile::uniform(1);
  return t;
}

bool same_toda(const TodaState& a, const TodaState& b) {
  return a.sizes == b.sizes && a.gaps == b.gaps && a.anchor == b.anchor && a.time == b.time;
}

std::string describe(const TodaState& t) {
  return "Q=" + join(t.sizes) + " E=" + join(t.gaps) + " X0=" + std::to_string(t.anchor);
}

CaseResult run_chain_case(Rng& rng, const DiffBounds& b, std::size_t index, std::uint64_t seed) {
  CaseResult out;
  // Under a variable profile only expansions of box states are reachable.
  const EulerState start = draw_state(rng, b, nullptr);
  TodaState general = to_toda_state(extract_blocks(expand(start)), start.profile, start.time);
  TodaState unit = draw_toda(rng, b);
  const auto unbounded = CarrierSchedule::constant(XInt::inf());
  Count step = 0;
  try {
    for (; step < b.steps; ++step) {
      const TodaState enu = enutoda_step(general, unbounded).state;
      const TodaState ex = extoda_step(general).state;
      ++out.counters.toda_steps;
      ++out.counters.reduction_checks;
      expect(same_toda(enu, ex), "enutoda(M=inf) vs extoda", "enutoda " + describe(enu) + ", extoda " + describe(ex));
      check_toda_positivity(general, ex, out.counters);
      general = ex;

      const TodaState u_ex = extoda_step(unit).state;
      const TodaState u_dqd = utoda_state_step(unit);
      const UTodaStep u_sum = utoda_step_sumform(unit.sizes, unit.gaps);
      const TodaCoordinates u_lag = from_lagrange(lagrange_step(to_lagrange(unit.anchor, unit.sizes, unit.gaps)));
      out.counters.toda_steps += 3;
      out.counters.reduction_checks += 3;
      expect(same_toda(u_ex, u_dqd), "extoda(Delta=1) vs utoda", "extoda " + describe(u_ex) + ", utoda " + describe(u_dqd));
      expect(u_sum.sizes == u_dqd.sizes && u_sum.gaps == u_dqd.gaps, "utoda vs utoda_sumform",
             "sumform Q=" + join(u_sum.sizes) + " E=" + join(u_sum.gaps));
      expect(u_lag.sizes == u_dqd.sizes && u_lag.gaps == u_dqd.gaps && u_lag.anchor == u_dqd.anchor,
             "utoda vs lagrange", "lagrange Q=" + join(u_lag.sizes) + " E=" + join(u_lag.gaps));
      check_toda_positivity(unit, u_dqd, out.counters);
      unit = u_dqd;
    }
  } catch (const Mismatch& m) {
    out.failure = DiffFailure{index, seed, step, m.quantity, m.detail, {{"toda", io::to_json(general)}, {"unit", io::to_json(unit)}}};
  } catch (const std::exception& e) {
    out.failure = DiffFailure{index, seed, step, "exception", e.what(), {{"toda", io::to_json(general)}, {"unit", io::to_json(unit)}}};
  }
  return out;
}

CaseResult run_case(std::size_t index, std::uint64_t seed, const DiffBounds& b) {
  const std::uint64_t s = case_seed(seed, index);
  Rng rng(s);
  return b.mode == DiffMode::Chain ? run_chain_case(rng, b, index, s) : run_euler_case(rng, b, index, s);
}

}  // namespace

DiffReport difftest(std::size_t cases, std::uint64_t seed, const DiffBounds& bounds, unsigned jobs) {
  bounds.validate();
  const auto started = std::chrono::steady_clock::now();
  std::vector<CaseResult> results(cases);

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(cases, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < cases; ++i) results[i] = run_case(i, seed, bounds);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cases; i = next++) results[i] = run_case(i, seed, bounds);
      });
    }
    for (auto& th : pool) th.join();
  }

  DiffReport report;
  report.bounds = bounds;
  report.seed = seed;
  report.cases = cases;
  for (auto& r : results) {
    report.counters += r.counters;
    if (r.failure) report.failures.push_back(std::move(*r.failure));
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

io::Json to_json(const DiffReport& report) {
  io::Json j;
  j["mode"] = to_string(report.bounds.mode);
  j["seed"] = report.seed;
  j["cases"] = report.cases;
  j["bounds"] = {{"steps", report.bounds.steps},
                 {"max_window", report.bounds.max_window},
                 {"max_capacity", report.bounds.max_capacity},
                 {"carrier_span", report.bounds.carrier_span},
                 {"max_carrier", report.bounds.max_carrier},
                 {"max_solitons", report.bounds.max_solitons}};
  const auto& c = report.counters;
  j["checks"] = {{"euler_steps", c.euler_steps},
                 {"oracle_steps", c.oracle_steps},
                 {"toda_steps", c.toda_steps},
                 {"umkdv", c.umkdv_checks},
                 {"conservation", c.conservation_checks},
                 {"positivity", c.positivity_checks},
                 {"reductions", c.reduction_checks}};
  j["failure_count"] = report.failures.size();
  io::Json failures = io::Json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"case", f.case_index},
                        {"case_seed", f.case_seed},
                        {"step", f.step},
                        {"quantity", f.quantity},
                        {"detail", f.detail},
                        {"states", f.states}});
  }
  j["failures"] = failures;
  return j;
}

}  // namespace bbs
