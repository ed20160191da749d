#include <algorithm>
#include <ostream>

#include "bbs/harness.hpp"

namespace bbs {

bool SimulationResult::all_equal() const noexcept {
  return std::all_of(verdicts.begin(), verdicts.end(), [](bool v) { return v; });
}

SimulationResult run_simulation(const RunConfig& config, std::ostream& out) {
  config.validate();
  const bool use_euler = config.representation != Representation::Toda;
  const bool use_toda = config.representation != Representation::Euler;

  SimulationResult result;
  EulerState euler = initial_euler_state(config);
  std::optional<TodaState> toda;
  if (use_toda) toda = initial_toda_state(config);

  std::vector<EulerState> frames;  // ascii rendering waits for the common box range

  for (Count i = 0; i < config.steps; ++i) {
    io::Json record;
    std::optional<EulerStep> estep;
    std::optional<TodaStep> tstep;
    if (use_euler) {
      estep = euler_step(euler, config.schedule);
      euler = estep->state;
    }
    if (use_toda) {
      tstep = enutoda_step(*toda, config.schedule);
      toda = tstep->state;
    }
    const EulerState view = use_euler ? euler : to_euler_state(*toda);
    record["t"] = view.time;
    if (use_euler) {
      record["euler"] = io::state_record(euler);
      record["euler_trace"] = io::to_json(estep->trace);
    }
    if (use_toda) {
      record["toda"] = io::state_record(*toda);
      record["toda_trace"] = io::to_json(tstep->trace);
    }
    if (use_euler && use_toda) {
      const bool equal = same_counts(euler, to_euler_state(*toda));
      result.verdicts.push_back(equal);
      record["verdict"] = equal ? "equal" : "differ";
    }

    if (config.render == Render::Json) {
      out << record.dump() << '\n';
    } else if (config.render == Render::Ascii) {
      frames.push_back(view);
    }
    ++result.steps;
  }

  if (!frames.empty()) {
    // Common range from the first to the last occupied box of any frame.
    BoxIndex first = 0;
    BoxIndex last = 0;
    bool any = false;
    for (const auto& f : frames) {
      for (BoxIndex n = f.window_start; n < f.window_end(); ++n) {
        if (f.at(n) == 0) continue;
        first = any ? std::min(first, n) : n;
        last = any ? std::max(last, n + 1) : n + 1;
        any = true;
      }
    }
    for (const auto& f : frames) out << render_ascii(f, first, last) << '\n';
  }

  result.final_euler = euler;
  if (!use_euler) result.final_euler = to_euler_state(*toda);
  result.final_toda = toda;
  return result;
}

}  // namespace bbs
