#include <cstdlib>

#include "bbs/harness.hpp"
#include "harness_detail.hpp"

namespace bbs {

using io::ConfigError;
using io::Fields;
using io::Json;

std::string to_string(Representation r) {
  switch (r) {
    case Representation::Euler: return "euler";
    case Representation::Toda: return "toda";
    case Representation::Both: return "both";
  }
  return "?";
}

std::string to_string(Render r) {
  switch (r) {
    case Render::Ascii: return "ascii";
    case Render::Json: return "json";
    case Render::None: return "none";
  }
  return "?";
}

namespace {

std::string string_field(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

Representation representation_from(const Json& j, const std::string& path) {
  const auto s = string_field(j, path);
  if (s == "euler") return Representation::Euler;
  if (s == "toda") return Representation::Toda;
  if (s == "both") return Representation::Both;
  throw ConfigError(path + ": expected \"euler\", \"toda\" or \"both\", got \"" + s + "\"");
}

Render render_from(const Json& j, const std::string& path) {
  const auto s = string_field(j, path);
  if (s == "ascii") return Render::Ascii;
  if (s == "json") return Render::Json;
  if (s == "none") return Render::None;
  throw ConfigError(path + ": expected \"ascii\", \"json\" or \"none\", got \"" + s + "\"");
}

// An initial-state literal may carry its own profile or schedule; the top level
// may not repeat them.
void take_embedded(Fields& f, std::optional<CapacityProfile>& profile, std::optional<CarrierSchedule>* schedule) {
  if (const Json* p = f.optional("profile")) {
    if (profile) throw ConfigError(f.path("profile") + ": profile given twice");
    profile = io::profile_from_json(*p, f.path("profile"));
  }
  if (schedule == nullptr) return;
  if (const Json* s = f.optional("schedule")) {
    if (*schedule) throw ConfigError(f.path("schedule") + ": schedule given twice");
    *schedule = io::schedule_from_json(*s, f.path("schedule"));
  }
}

Time optional_time(Fields& f, const std::string& key) {
  const Json* t = f.optional(key);
  return t == nullptr ? 0 : io::int_from_json(*t, f.path(key));
}

}  // namespace

RunConfig config_from_json(const Json& j) {
  Fields top(j, "");
  RunConfig c;
  c.representation = representation_from(top.required("representation"), "representation");
  c.steps = io::int_from_json(top.required("steps"), "steps");
  if (const Json* r = top.optional("render")) c.render = render_from(*r, "render");
  if (const Json* s = top.optional("seed")) {
    const auto v = io::int_from_json(*s, "seed");
    if (v < 0) throw ConfigError("seed: must be >= 0");
    c.seed = static_cast<std::uint64_t>(v);
  }

  std::optional<CapacityProfile> profile;
  std::optional<CarrierSchedule> schedule;
  if (const Json* p = top.optional("profile")) profile = io::profile_from_json(*p, "profile");
  if (const Json* s = top.optional("schedule")) schedule = io::schedule_from_json(*s, "schedule");

  Fields init(top.required("initial"), "initial");
  int sources = 0;
  for (const char* key : {"euler", "toda", "solution", "random"}) sources += init.has(key) ? 1 : 0;
  if (sources != 1) {
    throw ConfigError("initial: give exactly one of \"euler\", \"toda\", \"solution\" or \"random\"");
  }

  if (const Json* e = init.optional("euler")) {
    Fields f(*e, "initial.euler");
    EulerLiteral lit;
    lit.time = optional_time(f, "time");
    if (const Json* w = f.optional("window_start")) lit.window_start = io::int_from_json(*w, f.path("window_start"));
    lit.counts = io::ints_from_json(f.required("counts"), f.path("counts"));
    take_embedded(f, profile, &schedule);
    f.finish();
    c.initial = lit;
  } else if (const Json* t = init.optional("toda")) {
    Fields f(*t, "initial.toda");
    TodaLiteral lit;
    lit.time = optional_time(f, "time");
    lit.sizes = io::ints_from_json(f.required("Q"), f.path("Q"));
    if (const Json* g = f.optional("E")) lit.gaps = io::ints_from_json(*g, f.path("E"));
    if (const Json* n = f.optional("N")) {
      if (io::int_from_json(*n, f.path("N")) != static_cast<std::int64_t>(lit.sizes.size())) {
        throw ConfigError(f.path("N") + ": does not match the length of Q");
      }
    }
    if (const Json* x = f.optional("X0")) lit.anchor = io::int_from_json(*x, f.path("X0"));
    take_embedded(f, profile, nullptr);
    f.finish();
    c.initial = lit;
  } else if (const Json* s = init.optional("solution")) {
    Fields f(*s, "initial.solution");
    SolutionSource src;
    src.amplitudes = io::ints_from_json(f.required("P"), f.path("P"));
    src.phases = io::ints_from_json(f.required("Xi"), f.path("Xi"));
    src.time = optional_time(f, "t");
    f.finish();
    c.initial = src;
  } else if (const Json* r = init.optional("random")) {
    Fields f(*r, "initial.random");
    RandomSource src;
    if (const Json* b = f.optional("boxes")) src.boxes = io::int_from_json(*b, f.path("boxes"));
    f.finish();
    c.initial = src;
  }
  init.finish();
  top.finish();

  c.profile = profile.value_or(CapacityProfile::uniform(1));
  c.schedule = schedule.value_or(CarrierSchedule::constant(XInt::inf()));
  c.validate();
  return c;
}

void RunConfig::validate() const {
  if (steps < 1) throw ConfigError("steps: must be >= 1, got " + std::to_string(steps));
  if (const auto* r = std::get_if<RandomSource>(&initial); r != nullptr && (r->boxes < 1 || r->boxes > 4096)) {
    throw ConfigError("initial.random.boxes: must be in [1, 4096]");
  }
  if (const auto* s = std::get_if<SolutionSource>(&initial)) {
    EulerSolitonParams params{s->amplitudes, s->phases, profile, schedule};
    try {
      params.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("initial.solution: ") + e.what());
    }
  }
  EulerState start;
  try {
    start = initial_euler_state(*this);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("initial: ") + e.what());
  }
  if (representation != Representation::Euler && start.empty()) {
    throw ConfigError("initial: the Toda representation needs at least one ball");
  }
}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  const Json j = io::parse_text(text, source);
  try {
    return config_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

RunConfig parse_config(const std::filesystem::path& path) {
  const Json j = io::parse_file(path.string());
  try {
    return config_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

EulerState initial_euler_state(const RunConfig& config) {
  struct Visitor {
    const RunConfig& c;
    EulerState operator()(const EulerLiteral& lit) const {
      EulerState s{lit.time, lit.window_start, lit.counts, c.profile};
      s.validate();
      return s;
    }
    EulerState operator()(const TodaLiteral& lit) const {
      TodaState t{lit.time, lit.sizes, lit.gaps, lit.anchor, c.profile};
      t.validate();
      return to_euler_state(t);
    }
    EulerState operator()(const SolutionSource& src) const {
      EulerSolitonParams params{src.amplitudes, src.phases, c.profile, c.schedule};
      const auto [first, last] = euler_solution_window(params, src.time, src.time);
      EulerState s = euler_nsoliton(params, first, last, src.time).state(c.profile);
      s.validate();
      return s;
    }
    EulerState operator()(const RandomSource& src) const {
      detail::Rng rng(c.seed.value_or(0));
      return detail::random_state(rng, c.profile, 0, src.boxes);
    }
  };
  return std::visit(Visitor{config}, config.initial);
}

TodaState initial_toda_state(const RunConfig& config) {
  if (const auto* lit = std::get_if<TodaLiteral>(&config.initial)) {
    TodaState t{lit->time, lit->sizes, lit->gaps, lit->anchor, config.profile};
    t.validate();
    return t;
  }
  const EulerState s = initial_euler_state(config);
  return to_toda_state(extract_blocks(expand(s)), config.profile, s.time);
}

}  // namespace bbs
