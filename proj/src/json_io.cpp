#include "bbs/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace bbs::io {

Fields::Fields(const Json& object, std::string path) : object_(object), path_(std::move(path)) {
  if (!object_.is_object()) throw ConfigError(path_ + ": expected a JSON object");
}

std::string Fields::path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

const Json& Fields::required(const std::string& key) {
  const Json* j = optional(key);
  if (j == nullptr) throw ConfigError(path(key) + ": missing required field");
  return *j;
}

const Json* Fields::optional(const std::string& key) {
  auto it = object_.find(key);
  if (it == object_.end()) return nullptr;
  seen_.push_back(key);
  return &*it;
}

void Fields::finish() const {
  for (const auto& item : object_.items()) {
    if (std::find(seen_.begin(), seen_.end(), item.key()) == seen_.end()) {
      throw ConfigError(path(item.key()) + ": unknown key \"" + item.key() + "\"");
    }
  }
}

std::int64_t int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX)) throw ConfigError(path + ": integer out of range");
    return static_cast<std::int64_t>(v);
  }
  if (j.is_number_integer()) return j.get<std::int64_t>();
  throw ConfigError(path + ": expected an integer, got " + std::string(j.type_name()));
}

std::vector<std::int64_t> ints_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Json to_json(XInt x) {
  if (x.finite()) return x.value();
  return x.is_pos_inf() ? "inf" : "-inf";
}

XInt xint_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (text == "inf" || text == "+inf") return XInt::inf();
    if (text == "-inf") return XInt::neg_inf();
    throw ConfigError(path + ": expected an integer, \"inf\" or \"-inf\", got \"" + text + "\"");
  }
  return int_from_json(j, path);
}

namespace {

template <class F>
auto guarded(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Json ints(const std::vector<Count>& v) { return Json(v); }

}  // namespace

Json to_json(const CapacityProfile& profile) {
  Json j;
  j["window_start"] = profile.window_start();
  j["capacities"] = ints(profile.capacities());
  j["default"] = profile.default_capacity();
  if (profile.periodic()) j["periodic"] = true;
  return j;
}

CapacityProfile profile_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  BoxIndex start = 0;
  if (const Json* s = f.optional("window_start")) start = int_from_json(*s, f.path("window_start"));
  std::vector<Count> caps;
  if (const Json* c = f.optional("capacities")) caps = ints_from_json(*c, f.path("capacities"));
  Count fallback = 1;
  if (const Json* d = f.optional("default")) fallback = int_from_json(*d, f.path("default"));
  bool periodic = false;
  if (const Json* p = f.optional("periodic")) {
    if (!p->is_boolean()) throw ConfigError(f.path("periodic") + ": expected true or false");
    periodic = p->get<bool>();
  }
  f.finish();
  return guarded(path, [&] { return CapacityProfile(start, caps, fallback, periodic); });
}

Json to_json(const CarrierSchedule& schedule) {
  Json j;
  Json entries = Json::object();
  for (const auto& [t, m] : schedule.entries()) entries[std::to_string(t)] = to_json(m);
  j["entries"] = entries;
  j["default"] = to_json(schedule.fallback());
  j["past"] = to_json(schedule.past());
  return j;
}

CarrierSchedule schedule_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  std::map<Time, XInt> entries;
  if (const Json* e = f.optional("entries")) {
    Fields ef(*e, f.path("entries"));
    for (const auto& item : e->items()) {
      const std::string& key = item.key();
      Time t = 0;
      const auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), t);
      if (ec != std::errc() || end != key.data() + key.size()) {
        throw ConfigError(ef.path(key) + ": schedule keys must be integer times");
      }
      entries[t] = xint_from_json(*ef.optional(key), ef.path(key));
    }
  }
  XInt fallback = XInt::inf();
  if (const Json* d = f.optional("default")) fallback = xint_from_json(*d, f.path("default"));
  XInt past = XInt::inf();
  if (const Json* p = f.optional("past")) past = xint_from_json(*p, f.path("past"));
  f.finish();
  return guarded(path, [&] { return CarrierSchedule(entries, fallback, past); });
}

Json state_record(const EulerState& state) {
  Json j;
  j["time"] = state.time;
  j["window_start"] = state.window_start;
  j["counts"] = ints(state.counts);
  return j;
}

Json to_json(const EulerState& state, const CarrierSchedule& schedule) {
  Json j = state_record(state);
  j["profile"] = to_json(state.profile);
  j["schedule"] = to_json(schedule);
  return j;
}

Json state_record(const TodaState& state) {
  Json j;
  j["time"] = state.time;
  j["N"] = state.solitons();
  j["Q"] = ints(state.sizes);
  j["E"] = ints(state.gaps);
  j["X0"] = state.anchor;
  return j;
}

Json to_json(const TodaState& state) {
  Json j = state_record(state);
  j["profile"] = to_json(state.profile);
  return j;
}

Json to_json(const EulerStepTrace& trace) {
  Json j;
  j["carrier_capacity"] = to_json(trace.carrier_capacity);
  j["window_start"] = trace.window_start;
  j["limited"] = ints(trace.limited);
  j["loads"] = ints(trace.loads);
  j["removed"] = ints(trace.removed);
  j["recovered"] = ints(trace.recovered);
  return j;
}

Json to_json(const TodaStepTrace& trace) {
  Json j;
  j["carrier_capacity"] = to_json(trace.carrier_capacity);
  j["limited_sizes"] = ints(trace.limited_sizes);
  j["limited_gaps"] = ints(trace.limited_gaps);
  j["entry_loads"] = ints(trace.entry_loads);
  j["exit_loads"] = ints(trace.exit_loads);
  j["limited_X0"] = trace.limited_anchor;
  j["K"] = ints(trace.capacities.head);
  j["Lambda"] = ints(trace.capacities.gap);
  return j;
}

Json to_json(const UmkdvResidual& residual) {
  Json j;
  j["max_violation"] = residual.max_violation;
  j["carrier_violation"] = residual.carrier_violation;
  j["worst_box"] = residual.worst_box;
  return j;
}

Json to_json(const EulerSolutionReport& report) {
  Json j;
  j["ok"] = report.ok();
  j["residuals"] = {{"limited", report.limited_residual},
                    {"carrier", report.carrier_residual},
                    {"recovery", report.recovery_residual}};
  j["max_residual"] = report.max_residual();
  j["range_violations"] = report.range_violations;
  j["evolution_mismatches"] = report.evolution_mismatches;
  j["edge_mass"] = report.edge_mass;
  return j;
}

Json to_json(const TauReport& report) {
  Json j;
  j["ok"] = report.ok();
  j["residuals"] = {{"limited_sizes", report.limited_size_residual},
                    {"limited_gaps", report.limited_gap_residual},
                    {"entry_loads", report.entry_load_residual},
                    {"exit_loads", report.exit_load_residual},
                    {"sizes", report.size_residual},
                    {"gaps", report.gap_residual}};
  j["max_residual"] = report.max_residual();
  j["capacity_violations"] = report.capacity_violations;
  j["min_size"] = report.min_size == INT64_MAX ? Json(nullptr) : Json(report.min_size);
  j["min_gap"] = report.min_gap == INT64_MAX ? Json(nullptr) : Json(report.min_gap);
  j["evolution_mismatches"] = report.evolution_mismatches;
  j["notes"] = report.notes;
  return j;
}

Json to_json(const TauTodaState& state) {
  Json j;
  j["time"] = state.time;
  j["Q"] = ints(state.sizes);
  j["E"] = ints(state.gaps);
  j["Qbar"] = ints(state.limited_sizes);
  j["Ebar"] = ints(state.limited_gaps);
  j["Cbar"] = ints(state.entry_loads);
  j["Dbar"] = ints(state.exit_loads);
  return j;
}

namespace {

std::vector<Count> amplitudes_with_count(Fields& f) {
  auto amps = ints_from_json(f.required("P"), f.path("P"));
  if (const Json* n = f.optional("N")) {
    if (int_from_json(*n, f.path("N")) != static_cast<std::int64_t>(amps.size())) {
      throw ConfigError(f.path("N") + ": does not match the length of P");
    }
  }
  return amps;
}

}  // namespace

EulerSolitonParams euler_params_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  EulerSolitonParams p;
  p.amplitudes = amplitudes_with_count(f);
  p.phases = ints_from_json(f.required("Xi"), f.path("Xi"));
  p.profile = profile_from_json(f.required("profile"), f.path("profile"));
  if (const Json* s = f.optional("schedule")) p.schedule = schedule_from_json(*s, f.path("schedule"));
  f.finish();
  guarded(path, [&] { p.validate(); return 0; });
  return p;
}

TauParams tau_params_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  TauParams p;
  p.amplitudes = amplitudes_with_count(f);
  p.weights = ints_from_json(f.required("W"), f.path("W"));
  p.capacity = int_from_json(f.required("Delta"), f.path("Delta"));
  if (const Json* s = f.optional("schedule")) p.schedule = schedule_from_json(*s, f.path("schedule"));
  f.finish();
  guarded(path, [&] { p.validate(); return 0; });
  return p;
}

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

}  // namespace bbs::io
