#pragma once

// JSON encoding of states, traces, reports and parameter files.
//
// Infinite values are the strings "inf" / "-inf"; finite values are integers.
// Readers are strict: unknown keys and non-integer numbers are rejected with
// the dotted path of the offending field.

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "bbs/euler.hpp"
#include "bbs/profile.hpp"
#include "bbs/solutions.hpp"
#include "bbs/toda.hpp"
#include "bbs/tropical.hpp"

namespace bbs::io {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field access for one JSON object that remembers which keys were read.
class Fields {
 public:
  Fields(const Json& object, std::string path);

  const Json& required(const std::string& key);
  const Json* optional(const std::string& key);
  bool has(const std::string& key) const { return object_.contains(key); }
  std::string path(const std::string& key) const;
  /// Throws ConfigError naming the first key that was never read.
  void finish() const;

 private:
  const Json& object_;
  std::string path_;
  std::vector<std::string> seen_;
};

std::int64_t int_from_json(const Json& j, const std::string& path);
std::vector<std::int64_t> ints_from_json(const Json& j, const std::string& path);

Json to_json(XInt x);
XInt xint_from_json(const Json& j, const std::string& path);

Json to_json(const CapacityProfile& profile);
CapacityProfile profile_from_json(const Json& j, const std::string& path);

Json to_json(const CarrierSchedule& schedule);
CarrierSchedule schedule_from_json(const Json& j, const std::string& path);

/// {time, window_start, counts}
Json state_record(const EulerState& state);
/// {time, window_start, counts, profile, schedule}
Json to_json(const EulerState& state, const CarrierSchedule& schedule);
/// {time, N, Q, E, X0}
Json state_record(const TodaState& state);
/// state_record plus the profile.
Json to_json(const TodaState& state);

Json to_json(const EulerStepTrace& trace);
Json to_json(const TodaStepTrace& trace);
Json to_json(const UmkdvResidual& residual);
Json to_json(const EulerSolutionReport& report);
Json to_json(const TauReport& report);
Json to_json(const TauTodaState& state);

/// {N?, P, Xi, profile, schedule}
EulerSolitonParams euler_params_from_json(const Json& j, const std::string& path);
/// {N?, P, W, Delta, schedule}
TauParams tau_params_from_json(const Json& j, const std::string& path);

/// Parses text, reporting syntax errors with line and column.
Json parse_text(const std::string& text, const std::string& source);
Json parse_file(const std::string& path);

}  // namespace bbs::io
