#pragma once

// Run configuration, simulation driver, ASCII rendering and the seeded
// differential test that drives every representation against the others.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bbs/euler.hpp"
#include "bbs/expansion.hpp"
#include "bbs/json_io.hpp"
#include "bbs/profile.hpp"
#include "bbs/solutions.hpp"
#include "bbs/toda.hpp"

namespace bbs {

// --- rendering ----------------------------------------------------------------

/// One character per box: the count, '.' for an empty box, "[12]" above 9.
std::string render_ascii(const EulerState& state);
/// Same, over the fixed box range [first, last).
std::string render_ascii(const EulerState& state, BoxIndex first, BoxIndex last);
/// Bits with '|' between boxes, e.g. "01|110".
std::string render_ascii(const BinarySeq& seq);

// --- configuration ---------------------------------------------------------------

enum class Representation { Euler, Toda, Both };
enum class Render { Ascii, Json, None };

/// Counts and window of an Euler state; the profile comes from the config.
struct EulerLiteral {
  Time time = 0;
  BoxIndex window_start = 0;
  std::vector<Count> counts;
};

struct TodaLiteral {
  Time time = 0;
  std::vector<Count> sizes;
  std::vector<Count> gaps;
  SegmentIndex anchor = 0;
};

/// A slice of the Euler N-soliton solution at time `time`.
struct SolutionSource {
  std::vector<Count> amplitudes;
  std::vector<Count> phases;
  Time time = 0;
};

/// A random state drawn from the seed: `boxes` boxes with U_n uniform in [0, Delta_n].
struct RandomSource {
  Count boxes = 16;
};

using InitialSource = std::variant<EulerLiteral, TodaLiteral, SolutionSource, RandomSource>;

struct RunConfig {
  Representation representation = Representation::Euler;
  Count steps = 1;
  InitialSource initial;
  CapacityProfile profile;
  CarrierSchedule schedule;
  Render render = Render::Json;
  std::optional<std::uint64_t> seed;

  /// Throws io::ConfigError on steps < 1 or an unusable initial state.
  void validate() const;
};

RunConfig config_from_json(const io::Json& j);
RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
RunConfig parse_config(const std::filesystem::path& path);

std::string to_string(Representation r);
std::string to_string(Render r);

/// The Euler state the configuration starts from.
EulerState initial_euler_state(const RunConfig& config);
/// The Toda state the configuration starts from (expansion of the Euler state
/// unless the initial source is already a Toda literal).
TodaState initial_toda_state(const RunConfig& config);

// --- simulation ------------------------------------------------------------------

struct SimulationResult {
  Count steps = 0;
  std::vector<bool> verdicts;  // both mode: Euler state == reconstructed Toda state, per step
  EulerState final_euler;
  std::optional<TodaState> final_toda;

  bool all_equal() const noexcept;
};

/// Writes one NDJSON record per step (render json), one rendered line per step
/// (render ascii) or nothing (render none) to `out`.
SimulationResult run_simulation(const RunConfig& config, std::ostream& out);

// --- differential testing ------------------------------------------------------

enum class DiffMode {
  Carrier,  // euler_step against the ball-by-ball carrier, any M in [1, max_carrier] or +inf
  Unit,     // Delta = 1, M = +inf: Euler, carrier and utoda through the expansion map
  Full,     // Delta_n in [1, max_capacity], M_t in [max Delta, max Delta + carrier_span] or +inf
  Chain,    // random Toda states through the enutoda / extoda / utoda / Lagrange reductions
};

std::string to_string(DiffMode mode);
DiffMode diff_mode_from_string(const std::string& name);

struct DiffBounds {
  DiffMode mode = DiffMode::Full;
  Count max_window = 32;
  Count max_capacity = 5;
  Count carrier_span = 5;
  Count max_carrier = 10;
  Count max_solitons = 0;  // 0: no limit; otherwise states with more solitons are redrawn
  Count steps = 20;

  void validate() const;
};

struct DiffFailure {
  std::size_t case_index = 0;
  std::uint64_t case_seed = 0;
  Count step = 0;
  std::string quantity;  // first differing quantity or the exception raised
  std::string detail;
  io::Json states;       // every representation's state before the failing step
};

struct DiffCounters {
  Count euler_steps = 0;
  Count oracle_steps = 0;
  Count toda_steps = 0;
  Count umkdv_checks = 0;
  Count conservation_checks = 0;
  Count positivity_checks = 0;
  Count reduction_checks = 0;

  DiffCounters& operator+=(const DiffCounters& o);
};

struct DiffReport {
  DiffBounds bounds;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  DiffCounters counters;
  std::vector<DiffFailure> failures;
  double elapsed_seconds = 0;  // not part of to_json

  bool ok() const noexcept { return failures.empty(); }
};

/// Seed of case `index`; cases are independent of each other and of the job count.
std::uint64_t case_seed(std::uint64_t seed, std::size_t index);

DiffReport difftest(std::size_t cases, std::uint64_t seed, const DiffBounds& bounds, unsigned jobs = 1);

/// Deterministic given the cases, seed and bounds.
io::Json to_json(const DiffReport& report);

}  // namespace bbs
