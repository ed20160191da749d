#pragma once

// Euler representation: the number of balls in every box.
//
// One time step t -> t+1 with carrier capacity M = M_{t+1} is the composition
// of a size-limit pass and a recovery pass:
//
//   limited_n  = min(Delta_n - U_n, load_n)
//   load_{n+1} = min(load_n + U_n, M) - limited_n
//   U'_n       = U_n + load_n - load_{n+1}
//
// where load_n is the number of balls the carrier holds on arriving at box n.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bbs/profile.hpp"
#include "bbs/tropical.hpp"

namespace bbs {

class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The carrier was still loaded past the extended window (internal guard).
class WindowOverflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct EulerState {
  Time time = 0;
  BoxIndex window_start = 0;
  std::vector<Count> counts;
  CapacityProfile profile;

  BoxIndex window_end() const noexcept { return window_start + static_cast<BoxIndex>(counts.size()); }
  /// Ball count of box n; zero outside the window.
  Count at(BoxIndex n) const noexcept;
  Count total() const noexcept;
  bool empty() const noexcept { return total() == 0; }
  /// Throws InvalidState unless 0 <= U_n <= Delta_n everywhere.
  void validate() const;
};

/// True when both states hold the same number of balls in every box.
bool same_counts(const EulerState& a, const EulerState& b) noexcept;

/// First box where the counts differ, or nothing.
std::optional<BoxIndex> first_difference(const EulerState& a, const EulerState& b);

/// Drops trailing empty boxes.
void trim_trailing(EulerState& state);

struct EulerStepTrace {
  BoxIndex window_start = 0;
  XInt carrier_capacity;
  std::vector<Count> limited;    // box contents after the size-limit pass
  std::vector<Count> loads;      // carrier load arriving at each box
  std::vector<Count> removed;    // balls dropped at each box by the size limit
  std::vector<Count> recovered;  // balls put back into each box afterwards

  Count load_at(BoxIndex n) const noexcept;
};

struct EulerStep {
  EulerState state;
  EulerStepTrace trace;
};

EulerStep euler_step(const EulerState& state, const CarrierSchedule& schedule);

/// Moves balls one at a time with an explicit carrier; shares no code with
/// euler_step.
EulerState carrier_oracle_step(const EulerState& state, const CarrierSchedule& schedule);

/// Unbounded carrier: U'_n = min(Delta_n - U_n, sum_{j<n} (U_j - U'_j)).
EulerState nukdv_step(const EulerState& state);

struct UmkdvResidual {
  Count max_violation = 0;       // |U'_n - rhs_n| over all boxes
  Count carrier_violation = 0;   // |load_n - sum_{j<n}(U_j - U'_j)|
  BoxIndex worst_box = 0;

  bool ok() const noexcept { return max_violation == 0 && carrier_violation == 0; }
};

/// Checks a computed step against the closed single-equation form
/// U'_n = min(Delta_n - U_n, S_n) + max(0, sum_{j<=n} U_j - sum_{j<n} U'_j - M)
/// with S_n = sum_{j<n} (U_j - U'_j), plus the identity load_n = S_n.
UmkdvResidual umkdv_residual(const EulerState& before, const EulerState& after,
                             const EulerStepTrace& trace, XInt carrier_capacity);

}  // namespace bbs
