#pragma once

// Finite Toda and Lagrange representations of the box-ball system.
//
// A state is N soliton sizes Q_0..Q_{N-1}, the N-1 interior gaps E_1..E_{N-1}
// (E_0 = E_N = +inf) and the first segment X_0 of soliton 0 on the expanded
// segment line. Four evolutions are provided, each a special case of the next:
//
//   utoda   box capacity 1, unbounded carrier (dqd form and the summed form)
//   lagrange  the same dynamics on start positions X_n, Y_n
//   extoda  variable box capacity, unbounded carrier
//   enutoda variable box capacity and carrier capacity M_{t+1}

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bbs/euler.hpp"
#include "bbs/expansion.hpp"
#include "bbs/profile.hpp"
#include "bbs/tropical.hpp"

namespace bbs {

class CapacityViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A soliton or gap dropped below size 1.
class Degenerate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InconsistentPositions : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TodaState {
  Time time = 0;
  std::vector<Count> sizes;  // Q_n
  std::vector<Count> gaps;   // E_{n+1} at index n
  SegmentIndex anchor = 0;   // X_0
  CapacityProfile profile;

  std::size_t solitons() const noexcept { return sizes.size(); }
  Count total() const noexcept;
  void validate() const;

  bool operator==(const TodaState&) const = default;
};

TodaState to_toda_state(const BlockDecomposition& blocks, const CapacityProfile& profile, Time time);
EulerState to_euler_state(const TodaState& state);

// --- box capacity 1 ---------------------------------------------------------

struct UTodaStep {
  std::vector<Count> sizes;
  std::vector<Count> gaps;
  std::vector<Count> carrier;  // D_n: carrier load after taking soliton n
};

/// Q'_n = min(E_{n+1}, D_n), D_n = D_{n-1} - Q'_{n-1} + Q_n, D_0 = Q_0,
/// E'_n = E_n - Q'_{n-1} + Q_n.
UTodaStep utoda_step(std::span<const Count> sizes, std::span<const Count> gaps);

/// Q'_n = min(E_{n+1}, sum_{j<=n} Q_j - sum_{j<n} Q'_j).
UTodaStep utoda_step_sumform(std::span<const Count> sizes, std::span<const Count> gaps);

/// utoda_step on a full state; the anchor advances by Q_0.
TodaState utoda_state_step(const TodaState& state);

struct LagrangePositions {
  std::vector<SegmentIndex> soliton_starts;  // X_0 .. X_{N-1}
  std::vector<SegmentIndex> gap_starts;      // Y_1 .. Y_N, gap_starts[i] is Y_{i+1}

  bool operator==(const LagrangePositions&) const = default;
};

LagrangePositions to_lagrange(SegmentIndex anchor, std::span<const Count> sizes, std::span<const Count> gaps);

struct TodaCoordinates {
  std::vector<Count> sizes;
  std::vector<Count> gaps;
  SegmentIndex anchor = 0;
};

/// Inverse of to_lagrange; throws InconsistentPositions on non-positive sizes or gaps.
TodaCoordinates from_lagrange(const LagrangePositions& positions);

/// X'_n = Y_{n+1}, Y'_n = Y_n + min(X_n - Y_n, sum_{j=1}^{n}(Y_j - X_{j-1}) - sum_{j=1}^{n-1}(Y'_j - X'_{j-1})),
/// with Y_0 = -inf and X_N = +inf.
LagrangePositions lagrange_step(const LagrangePositions& positions);

// --- variable box capacity ---------------------------------------------------

BlockCapacities capacities_for_state(const TodaState& state);

struct ExTodaTrace {
  std::vector<Count> carrier;  // D_n
  BlockCapacities capacities;
};

struct ExTodaStep {
  TodaState state;
  ExTodaTrace trace;
};

ExTodaStep extoda_step(const TodaState& state);

// --- variable box and carrier capacity ---------------------------------------

/// Intermediate quantities after the size-limit pass.
struct TodaStepTrace {
  std::vector<Count> limited_sizes;  // Qbar_n
  std::vector<Count> limited_gaps;   // Ebar_{n+1} at index n
  std::vector<Count> entry_loads;    // Cbar_0 .. Cbar_N: load after the first box of soliton n
  std::vector<Count> exit_loads;     // Dbar_0 .. Dbar_{N-1}: load after all of soliton n
  SegmentIndex limited_anchor = 0;   // Xbar_0
  BlockCapacities capacities;
  XInt carrier_capacity;
};

struct TodaStep {
  TodaState state;
  TodaStepTrace trace;
};

/// Inputs of one enutoda update with capacities already resolved.
struct EnuTodaInput {
  std::span<const Count> sizes;
  std::span<const Count> gaps;
  std::span<const Count> head_capacity;  // K_n
  std::span<const Count> gap_capacity;   // Lambda_{n+1} at index n
  XInt carrier_capacity;                 // M_{t+1}
  Count trailing_head_capacity = 0;      // K_N; cancels for any 0 <= K_N <= M
};

struct EnuTodaOutput {
  std::vector<Count> sizes;
  std::vector<Count> gaps;
  TodaStepTrace trace;
};

/// Evaluates Dbar_0, Qbar_0, Cbar_1, Dbar_1, ... left to right, then the
/// limited gaps and finally the recovery for Q' and E'. Anchors are not touched.
EnuTodaOutput enutoda_kernel(const EnuTodaInput& in);

/// Throws CapacityViolation when some K_n > M_{t+1} and Degenerate on a
/// non-positive output.
TodaStep enutoda_step(const TodaState& state, const CarrierSchedule& schedule,
                      Count trailing_head_capacity = 0);

}  // namespace bbs
