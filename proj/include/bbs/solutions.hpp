#pragma once

// Closed-form min-plus solutions and their residual checks.
//
// Both families are minima over index subsets and are evaluated by exhaustive
// enumeration, which caps the soliton count at kMaxSolitons.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bbs/euler.hpp"
#include "bbs/profile.hpp"
#include "bbs/toda.hpp"
#include "bbs/tropical.hpp"

namespace bbs {

inline constexpr std::size_t kMaxSolitons = 15;

/// sum_{j=0}^{upper-1} term(j) with the signed convention
/// sum_{j=0}^{upper-1} := -sum_{j=upper}^{-1} for upper < 0.
template <class Term>
XInt signed_sum(std::int64_t upper, Term term) {
  XInt s = 0;
  if (upper >= 0) {
    for (std::int64_t j = 0; j < upper; ++j) s += term(j);
  } else {
    for (std::int64_t j = upper; j < 0; ++j) s -= term(j);
  }
  return s;
}

// --- N-soliton solution of the Euler carrier system --------------------------

struct EulerSolitonParams {
  std::vector<Count> amplitudes;  // P_i >= 0
  std::vector<Count> phases;      // Xi_i
  CapacityProfile profile;
  CarrierSchedule schedule;

  std::size_t solitons() const noexcept { return amplitudes.size(); }
  void validate() const;
};

/// F^{k,t}_n = min(0, min_{J != {}} (sum_{i < j in J} W_ij + sum_{i in J} H^{k,t}_{i,n})),
/// W_ij = 2 min(P_i, P_j), each unordered pair once,
/// H^{0,t}_{i,n} = Xi_i - sum_{j<n} min(P_i, Delta_j) + sum_{j<t} min(P_i, M_j), H^1 = H^0 - P_i.
XInt euler_potential(const EulerSolitonParams& params, int k, Time t, BoxIndex n);

/// U, the size-limited contents and the carrier loads over boxes [first, last)
/// at time t (the barred fields are the ones of the step t-1 -> t).
struct EulerSolitonSlice {
  Time time = 0;
  BoxIndex first = 0;
  std::vector<Count> counts;
  std::vector<Count> limited;
  std::vector<Count> loads;

  EulerState state(const CapacityProfile& profile) const;
};

EulerSolitonSlice euler_nsoliton(const EulerSolitonParams& params, BoxIndex first, BoxIndex last, Time t);

struct EulerSolutionReport {
  Count limited_residual = 0;   // Ubar = min(Delta - U, Zbar)
  Count carrier_residual = 0;   // Zbar_n = min(Zbar_{n-1} + U_{n-1}, M) - Ubar_{n-1}
  Count recovery_residual = 0;  // U' = U + Zbar_n - Zbar_{n+1}
  Count range_violations = 0;   // boxes with U outside [0, Delta]
  Count evolution_mismatches = 0;  // slices where euler_step(slice t) != slice t+1
  Count edge_mass = 0;          // balls on the boundary boxes (window too small when > 0)

  Count max_residual() const noexcept;
  bool ok() const noexcept { return max_residual() == 0 && range_violations == 0 && evolution_mismatches == 0 && edge_mass == 0; }
};

EulerSolutionReport verify_euler_solution(const EulerSolitonParams& params, BoxIndex first, BoxIndex last,
                                          Time t_first, Time t_last);

/// A symmetric box range [-h, h) that keeps every slice of [t_first, t_last]
/// away from its edges, found by doubling h from 32.
std::pair<BoxIndex, BoxIndex> euler_solution_window(const EulerSolitonParams& params, Time t_first, Time t_last);
EulerSolutionReport verify_euler_solution(const EulerSolitonParams& params, Time t_first, Time t_last);

// --- particular solution of the fixed-capacity enutoda system ----------------

struct TauParams {
  std::vector<Count> amplitudes;  // P_0 <= P_1 <= ... <= P_{N-1}
  std::vector<Count> weights;     // W_i
  Count capacity = 1;             // Delta
  CarrierSchedule schedule;       // M_t, +inf for t <= 0 unless set

  std::size_t solitons() const noexcept { return amplitudes.size(); }
  void validate() const;
};

/// T^{k,t}_n for 0 <= n <= N (+inf for n = -1 and n = N + 1).
XInt tau_T(const TauParams& params, int k, Time t, std::int64_t n);
/// The barred potential Tbar^{k,t}_n.
XInt tau_T_bar(const TauParams& params, int k, Time t, std::int64_t n);

/// All Toda quantities at time t. The barred ones belong to the step t-1 -> t.
struct TauTodaState {
  Time time = 0;
  std::vector<Count> sizes;          // Q_n
  std::vector<Count> gaps;           // E_{n+1} at index n
  std::vector<Count> limited_sizes;  // Qbar_n
  std::vector<Count> limited_gaps;   // Ebar_{n+1} at index n
  std::vector<Count> entry_loads;    // Cbar_0 .. Cbar_N
  std::vector<Count> exit_loads;     // Dbar_0 .. Dbar_{N-1}
};

TauTodaState tau_toda_state(const TauParams& params, Time t);

struct TauReport {
  Count limited_size_residual = 0;  // Qbar
  Count limited_gap_residual = 0;   // Ebar
  Count entry_load_residual = 0;    // Cbar, including Cbar_0 = Delta and Cbar_N
  Count exit_load_residual = 0;     // Dbar
  Count size_residual = 0;          // Q
  Count gap_residual = 0;           // E
  Count capacity_violations = 0;    // times with Delta > M_{t+1}
  Count min_size = INT64_MAX;
  Count min_gap = INT64_MAX;
  Count evolution_mismatches = 0;   // steps where enutoda_step disagrees with the next slice
  std::vector<std::string> notes;

  Count max_residual() const noexcept;
  bool ok() const noexcept {
    return max_residual() == 0 && capacity_violations == 0 && evolution_mismatches == 0 && min_size >= 1 && min_gap >= 1;
  }
};

/// Checks every equation of the enutoda system with K = Lambda = Delta between
/// consecutive slices for t in [t_first, t_last), and compares each slice's
/// enutoda_step image with the next slice.
TauReport verify_tau_solution(const TauParams& params, Time t_first, Time t_last);

}  // namespace bbs
