#pragma once

// Box capacities (Delta_n) and carrier capacities (M_t).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "bbs/tropical.hpp"

namespace bbs {

using BoxIndex = std::int64_t;
using SegmentIndex = std::int64_t;
using Time = std::int64_t;
using Count = std::int64_t;

/// Per-box capacities. Inside [window_start, window_start + size) the listed
/// capacities apply; outside either default_capacity applies or, for a
/// periodic profile, the listed capacities repeat in both directions.
class CapacityProfile {
 public:
  CapacityProfile() = default;
  CapacityProfile(BoxIndex window_start, std::vector<Count> capacities, Count default_capacity,
                  bool periodic = false);

  static CapacityProfile uniform(Count capacity) { return {0, {}, capacity}; }
  static CapacityProfile repeating(BoxIndex anchor, std::vector<Count> pattern) {
    return {anchor, std::move(pattern), 1, true};
  }

  Count capacity(BoxIndex n) const;
  Count max_capacity() const;

  BoxIndex window_start() const noexcept { return window_start_; }
  const std::vector<Count>& capacities() const noexcept { return capacities_; }
  Count default_capacity() const noexcept { return default_capacity_; }
  bool periodic() const noexcept { return periodic_; }

  bool operator==(const CapacityProfile&) const = default;

 private:
  BoxIndex window_start_ = 0;
  std::vector<Count> capacities_;
  Count default_capacity_ = 1;
  bool periodic_ = false;
};

/// Carrier capacity M_t per time. Unlisted times t > 0 take `fallback`, unlisted
/// t <= 0 take `past`. Both default to +inf.
class CarrierSchedule {
 public:
  CarrierSchedule() = default;
  CarrierSchedule(std::map<Time, XInt> entries, XInt fallback, XInt past = XInt::inf());

  static CarrierSchedule constant(XInt m) { return {{}, m, m}; }

  XInt at(Time t) const;

  const std::map<Time, XInt>& entries() const noexcept { return entries_; }
  XInt fallback() const noexcept { return fallback_; }
  XInt past() const noexcept { return past_; }

  bool operator==(const CarrierSchedule&) const = default;

 private:
  std::map<Time, XInt> entries_;
  XInt fallback_ = XInt::inf();
  XInt past_ = XInt::inf();
};

}  // namespace bbs
