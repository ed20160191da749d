#include "bbs/profile.hpp"

#include <algorithm>
#include <string>

namespace bbs {

namespace {

void check_capacity(Count c) {
  if (c < 1) throw std::invalid_argument("box capacity must be >= 1, got " + std::to_string(c));
}

void check_carrier(XInt m) {
  if (m < XInt(0)) throw std::invalid_argument("carrier capacity must be >= 0 or inf, got " + m.to_string());
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  const std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace

CapacityProfile::CapacityProfile(BoxIndex window_start, std::vector<Count> capacities,
                                 Count default_capacity, bool periodic)
    : window_start_(window_start),
      capacities_(std::move(capacities)),
      default_capacity_(default_capacity),
      periodic_(periodic) {
  std::for_each(capacities_.begin(), capacities_.end(), check_capacity);
  check_capacity(default_capacity_);
  if (periodic_ && capacities_.empty()) throw std::invalid_argument("periodic profile needs a pattern");
}

Count CapacityProfile::capacity(BoxIndex n) const {
  const auto size = static_cast<std::int64_t>(capacities_.size());
  const std::int64_t offset = n - window_start_;
  if (periodic_) return capacities_[static_cast<std::size_t>(floor_mod(offset, size))];
  if (offset < 0 || offset >= size) return default_capacity_;
  return capacities_[static_cast<std::size_t>(offset)];
}

Count CapacityProfile::max_capacity() const {
  Count m = periodic_ ? 1 : default_capacity_;
  for (Count c : capacities_) m = std::max(m, c);
  return m;
}

CarrierSchedule::CarrierSchedule(std::map<Time, XInt> entries, XInt fallback, XInt past)
    : entries_(std::move(entries)), fallback_(fallback), past_(past) {
  for (const auto& [t, m] : entries_) check_carrier(m);
  check_carrier(fallback_);
  check_carrier(past_);
}

XInt CarrierSchedule::at(Time t) const {
  if (auto it = entries_.find(t); it != entries_.end()) return it->second;
  return t <= 0 ? past_ : fallback_;
}

}  // namespace bbs
