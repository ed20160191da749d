#include "bbs/expansion.hpp"

#include <algorithm>
#include <string>

namespace bbs {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SegmentGeometry::SegmentGeometry(CapacityProfile profile) : profile_(std::move(profile)) {
  const auto& caps = profile_.capacities();
  prefix_.assign(caps.size() + 1, 0);
  for (std::size_t i = 0; i < caps.size(); ++i) prefix_[i + 1] = checked_add(prefix_[i], caps[i]);
  offset_ = cumulative(0);
}

std::int64_t SegmentGeometry::cumulative(BoxIndex n) const {
  const std::int64_t rel = n - profile_.window_start();
  const auto len = static_cast<std::int64_t>(prefix_.size()) - 1;
  if (profile_.periodic()) {
    const std::int64_t q = floor_div(rel, len);
    const std::int64_t r = rel - q * len;
    return checked_add(checked_mul(q, prefix_.back()), prefix_[static_cast<std::size_t>(r)]);
  }
  const std::int64_t d = profile_.default_capacity();
  if (rel < 0) return checked_mul(rel, d);
  if (rel <= len) return prefix_[static_cast<std::size_t>(rel)];
  return checked_add(prefix_.back(), checked_mul(rel - len, d));
}

SegmentIndex SegmentGeometry::start(BoxIndex n) const { return cumulative(n) - offset_; }

BoxIndex SegmentGeometry::box_of(SegmentIndex segment) const {
  const std::int64_t b = checked_add(segment, offset_);
  const auto len = static_cast<std::int64_t>(prefix_.size()) - 1;
  const BoxIndex w0 = profile_.window_start();

  // Index i in [0, len) with prefix_[i] <= r < prefix_[i + 1].
  auto locate = [&](std::int64_t r) {
    auto it = std::upper_bound(prefix_.begin(), prefix_.end(), r);
    return static_cast<std::int64_t>(it - prefix_.begin()) - 1;
  };

  if (profile_.periodic()) {
    const std::int64_t q = floor_div(b, prefix_.back());
    return w0 + q * len + locate(b - q * prefix_.back());
  }
  const std::int64_t d = profile_.default_capacity();
  if (b < 0) return w0 + floor_div(b, d);
  if (b >= prefix_.back()) return w0 + len + floor_div(b - prefix_.back(), d);
  return w0 + locate(b);
}

BoxIndex segment_to_box(const SegmentGeometry& geometry, SegmentIndex segment) { return geometry.box_of(segment); }

int BinarySeq::at(SegmentIndex j) const noexcept {
  if (j < segment_start || j >= segment_end()) return 0;
  return bits[static_cast<std::size_t>(j - segment_start)];
}

BinarySeq expand(const EulerState& state) {
  state.validate();
  BinarySeq seq{0, {}, SegmentGeometry(state.profile)};
  seq.segment_start = seq.geometry.start(state.window_start);

  // Everything left of the window is empty.
  std::uint8_t previous = 0;
  for (std::size_t i = 0; i < state.counts.size(); ++i) {
    const BoxIndex n = state.window_start + static_cast<BoxIndex>(i);
    const Count cap = state.profile.capacity(n);
    const Count u = state.counts[i];
    if (previous == 1) {
      seq.bits.insert(seq.bits.end(), static_cast<std::size_t>(u), 1);
      seq.bits.insert(seq.bits.end(), static_cast<std::size_t>(cap - u), 0);
    } else {
      seq.bits.insert(seq.bits.end(), static_cast<std::size_t>(cap - u), 0);
      seq.bits.insert(seq.bits.end(), static_cast<std::size_t>(u), 1);
    }
    previous = seq.bits.back();
  }
  return seq;
}

BlockCapacities block_capacities(const SegmentGeometry& geometry, SegmentIndex anchor,
                                 std::span<const Count> sizes, std::span<const Count> gaps) {
  BlockCapacities caps;
  SegmentIndex x = anchor;
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    caps.head.push_back(geometry.capacity(geometry.box_of(x)));
    const SegmentIndex y = x + sizes[n];
    caps.gap.push_back(geometry.capacity(geometry.box_of(y)));
    if (n < gaps.size()) x = y + gaps[n];
  }
  return caps;
}

BlockDecomposition extract_blocks(const BinarySeq& seq) {
  BlockDecomposition out;
  bool found = false;
  SegmentIndex run_start = 0;
  SegmentIndex last_end = 0;
  for (SegmentIndex j = seq.segment_start; j <= seq.segment_end(); ++j) {
    const int bit = seq.at(j);
    const int prev = seq.at(j - 1);
    if (bit == 1 && prev == 0) {
      if (!found) {
        out.anchor = j;
        found = true;
      } else {
        out.gaps.push_back(j - last_end);
      }
      run_start = j;
    } else if (bit == 0 && prev == 1) {
      out.sizes.push_back(j - run_start);
      last_end = j;
    }
  }
  if (!found) throw EmptySequence("binary sequence contains no occupied segment");
  out.capacities = block_capacities(seq.geometry, out.anchor, out.sizes, out.gaps);
  return out;
}

EulerState positions_to_state(SegmentIndex anchor, std::span<const Count> sizes, std::span<const Count> gaps,
                              const CapacityProfile& profile, Time time) {
  if (gaps.size() + 1 != sizes.size()) {
    throw std::invalid_argument("need exactly one interior gap between consecutive solitons");
  }
  const SegmentGeometry geometry(profile);
  EulerState state{time, geometry.box_of(anchor), {}, profile};

  SegmentIndex x = anchor;
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    if (sizes[n] < 1) throw InvalidState("soliton size must be >= 1");
    const SegmentIndex end = x + sizes[n];
    for (SegmentIndex j = x; j < end;) {
      const BoxIndex box = geometry.box_of(j);
      const SegmentIndex box_end = geometry.start(box + 1);
      const SegmentIndex upto = std::min(end, box_end);
      const auto i = static_cast<std::size_t>(box - state.window_start);
      if (state.counts.size() <= i) state.counts.resize(i + 1, 0);
      state.counts[i] += upto - j;
      j = upto;
    }
    if (n < gaps.size()) {
      if (gaps[n] < 1) throw InvalidState("gap size must be >= 1");
      x = end + gaps[n];
    }
  }
  return state;
}

EulerState positions_to_state(const BlockDecomposition& blocks, const CapacityProfile& profile, Time time) {
  return positions_to_state(blocks.anchor, blocks.sizes, blocks.gaps, profile, time);
}

}  // namespace bbs
