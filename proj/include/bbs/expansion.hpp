#pragma once

// The expansion map: every box n of capacity Delta_n becomes Delta_n binary
// segments starting at s_n (s_0 = 0, s_{n+1} = s_n + Delta_n). Balls in a box
// are packed against the left edge when the preceding segment is occupied and
// against the right edge otherwise, so runs of 1s line up across boxes and
// define soliton sizes even while solitons interact.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bbs/euler.hpp"
#include "bbs/profile.hpp"

namespace bbs {

class EmptySequence : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cumulative segment boundaries of a capacity profile, valid on all of Z.
class SegmentGeometry {
 public:
  SegmentGeometry() : SegmentGeometry(CapacityProfile{}) {}
  explicit SegmentGeometry(CapacityProfile profile);

  /// First segment of box n.
  SegmentIndex start(BoxIndex n) const;
  /// The box n with start(n) <= segment < start(n + 1).
  BoxIndex box_of(SegmentIndex segment) const;
  Count capacity(BoxIndex n) const { return profile_.capacity(n); }

  const CapacityProfile& profile() const noexcept { return profile_; }

 private:
  // Signed cumulative capacity from window_start, i.e. start(n) + offset_.
  std::int64_t cumulative(BoxIndex n) const;

  CapacityProfile profile_;
  std::vector<std::int64_t> prefix_;  // prefix_[i] = sum of the first i listed capacities
  std::int64_t offset_ = 0;           // cumulative(0)
};

BoxIndex segment_to_box(const SegmentGeometry& geometry, SegmentIndex segment);

struct BinarySeq {
  SegmentIndex segment_start = 0;
  std::vector<std::uint8_t> bits;
  SegmentGeometry geometry;

  SegmentIndex segment_end() const noexcept { return segment_start + static_cast<SegmentIndex>(bits.size()); }
  int at(SegmentIndex j) const noexcept;
};

BinarySeq expand(const EulerState& state);

/// Capacities of the boxes holding the first segment of every soliton (head)
/// and of every empty block after a soliton (gap; the last one is the
/// semi-infinite block behind the final soliton).
struct BlockCapacities {
  std::vector<Count> head;  // K_0 .. K_{N-1}
  std::vector<Count> gap;   // Lambda_1 .. Lambda_N, gap[i] is Lambda_{i+1}
};

/// Soliton sizes, interior gap sizes and the first segment of soliton 0.
struct BlockDecomposition {
  std::vector<Count> sizes;  // Q_0 .. Q_{N-1}
  std::vector<Count> gaps;   // E_1 .. E_{N-1}, gaps[i] is E_{i+1}
  SegmentIndex anchor = 0;   // X_0
  BlockCapacities capacities;

  std::size_t solitons() const noexcept { return sizes.size(); }
};

BlockDecomposition extract_blocks(const BinarySeq& seq);

BlockCapacities block_capacities(const SegmentGeometry& geometry, SegmentIndex anchor,
                                 std::span<const Count> sizes, std::span<const Count> gaps);

/// Lays the runs out on the segment line and counts the 1s in every box.
EulerState positions_to_state(SegmentIndex anchor, std::span<const Count> sizes, std::span<const Count> gaps,
                              const CapacityProfile& profile, Time time = 0);
EulerState positions_to_state(const BlockDecomposition& blocks, const CapacityProfile& profile, Time time = 0);

}  // namespace bbs
