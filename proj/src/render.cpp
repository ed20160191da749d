#include "bbs/harness.hpp"

namespace bbs {

namespace {

void put_count(std::string& out, Count u) {
  if (u == 0) {
    out += '.';
  } else if (u >= 0 && u < 10) {
    out += static_cast<char>('0' + u);
  } else {
    out += '[' + std::to_string(u) + ']';
  }
}

}  // namespace

std::string render_ascii(const EulerState& state) {
  return render_ascii(state, state.window_start, state.window_end());
}

std::string render_ascii(const EulerState& state, BoxIndex first, BoxIndex last) {
  std::string out;
  for (BoxIndex n = first; n < last; ++n) put_count(out, state.at(n));
  return out;
}

std::string render_ascii(const BinarySeq& seq) {
  std::string out;
  for (SegmentIndex j = seq.segment_start; j < seq.segment_end(); ++j) {
    if (j > seq.segment_start && seq.geometry.start(seq.geometry.box_of(j)) == j) out += '|';
    out += static_cast<char>('0' + seq.at(j));
  }
  return out;
}

}  // namespace bbs
