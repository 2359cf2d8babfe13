#pragma once

#include "swipe/forest/forest.hpp"

#include <compare>
#include <map>
#include <utility>
#include <vector>

namespace swipe::layout {

enum class PairSource { Temporal, Loop };

/// Ordered frame pair, j < k. The associated motion estimate is the
/// displacement of frame k relative to frame j.
struct FramePair {
  int j = 0;
  int k = 0;
  PairSource source = PairSource::Temporal;

  std::pair<int, int> key() const { return {j, k}; }
};

/// Deduplicated pairs kept sorted by (j, k).
class PairSet {
 public:
  /// Adds (min, max) of the two indices; returns false if already present or
  /// if a == b.
  bool add(int a, int b, PairSource source);
  bool contains(int a, int b) const;

  const std::vector<FramePair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  std::size_t count(PairSource source) const;

 private:
  std::vector<FramePair> pairs_;
};

/// Every (j, k) with 0 < k - j <= window, tagged temporal.
PairSet select_pairs(int frame_count, int window);

using EstimateMap = std::map<std::pair<int, int>, forest::MotionEstimate>;

}  // namespace swipe::layout
