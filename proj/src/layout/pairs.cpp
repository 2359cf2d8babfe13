#include "swipe/layout/pairs.hpp"

#include "swipe/errors.hpp"

#include <algorithm>

namespace swipe::layout {
namespace {

auto find_slot(std::vector<FramePair>& pairs, int j, int k) {
  return std::lower_bound(pairs.begin(), pairs.end(), std::pair{j, k},
                          [](const FramePair& p, const std::pair<int, int>& key) { return p.key() < key; });
}

}  // namespace

bool PairSet::add(int a, int b, PairSource source) {
  if (a == b) return false;
  const int j = std::min(a, b);
  const int k = std::max(a, b);
  const auto it = find_slot(pairs_, j, k);
  if (it != pairs_.end() && it->j == j && it->k == k) return false;
  pairs_.insert(it, FramePair{j, k, source});
  return true;
}

bool PairSet::contains(int a, int b) const {
  const std::pair key{std::min(a, b), std::max(a, b)};
  return std::binary_search(pairs_.begin(), pairs_.end(), key, [](const auto& l, const auto& r) {
    if constexpr (std::is_same_v<std::decay_t<decltype(l)>, FramePair>) {
      return l.key() < r;
    } else {
      return l < r.key();
    }
  });
}

std::size_t PairSet::count(PairSource source) const {
  return static_cast<std::size_t>(
      std::count_if(pairs_.begin(), pairs_.end(), [&](const FramePair& p) { return p.source == source; }));
}

PairSet select_pairs(int frame_count, int window) {
  if (frame_count < 2) throw ArgumentError("need at least two frames");
  if (window < 1) throw ArgumentError("pair window must be >= 1");
  PairSet set;
  for (int j = 0; j < frame_count; ++j) {
    for (int k = j + 1; k <= std::min(frame_count - 1, j + window); ++k) set.add(j, k, PairSource::Temporal);
  }
  return set;
}

}  // namespace swipe::layout
