#include "swipe/layout/loop_closure.hpp"

#include "swipe/errors.hpp"
#include "swipe/features/extract.hpp"
#include "swipe/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace swipe::layout {

PairSet find_loop_points(const LayoutSolution& solution, std::span<const double> timestamps,
                         const LoopOptions& options) {
  const int n = solution.frame_count();
  if (static_cast<int>(timestamps.size()) != n) throw ArgumentError("one timestamp per frame required");
  if (options.neighbors < 1) throw ArgumentError("neighbors must be >= 1");
  PairSet loops;
  std::vector<int> order;
  std::vector<double> dist(static_cast<std::size_t>(n));
  const int k = std::min(options.neighbors, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < n; ++m) dist[m] = (solution.positions.row(m) - solution.positions.row(i)).squaredNorm();
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::erase(order, i);
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int a, int b) { return dist[a] != dist[b] ? dist[a] < dist[b] : a < b; });
    for (int r = 0; r < k; ++r) {
      const int m = order[r];
      if (std::abs(timestamps[m] - timestamps[i]) <= options.min_separation) continue;
      if (solution.pairs.contains(i, m)) continue;
      loops.add(i, m, PairSource::Loop);
    }
  }
  return loops;
}

LayoutSolution close_loops(int frame_count, std::span<const double> timestamps, const EstimateMap& temporal,
                           const PairEstimator& estimate, const LoopOptions& options) {
  if (options.iterations < 0) throw ArgumentError("iterations must be >= 0");
  EstimateMap all = temporal;
  LayoutSolution solution = solve_layout(frame_count, all);
  for (int round = 0; round < options.iterations; ++round) {
    const PairSet loops = find_loop_points(solution, timestamps, options);
    if (loops.empty()) break;
    std::vector<forest::MotionEstimate> found(loops.size());
    parallel_for(loops.size(), options.threads, [&](std::size_t i) {
      const FramePair& p = loops.pairs()[i];
      found[i] = estimate(p.j, p.k);
    });
    PairSet pairs = solution.pairs;
    for (std::size_t i = 0; i < loops.size(); ++i) {
      const FramePair& p = loops.pairs()[i];
      all.emplace(p.key(), std::move(found[i]));
      pairs.add(p.j, p.k, PairSource::Loop);
    }
    solution = solve_layout(frame_count, all, std::move(pairs));
  }
  return solution;
}

LayoutSolution close_loops(std::span<const Frame> frames, const EstimateMap& temporal,
                           const forest::Forest& forest, const LoopOptions& options, EstimateMap* estimates) {
  std::vector<double> timestamps;
  timestamps.reserve(frames.size());
  for (const Frame& f : frames) timestamps.push_back(f.timestamp);
  const int frame_count = static_cast<int>(frames.size());
  std::mutex mutex;
  EstimateMap loops;
  auto estimator = [&](int j, int k) {
    forest::MotionEstimate est = forest::predict(forest, features::extract_features(frames[j], frames[k]));
    std::lock_guard lock(mutex);
    loops.insert_or_assign({j, k}, est);
    return est;
  };
  LayoutSolution solution = close_loops(frame_count, timestamps, temporal, estimator, options);
  if (estimates != nullptr) {
    *estimates = temporal;
    estimates->merge(loops);
  }
  return solution;
}

std::pair<Frame, Frame> crop_for_rotation(const Frame& a, const Frame& b, Eigen::Vector2d shift_px) {
  if (a.width() != b.width() || a.height() != b.height()) throw ArgumentError("frames differ in size");
  if (!shift_px.allFinite()) throw ArgumentError("non-finite shift");
  const int w = a.width();
  const int h = a.height();
  const long dx = std::lround(shift_px.x());
  const long dy = std::lround(shift_px.y());
  const long ow = w - std::abs(dx);
  const long oh = h - std::abs(dy);
  if (ow <= 0 || oh <= 0 || 4 * ow * oh < static_cast<long>(w) * h) {
    throw InsufficientOverlapError("frames " + std::to_string(a.index) + " and " + std::to_string(b.index) +
                                   " overlap by less than a quarter of the frame");
  }
  // Scene point at a(x + dx) appears at b(x).
  const Rect ra{static_cast<int>(std::max(0L, dx)), static_cast<int>(std::max(0L, dy)),
                static_cast<int>(std::max(0L, dx) + ow), static_cast<int>(std::max(0L, dy) + oh)};
  const Rect rb{static_cast<int>(std::max(0L, -dx)), static_cast<int>(std::max(0L, -dy)),
                static_cast<int>(std::max(0L, -dx) + ow), static_cast<int>(std::max(0L, -dy) + oh)};
  Frame ca{Image(window(a.pixels, ra)), a.index, a.timestamp};
  Frame cb{Image(window(b.pixels, rb)), b.index, b.timestamp};
  return {std::move(ca), std::move(cb)};
}

}  // namespace swipe::layout
