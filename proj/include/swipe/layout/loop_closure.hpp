#pragma once

#include "swipe/forest/forest.hpp"
#include "swipe/image.hpp"
#include "swipe/layout/solver.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace swipe::layout {

struct LoopOptions {
  /// Spatial neighbors examined per frame.
  int neighbors = 5;
  /// Minimum temporal separation; pairs need |t_j - t_k| > min_separation.
  double min_separation = 25.0;
  /// Rounds of detect, estimate and re-solve.
  int iterations = 1;
  int threads = 0;
};

/// Loop candidates: for each frame, those of its `neighbors` nearest frames in
/// layout space whose timestamps differ by more than min_separation. Pairs
/// already in solution.pairs are skipped. Returned pairs are tagged loop.
PairSet find_loop_points(const LayoutSolution& solution, std::span<const double> timestamps,
                         const LoopOptions& options = {});

/// Motion estimate for the ordered pair (j, k), j < k.
using PairEstimator = std::function<forest::MotionEstimate(int j, int k)>;

/// Solves the temporal layout, then repeatedly adds loop pairs estimated by
/// `estimate` and re-solves. The output pair set contains the input pairs.
LayoutSolution close_loops(int frame_count, std::span<const double> timestamps, const EstimateMap& temporal,
                           const PairEstimator& estimate, const LoopOptions& options = {});

/// Same, estimating loop pairs with the translation forest. `estimates`
/// receives every estimate used (temporal and loop) when non-null.
LayoutSolution close_loops(std::span<const Frame> frames, const EstimateMap& temporal,
                           const forest::Forest& forest, const LoopOptions& options = {},
                           EstimateMap* estimates = nullptr);

/// Centered overlap crops of a and b for a camera shift of `shift_px` pixels
/// from a to b, so the crop centers show the same scene point. Throws
/// InsufficientOverlapError when the overlap is below 25% of the frame area.
std::pair<Frame, Frame> crop_for_rotation(const Frame& a, const Frame& b, Eigen::Vector2d shift_px);

/// Layout offsets are in image-width units.
inline Eigen::Vector2d layout_to_pixels(const Eigen::Vector2d& offset, int width) { return offset * width; }

}  // namespace swipe::layout
