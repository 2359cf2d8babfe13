#pragma once

#include "swipe/layout/pairs.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace swipe::layout {

/// Anchor rows are this factor heavier than the heaviest pair row.
inline constexpr double kAnchorWeight = 1e6;

struct LayoutSolution {
  /// One (x, y) row per frame, image-width units; row 0 is (0, 0).
  Eigen::MatrixX2d positions;
  /// Degrees per frame; empty unless rotational correction ran.
  Eigen::VectorXd rotations;
  PairSet pairs;

  int frame_count() const { return static_cast<int>(positions.rows()); }
};

/// Weighted residual e(x) = A x - b: one row per pair axis,
/// (x_k - x_j - mu) / sigma, plus two anchor rows pinning frame 0.
struct LayoutProblem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
};

LayoutProblem build_problem(int frame_count, const EstimateMap& estimates);

/// Sum of squared pair residuals, sum ((x_k - x_j - mu) / sigma)^2.
double layout_energy(const Eigen::MatrixX2d& positions, const EstimateMap& estimates);

/// Minimizes the weighted pair energy with frame 0 anchored at the origin.
/// Throws DisconnectedGraphError when the pairs leave frames unconnected and
/// ArgumentError on invalid indices or non-positive sigmas. The first overload
/// tags every pair temporal; the second takes tags from `pairs`, which must
/// hold exactly the estimate keys.
LayoutSolution solve_layout(int frame_count, const EstimateMap& estimates);
LayoutSolution solve_layout(int frame_count, const EstimateMap& estimates, PairSet pairs);

/// Connected components of the pair graph, each sorted, ordered by first frame.
std::vector<std::vector<int>> connected_components(int frame_count, const EstimateMap& estimates);

}  // namespace swipe::layout
