#pragma once

#include "swipe/layout/pairs.hpp"

#include <Eigen/Core>

namespace swipe::layout {

struct RotationWeights {
  double smoothness = 1.0;
  double zero_prior = 0.01;
};

/// Per-frame rotations (degrees) minimizing
///   sum ((r_k - r_j - mu_jk) / sigma_jk)^2
///   + zero_prior * sum r_i^2 + smoothness * sum (r_{i+1} - r_i)^2
/// with r_0 fixed at 0. `estimates` hold 1D rotation estimates.
Eigen::VectorXd solve_rotations(int frame_count, const EstimateMap& estimates, const RotationWeights& weights = {});

}  // namespace swipe::layout
