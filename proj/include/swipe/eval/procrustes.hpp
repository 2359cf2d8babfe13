#pragma once

#include <Eigen/Core>

namespace swipe::eval {

/// p -> scale * rotation * p + translation.
struct Similarity2D {
  double scale = 1.0;
  Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();

  Eigen::MatrixX2d apply(const Eigen::MatrixX2d& points) const;
};

struct ProcrustesResult {
  Similarity2D transform;
  /// Mean squared point distance after alignment, reference units squared.
  double mse = 0.0;
};

/// Closed-form least-squares similarity (reflections excluded) mapping the
/// candidate onto the reference. Throws ArgumentError on mismatched or short
/// inputs and DegeneracyError when the reference points all coincide.
ProcrustesResult procrustes_align(const Eigen::MatrixX2d& candidate, const Eigen::MatrixX2d& reference);

}  // namespace swipe::eval
