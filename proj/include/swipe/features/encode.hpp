#pragma once

#include "swipe/features/ncc.hpp"
#include "swipe/features/window.hpp"

#include <Eigen/Core>

namespace swipe::features {

/// min, max, mean, normalized peak (2), Laplace slices at p=10 and p=20 (8),
/// 5-bin histogram.
inline constexpr int kBaseSliceLength = 18;
inline constexpr int kGaborFilterCount = 33;
inline constexpr int kGaborStatsPerFilter = 4;
/// Levels at or below this also encode the Gabor bank responses.
inline constexpr int kGaborMaxLevel = 2;

constexpr int slice_length(int level) {
  return kBaseSliceLength + (level <= kGaborMaxLevel ? kGaborFilterCount * kGaborStatsPerFilter : 0);
}

/// Length of a full pair descriptor: 121 cells of 18 values plus 132 Gabor
/// statistics for each of the five cells on levels 1 and 2.
inline constexpr int kFeatureDim = [] {
  int n = 0;
  for (int l : kGridLevels) n += l * l * slice_length(l);
  return n;
}();

/// Peak offset from the zero-shift entry divided component-wise by the
/// template size, so identical windows map to (0, 0).
Eigen::Vector2d normalized_peak(const NccResponse& response, Eigen::Vector2i peak,
                                Eigen::Vector2i template_size);

/// Fraction of samples per bin over edges {-1, -0.6, -0.2, 0.2, 0.6, 1}; the
/// top bin includes 1 and out-of-range values clamp to the end bins.
Eigen::Matrix<double, 5, 1> normalized_histogram(const ImageD& values);

/// Encodes one response into slice_length(level) values (see kBaseSliceLength
/// for the order; Gabor min/max/mean/median follow in bank order).
Eigen::VectorXd encode_ncc(const NccResponse& response, int level, Eigen::Vector2i template_size);

}  // namespace swipe::features
