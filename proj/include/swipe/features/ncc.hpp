#pragma once

#include "swipe/image.hpp"

#include <array>

namespace swipe::features {

/// Windows whose per-pixel intensity variance falls below this carry no
/// correlation evidence and score 0 at every offset.
inline constexpr double kZeroVarianceThreshold = 1e-12;

/// Correlation surface of a template slid over a search window.
/// values(dy, dx) scores the template placed at offset (dx, dy) inside the
/// search window; zero_offset is the (x, y) entry meaning "no relative shift".
struct NccResponse {
  ImageD values;
  Eigen::Vector2i zero_offset = Eigen::Vector2i::Zero();

  int width() const { return static_cast<int>(values.cols()); }
  int height() const { return static_cast<int>(values.rows()); }
};

/// Zero-mean, unit-variance normalized cross-correlation in valid mode.
/// Output is (search - template + 1) per axis, clamped to [-1, 1].
/// Throws ArgumentError when the template exceeds the search window.
NccResponse compute_ncc(const ImageD& templ, const ImageD& search, Eigen::Vector2i zero_offset);

/// Same, with the zero-shift entry at the centered placement.
template <typename DerivedT, typename DerivedS>
NccResponse compute_ncc(const Eigen::DenseBase<DerivedT>& templ,
                        const Eigen::DenseBase<DerivedS>& search) {
  const ImageD t = templ.derived().template cast<double>();
  const ImageD s = search.derived().template cast<double>();
  const Eigen::Vector2i centered((s.cols() - t.cols()) / 2, (s.rows() - t.rows()) / 2);
  return compute_ncc(t, s, centered);
}

/// (x, y) of the first maximum in row-major scan order.
Eigen::Vector2i peak_coords(const ImageD& values);

/// Slices through `peak` at 0, 45, 90 and 135 degrees with the 1/4 [1 -2 1]
/// stencil at distance `p`; diagonal steps round to the nearest pixel and
/// samples beyond the surface clamp to its edge.
std::array<double, 4> laplace_coords(const NccResponse& response, Eigen::Vector2i peak, int p);

}  // namespace swipe::features
