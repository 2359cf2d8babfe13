#pragma once

#include "swipe/image.hpp"

#include <Eigen/Core>

namespace swipe::eval {

struct NccAlignment {
  /// Camera motion from a to b in pixels: b(x) ~ a(x + shift).
  Eigen::Vector2i shift = Eigen::Vector2i::Zero();
  double score = 0.0;
  /// Set when either frame has no intensity variance; shift is then zero.
  bool degenerate = false;
};

/// Whole-frame NCC surface of a against zero-padded b (normxcorr2 "full"
/// layout): entry (y, x) scores the lag (x - (w - 1), y - (h - 1)).
ImageD ncc_surface(const Image& a, const Image& b);

/// Global argmax of ncc_surface, first in row-major scan order, converted to
/// camera motion. Throws ArgumentError when the frames differ in size.
NccAlignment ncc_align(const Image& a, const Image& b);

}  // namespace swipe::eval
