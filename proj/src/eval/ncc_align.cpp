#include "swipe/eval/ncc_align.hpp"

#include "swipe/errors.hpp"
#include "swipe/features/ncc.hpp"

namespace swipe::eval {

ImageD ncc_surface(const Image& a, const Image& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("ncc_align needs equal-size frames");
  if (a.size() == 0) throw ArgumentError("ncc_align needs non-empty frames");
  const Eigen::Index h = a.rows();
  const Eigen::Index w = a.cols();
  ImageD padded = ImageD::Zero(3 * h - 2, 3 * w - 2);
  padded.block(h - 1, w - 1, h, w) = b.cast<double>();
  return features::compute_ncc(ImageD(a.cast<double>()), padded, Eigen::Vector2i(w - 1, h - 1)).values;
}

NccAlignment ncc_align(const Image& a, const Image& b) {
  const ImageD surface = ncc_surface(a, b);
  NccAlignment out;
  if ((surface == 0.0).all()) {
    out.degenerate = true;
    return out;
  }
  const Eigen::Vector2i peak = features::peak_coords(surface);
  out.score = surface(peak.y(), peak.x());
  // The peak lag u aligns a(p) with b(p + u); camera motion is -u.
  const Eigen::Vector2i lag = peak - Eigen::Vector2i(static_cast<int>(a.cols()) - 1, static_cast<int>(a.rows()) - 1);
  out.shift = -lag;
  return out;
}

}  // namespace swipe::eval
