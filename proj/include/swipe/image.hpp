#pragma once

#include <Eigen/Core>

#include <optional>

namespace swipe {

/// Row-major intensity raster; rows index y, columns index x.
template <typename Scalar>
using ImageT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Image = ImageT<float>;
using ImageD = ImageT<double>;

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  long area() const { return static_cast<long>(width()) * height(); }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
  bool contains(const Rect& o) const {
    return o.x0 >= x0 && o.y0 >= y0 && o.x1 <= x1 && o.y1 <= y1;
  }
  bool operator==(const Rect&) const = default;
};

/// One grayscale frame of a sequence, intensities in [0, 1].
struct Frame {
  Image pixels;
  int index = 0;
  double timestamp = 0.0;

  int width() const { return static_cast<int>(pixels.cols()); }
  int height() const { return static_cast<int>(pixels.rows()); }
};

/// Validates the raster and builds a frame; timestamp defaults to the index.
Frame make_frame(Image pixels, int index, std::optional<double> timestamp = std::nullopt);

template <typename Derived>
auto window(const Eigen::DenseBase<Derived>& img, const Rect& r) {
  return img.block(r.y0, r.x0, r.height(), r.width());
}

/// Bilinear resample to an exact output size (pixel-center aligned).
Image resize_bilinear(const Image& src, int width, int height);

/// Box-filtered downscale for large reductions, bilinear otherwise.
Image resize(const Image& src, int width, int height);

/// out(p) = src(c + R(degrees) * (p - c)) with c the image center and R the
/// standard 2x2 rotation in (x, y) pixel coordinates. Bilinear, edge-clamped.
Image rotate_about_center(const Image& src, double degrees);

/// Working size whose larger side equals `max_dim` (never upscales).
Eigen::Vector2i working_size(int width, int height, int max_dim);

}  // namespace swipe
