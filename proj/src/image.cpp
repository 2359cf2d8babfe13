#include "swipe/image.hpp"

#include "swipe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace swipe {

Frame make_frame(Image pixels, int index, std::optional<double> timestamp) {
  if (pixels.rows() <= 0 || pixels.cols() <= 0) throw ArgumentError("frame must be non-empty");
  if (!pixels.allFinite() || pixels.minCoeff() < 0.0f || pixels.maxCoeff() > 1.0f) {
    throw ArgumentError("frame intensities must lie in [0, 1]");
  }
  Frame f;
  f.pixels = std::move(pixels);
  f.index = index;
  f.timestamp = timestamp.value_or(static_cast<double>(index));
  return f;
}

namespace {

float sample_clamped(const Image& src, double x, double y) {
  const int w = static_cast<int>(src.cols());
  const int h = static_cast<int>(src.rows());
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = (1 - fx) * src(y0, x0) + fx * src(y0, x1);
  const double bot = (1 - fx) * src(y1, x0) + fx * src(y1, x1);
  return static_cast<float>((1 - fy) * top + fy * bot);
}

}  // namespace

Image resize_bilinear(const Image& src, int width, int height) {
  if (width <= 0 || height <= 0) throw ArgumentError("resize target must be positive");
  Image out(height, width);
  const double sx = static_cast<double>(src.cols()) / width;
  const double sy = static_cast<double>(src.rows()) / height;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out(y, x) = sample_clamped(src, (x + 0.5) * sx - 0.5, (y + 0.5) * sy - 0.5);
    }
  }
  return out;
}

Image resize(const Image& src, int width, int height) {
  if (width == src.cols() && height == src.rows()) return src;
  const double sx = static_cast<double>(src.cols()) / width;
  const double sy = static_cast<double>(src.rows()) / height;
  if (sx < 1.5 && sy < 1.5) return resize_bilinear(src, width, height);

  // Area average over the footprint of each output pixel.
  Image out(height, width);
  for (int y = 0; y < height; ++y) {
    const int ya = static_cast<int>(std::floor(y * sy));
    const int yb = std::max(ya + 1, static_cast<int>(std::floor((y + 1) * sy)));
    for (int x = 0; x < width; ++x) {
      const int xa = static_cast<int>(std::floor(x * sx));
      const int xb = std::max(xa + 1, static_cast<int>(std::floor((x + 1) * sx)));
      const auto block = src.block(ya, xa, std::min<int>(yb, src.rows()) - ya,
                                   std::min<int>(xb, src.cols()) - xa);
      out(y, x) = block.template cast<double>().mean();
    }
  }
  return out;
}

Image rotate_about_center(const Image& src, double degrees) {
  const double t = degrees * M_PI / 180.0;
  const double c = std::cos(t);
  const double s = std::sin(t);
  const double cx = (src.cols() - 1) / 2.0;
  const double cy = (src.rows() - 1) / 2.0;
  Image out(src.rows(), src.cols());
  for (Eigen::Index y = 0; y < src.rows(); ++y) {
    for (Eigen::Index x = 0; x < src.cols(); ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      out(y, x) = sample_clamped(src, cx + c * dx - s * dy, cy + s * dx + c * dy);
    }
  }
  return out;
}

Eigen::Vector2i working_size(int width, int height, int max_dim) {
  if (width <= 0 || height <= 0 || max_dim <= 0) throw ArgumentError("sizes must be positive");
  const int longest = std::max(width, height);
  if (longest <= max_dim) return {width, height};
  const double scale = static_cast<double>(max_dim) / longest;
  return {std::max(1, static_cast<int>(std::lround(width * scale))),
          std::max(1, static_cast<int>(std::lround(height * scale)))};
}

}  // namespace swipe
