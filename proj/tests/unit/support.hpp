#pragma once

#include "swipe/hash.hpp"
#include "swipe/image.hpp"
#include "swipe/random.hpp"
#include "swipe/synth/texture.hpp"

#include <cmath>

namespace swipe::test {

/// Smooth random texture in [0, 1] sampled on a w x h grid with an offset.
inline Image noise_image(int w, int h, std::uint64_t seed, double ox = 0.0, double oy = 0.0, double scale = 3.0) {
  Image img(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = synth::value_noise(x + ox, y + oy, scale, 2, seed);
      img(y, x) = static_cast<float>(0.5 + 0.4 * v);
    }
  }
  return img;
}

/// Independent pixels uniform in [0, 1].
inline ImageD white_noise(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  ImageD img(h, w);
  for (Eigen::Index i = 0; i < img.size(); ++i) img.data()[i] = rng.uniform();
  return img;
}

/// Brute-force ZNCC of t against s at offset (dx, dy), with the zero-variance
/// convention (score 0).
inline double zncc_at(const ImageD& t, const ImageD& s, int dx, int dy) {
  const double n = static_cast<double>(t.size());
  double mt = 0.0;
  double ms = 0.0;
  for (Eigen::Index y = 0; y < t.rows(); ++y) {
    for (Eigen::Index x = 0; x < t.cols(); ++x) {
      mt += t(y, x);
      ms += s(y + dy, x + dx);
    }
  }
  mt /= n;
  ms /= n;
  double num = 0.0;
  double vt = 0.0;
  double vs = 0.0;
  for (Eigen::Index y = 0; y < t.rows(); ++y) {
    for (Eigen::Index x = 0; x < t.cols(); ++x) {
      const double a = t(y, x) - mt;
      const double b = s(y + dy, x + dx) - ms;
      num += a * b;
      vt += a * a;
      vs += b * b;
    }
  }
  if (vt / n < 1e-12 || vs / n < 1e-12) return 0.0;
  return num / std::sqrt(vt * vs);
}

}  // namespace swipe::test
