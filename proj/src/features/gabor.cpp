#include "swipe/features/gabor.hpp"

#include "swipe/errors.hpp"
#include "swipe/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace swipe::features {

GaborFilter make_gabor(double lambda, double theta, double sigma, double gamma) {
  if (lambda <= 0 || sigma <= 0 || gamma <= 0) throw ArgumentError("Gabor parameters must be positive");
  GaborFilter f{lambda, theta, sigma, gamma, {}};
  const double sigma_y = sigma / gamma;
  const int half = static_cast<int>(std::ceil(3.0 * std::max(sigma, sigma_y)));
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  f.kernel.resize(2 * half + 1, 2 * half + 1);
  for (int y = -half; y <= half; ++y) {
    for (int x = -half; x <= half; ++x) {
      const double xr = x * c + y * s;
      const double yr = -x * s + y * c;
      const double envelope =
          std::exp(-xr * xr / (2 * sigma * sigma) - yr * yr / (2 * sigma_y * sigma_y));
      f.kernel(y + half, x + half) = envelope * std::cos(2 * M_PI * xr / lambda);
    }
  }
  return f;
}

std::vector<GaborFilter> build_gabor_bank() {
  std::vector<GaborFilter> bank;
  bank.push_back(make_gabor(100.0, 0.0, 4.0, 1.0));
  const std::pair<double, double> settings[] = {{2.0, 1.0}, {2.0, 0.5}, {3.0, 1.0}, {3.0, 0.5}};
  for (const auto& [sigma, gamma] : settings) {
    for (int k = 0; k < 8; ++k) bank.push_back(make_gabor(10.0, k * M_PI / 4.0, sigma, gamma));
  }
  return bank;
}

const std::vector<GaborFilter>& gabor_bank() {
  static const std::vector<GaborFilter> bank = build_gabor_bank();
  return bank;
}

int gabor_bank_half_width() {
  static const int half = [] {
    int h = 0;
    for (const auto& f : gabor_bank()) h = std::max(h, f.half_width());
    return h;
  }();
  return half;
}

namespace {

ImageD pad_clamped(const ImageD& img, int pad) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  ImageD out(h + 2 * pad, w + 2 * pad);
  for (int y = 0; y < out.rows(); ++y) {
    const int sy = std::clamp(y - pad, 0, h - 1);
    for (int x = 0; x < out.cols(); ++x) out(y, x) = img(sy, std::clamp(x - pad, 0, w - 1));
  }
  return out;
}

// Kernel spectra depend only on the transform size; cache them per thread.
const std::vector<fft::Spectrum>& bank_spectra(int rows, int cols) {
  thread_local std::map<std::pair<int, int>, std::vector<fft::Spectrum>> cache;
  auto [it, inserted] = cache.try_emplace({rows, cols});
  if (inserted) {
    for (const auto& f : gabor_bank()) {
      const int h = f.half_width();
      ImageD wrapped = ImageD::Zero(rows, cols);
      for (int y = -h; y <= h; ++y) {
        for (int x = -h; x <= h; ++x) {
          wrapped((y + rows) % rows, (x + cols) % cols) = f.kernel(y + h, x + h);
        }
      }
      it->second.push_back(fft::forward(wrapped, rows, cols));
    }
  }
  return it->second;
}

}  // namespace

std::vector<ImageD> apply_gabor_bank(const ImageD& response) {
  std::vector<ImageD> out;
  out.reserve(gabor_bank().size());
  if (response.size() == 1) {
    // Clamped borders make a 1x1 surface constant: the result is v * sum(kernel).
    for (const auto& f : gabor_bank()) out.push_back(ImageD::Constant(1, 1, response(0, 0) * f.kernel.sum()));
    return out;
  }
  const int pad = gabor_bank_half_width();
  const ImageD padded = pad_clamped(response, pad);
  const int rows = fft::good_size(static_cast<int>(padded.rows()));
  const int cols = fft::good_size(static_cast<int>(padded.cols()));
  const fft::Spectrum signal = fft::forward(padded, rows, cols);
  for (const fft::Spectrum& kernel : bank_spectra(rows, cols)) {
    const ImageD full = fft::inverse(signal * kernel, rows, cols);
    out.emplace_back(full.block(pad, pad, response.rows(), response.cols()));
  }
  return out;
}

ImageD convolve_same_clamped(const ImageD& image, const ImageD& kernel) {
  const int kh = static_cast<int>(kernel.rows() / 2);
  const int kw = static_cast<int>(kernel.cols() / 2);
  const int h = static_cast<int>(image.rows());
  const int w = static_cast<int>(image.cols());
  ImageD out = ImageD::Zero(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int v = -kh; v <= kh; ++v) {
        for (int u = -kw; u <= kw; ++u) {
          acc += kernel(v + kh, u + kw) *
                 image(std::clamp(y - v, 0, h - 1), std::clamp(x - u, 0, w - 1));
        }
      }
      out(y, x) = acc;
    }
  }
  return out;
}

}  // namespace swipe::features
