#include "swipe/features/ncc.hpp"

#include "swipe/errors.hpp"
#include "swipe/fft.hpp"

#include <algorithm>
#include <cmath>

namespace swipe::features {

namespace {

// Below this many multiply-adds the spatial sum beats three FFTs.
constexpr double kDirectCostLimit = 32768.0;

ImageD integral(const ImageD& img, bool squared) {
  ImageD sum = ImageD::Zero(img.rows() + 1, img.cols() + 1);
  for (Eigen::Index y = 0; y < img.rows(); ++y) {
    double row = 0.0;
    for (Eigen::Index x = 0; x < img.cols(); ++x) {
      const double v = img(y, x);
      row += squared ? v * v : v;
      sum(y + 1, x + 1) = sum(y, x + 1) + row;
    }
  }
  return sum;
}

double box(const ImageD& ii, Eigen::Index y, Eigen::Index x, Eigen::Index h, Eigen::Index w) {
  return ii(y + h, x + w) - ii(y, x + w) - ii(y + h, x) + ii(y, x);
}

}  // namespace

NccResponse compute_ncc(const ImageD& templ, const ImageD& search, Eigen::Vector2i zero_offset) {
  if (templ.size() == 0 || search.size() == 0) throw ArgumentError("NCC windows must be non-empty");
  if (templ.rows() > search.rows() || templ.cols() > search.cols()) {
    throw ArgumentError("NCC template larger than search window");
  }
  const Eigen::Index th = templ.rows();
  const Eigen::Index tw = templ.cols();
  const Eigen::Index out_h = search.rows() - th + 1;
  const Eigen::Index out_w = search.cols() - tw + 1;
  const double n = static_cast<double>(templ.size());

  NccResponse response;
  response.zero_offset = zero_offset;
  response.values = ImageD::Zero(out_h, out_w);

  const ImageD t0 = templ - templ.mean();
  const double tss = t0.square().sum();
  if (tss / n < kZeroVarianceThreshold) return response;

  ImageD numerator;
  if (static_cast<double>(out_h * out_w) * n <= kDirectCostLimit) {
    numerator.resize(out_h, out_w);
    for (Eigen::Index dy = 0; dy < out_h; ++dy) {
      for (Eigen::Index dx = 0; dx < out_w; ++dx) {
        numerator(dy, dx) = (t0 * search.block(dy, dx, th, tw)).sum();
      }
    }
  } else {
    numerator = fft::correlate_valid(t0, search);
  }

  const ImageD sum = integral(search, false);
  const ImageD sum_sq = integral(search, true);
  for (Eigen::Index dy = 0; dy < out_h; ++dy) {
    for (Eigen::Index dx = 0; dx < out_w; ++dx) {
      const double s = box(sum, dy, dx, th, tw);
      const double ss = box(sum_sq, dy, dx, th, tw);
      const double centered = ss - s * s / n;
      if (centered / n < kZeroVarianceThreshold) continue;
      response.values(dy, dx) = std::clamp(numerator(dy, dx) / std::sqrt(tss * centered), -1.0, 1.0);
    }
  }
  return response;
}

Eigen::Vector2i peak_coords(const ImageD& values) {
  Eigen::Index best_y = 0;
  Eigen::Index best_x = 0;
  double best = values(0, 0);
  for (Eigen::Index y = 0; y < values.rows(); ++y) {
    for (Eigen::Index x = 0; x < values.cols(); ++x) {
      if (values(y, x) > best) {
        best = values(y, x);
        best_y = y;
        best_x = x;
      }
    }
  }
  return {static_cast<int>(best_x), static_cast<int>(best_y)};
}

std::array<double, 4> laplace_coords(const NccResponse& response, Eigen::Vector2i peak, int p) {
  const ImageD& v = response.values;
  const int w = static_cast<int>(v.cols());
  const int h = static_cast<int>(v.rows());
  auto at = [&](int x, int y) { return v(std::clamp(y, 0, h - 1), std::clamp(x, 0, w - 1)); };

  const int diag = static_cast<int>(std::lround(p / std::sqrt(2.0)));
  const std::array<Eigen::Vector2i, 4> steps = {Eigen::Vector2i(p, 0), Eigen::Vector2i(diag, diag),
                                                Eigen::Vector2i(0, p), Eigen::Vector2i(-diag, diag)};
  const double centre = at(peak.x(), peak.y());
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Eigen::Vector2i lo = peak - steps[i];
    const Eigen::Vector2i hi = peak + steps[i];
    out[i] = (at(lo.x(), lo.y()) - 2.0 * centre + at(hi.x(), hi.y())) / 4.0;
  }
  return out;
}

}  // namespace swipe::features
