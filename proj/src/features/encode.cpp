#include "swipe/features/encode.hpp"

#include "swipe/errors.hpp"
#include "swipe/features/gabor.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace swipe::features {

namespace {

double median(const ImageD& values) {
  std::vector<double> v(values.data(), values.data() + values.size());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

Eigen::Vector2d normalized_peak(const NccResponse& response, Eigen::Vector2i peak,
                                Eigen::Vector2i template_size) {
  const Eigen::Vector2i offset = peak - response.zero_offset;
  return offset.cast<double>().cwiseQuotient(template_size.cast<double>());
}

Eigen::Matrix<double, 5, 1> normalized_histogram(const ImageD& values) {
  static constexpr std::array<double, 4> kInnerEdges = {-0.6, -0.2, 0.2, 0.6};
  Eigen::Matrix<double, 5, 1> hist = Eigen::Matrix<double, 5, 1>::Zero();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values.data()[i];
    const auto bin = std::upper_bound(kInnerEdges.begin(), kInnerEdges.end(), v) - kInnerEdges.begin();
    hist[bin] += 1.0;
  }
  return hist / static_cast<double>(values.size());
}

Eigen::VectorXd encode_ncc(const NccResponse& response, int level, Eigen::Vector2i template_size) {
  if (response.values.size() == 0) throw ArgumentError("cannot encode an empty NCC response");
  if (!is_grid_level(level)) throw ArgumentError("invalid grid level");

  Eigen::VectorXd out(slice_length(level));
  Eigen::Index k = 0;
  const ImageD& n = response.values;
  out[k++] = n.minCoeff();
  out[k++] = n.maxCoeff();
  out[k++] = n.mean();

  const Eigen::Vector2i peak = peak_coords(n);
  out.segment<2>(k) = normalized_peak(response, peak, template_size);
  k += 2;
  for (int p : {10, 20}) {
    for (double v : laplace_coords(response, peak, p)) out[k++] = v;
  }
  out.segment<5>(k) = normalized_histogram(n);
  k += 5;

  if (level <= kGaborMaxLevel) {
    for (const ImageD& h : apply_gabor_bank(n)) {
      out[k++] = h.minCoeff();
      out[k++] = h.maxCoeff();
      out[k++] = h.mean();
      out[k++] = median(h);
    }
  }
  return out;
}

}  // namespace swipe::features
