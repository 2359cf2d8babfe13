#include "swipe/features/extract.hpp"

#include "swipe/errors.hpp"
#include "swipe/features/gabor.hpp"
#include "swipe/hash.hpp"

namespace swipe::features {

FeatureVector extract_features(const Image& a, const Image& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("feature extraction needs equally sized frames");
  }
  const int width = static_cast<int>(a.cols());
  const int height = static_cast<int>(a.rows());
  const ImageD ad = a.cast<double>();
  const ImageD bd = b.cast<double>();

  FeatureVector out(kFeatureDim);
  Eigen::Index k = 0;
  for (int level : kGridLevels) {
    for (int cy = 0; cy < level; ++cy) {
      for (int cx = 0; cx < level; ++cx) {
        const GridCell cell = window_geometry(level, cx, cy, width, height);
        const Rect& t = cell.template_rect;
        const Rect& s = cell.search_rect;
        const NccResponse response =
            compute_ncc(ImageD(window(ad, t)), ImageD(window(bd, s)),
                        Eigen::Vector2i(t.x0 - s.x0, t.y0 - s.y0));
        const Eigen::VectorXd slice = encode_ncc(response, level, {t.width(), t.height()});
        out.segment(k, slice.size()) = slice.cast<float>();
        k += slice.size();
      }
    }
  }
  return out;
}

FeatureVector extract_features(const Frame& a, const Frame& b) {
  return extract_features(a.pixels, b.pixels);
}

std::uint64_t encoding_fingerprint() {
  Fnv1a h;
  h.update("ncc-pyramid-v1");
  h.update_value(kFeatureDim);
  for (int l : kGridLevels) h.update_value(l);
  for (const auto& f : gabor_bank()) {
    h.update_value(f.lambda);
    h.update_value(f.theta);
    h.update_value(f.sigma);
    h.update_value(f.gamma);
  }
  return h.digest();
}

}  // namespace swipe::features
