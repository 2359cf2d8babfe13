#include "swipe/errors.hpp"
#include "swipe/forest/forest.hpp"
#include "swipe/hash.hpp"
#include "swipe/parallel.hpp"
#include "swipe/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace swipe::forest {
namespace {

struct Moments {
  std::uint32_t n = 0;
  std::array<double, 2> sum = {0.0, 0.0};
  std::array<double, 2> sq = {0.0, 0.0};

  void add(const double* y, int dims) {
    ++n;
    for (int d = 0; d < dims; ++d) {
      sum[d] += y[d];
      sq[d] += y[d] * y[d];
    }
  }

  /// Sum of squared deviations from the mean, summed over label axes.
  double sse(int dims) const {
    if (n == 0) return 0.0;
    double s = 0.0;
    for (int d = 0; d < dims; ++d) s += std::max(0.0, sq[d] - sum[d] * sum[d] / n);
    return s;
  }
};

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::Ref<const Eigen::MatrixXf>& X, const std::vector<double>& labels,
              const ForestConfig& config, std::uint64_t seed)
      : X_(X), labels_(labels), config_(config), dims_(config.label_dim), rng_(seed) {}

  Tree build() {
    const auto n = static_cast<std::uint32_t>(X_.rows());
    index_.resize(n);
    for (auto& i : index_) i = static_cast<std::uint32_t>(rng_.below(n));
    std::sort(index_.begin(), index_.end());
    grow(0, n, 0);
    return Tree{std::move(nodes_)};
  }

 private:
  const double* label(std::uint32_t i) const { return labels_.data() + static_cast<std::size_t>(i) * dims_; }

  std::uint32_t grow(std::uint32_t begin, std::uint32_t end, int depth) {
    Moments all;
    for (std::uint32_t i = begin; i < end; ++i) all.add(label(index_[i]), dims_);
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    {
      Node& leaf = nodes_.back();
      leaf.count = all.n;
      for (int d = 0; d < dims_; ++d) leaf.value[d] = all.sum[d] / all.n;
    }
    const double parent_sse = all.sse(dims_);
    const auto min_leaf = static_cast<std::uint32_t>(config_.min_leaf);
    if (depth >= config_.max_depth || all.n < 2 * min_leaf || parent_sse <= 1e-14 * all.n) return id;

    int best_feature = -1;
    float best_threshold = 0.0f;
    double best_sse = parent_sse;
    const auto feature_dim = static_cast<std::uint64_t>(X_.cols());
    for (int c = 0; c < config_.candidate_splits; ++c) {
      const auto f = static_cast<Eigen::Index>(rng_.below(feature_dim));
      const double u = rng_.uniform();
      const float* column = X_.col(f).data();
      float lo = std::numeric_limits<float>::infinity();
      float hi = -lo;
      for (std::uint32_t i = begin; i < end; ++i) {
        const float v = column[index_[i]];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (!(hi > lo)) continue;
      float threshold = static_cast<float>(lo + (static_cast<double>(hi) - lo) * u);
      if (threshold <= lo) threshold = std::nextafter(lo, hi);
      Moments left;
      Moments right;
      for (std::uint32_t i = begin; i < end; ++i) {
        const std::uint32_t s = index_[i];
        (column[s] < threshold ? left : right).add(label(s), dims_);
      }
      if (left.n < min_leaf || right.n < min_leaf) continue;
      const double split_sse = left.sse(dims_) + right.sse(dims_);
      if (split_sse < best_sse) {
        best_sse = split_sse;
        best_feature = static_cast<int>(f);
        best_threshold = threshold;
      }
    }
    if (best_feature < 0) return id;

    const float* column = X_.col(best_feature).data();
    const auto mid_it = std::stable_partition(index_.begin() + begin, index_.begin() + end,
                                              [&](std::uint32_t s) { return column[s] < best_threshold; });
    const auto mid = static_cast<std::uint32_t>(mid_it - index_.begin());
    const std::uint32_t left = grow(begin, mid, depth + 1);
    const std::uint32_t right = grow(mid, end, depth + 1);
    Node& node = nodes_[id];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = left;
    node.right = right;
    return id;
  }

  const Eigen::Ref<const Eigen::MatrixXf>& X_;
  const std::vector<double>& labels_;
  const ForestConfig& config_;
  int dims_;
  Rng rng_;
  std::vector<std::uint32_t> index_;
  std::vector<Node> nodes_;
};

}  // namespace

Forest train(const Eigen::Ref<const Eigen::MatrixXf>& X, const Eigen::Ref<const Eigen::MatrixXd>& Y,
             const ForestConfig& config, Eigen::Vector2i frame_size) {
  validate(config);
  if (X.rows() == 0) throw ArgumentError("training set is empty");
  if (X.cols() == 0) throw ArgumentError("training features have zero dimension");
  if (Y.rows() != X.rows()) throw ArgumentError("feature and label counts differ");
  if (Y.cols() != config.label_dim) throw ArgumentError("label dimension does not match config.label_dim");
  if (X.rows() > std::numeric_limits<std::uint32_t>::max()) throw ArgumentError("training set too large");
  if (!Y.allFinite()) throw ArgumentError("training labels must be finite");

  std::vector<double> labels(static_cast<std::size_t>(Y.size()));
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    for (Eigen::Index d = 0; d < Y.cols(); ++d) labels[static_cast<std::size_t>(i * Y.cols() + d)] = Y(i, d);
  }

  std::vector<Tree> trees(static_cast<std::size_t>(config.tree_count));
  parallel_for(trees.size(), config.threads, [&](std::size_t t) {
    TreeBuilder builder(X, labels, config, mix_seed(config.rng_seed, t));
    trees[t] = builder.build();
  });
  return Forest(config, static_cast<int>(X.cols()), std::move(trees), frame_size);
}

}  // namespace swipe::forest
