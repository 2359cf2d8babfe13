#include "swipe/forest/forest.hpp"

#include "swipe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swipe::forest {

void validate(const ForestConfig& config) {
  if (config.tree_count < 1) throw ArgumentError("tree_count must be >= 1");
  if (config.max_depth < 1) throw ArgumentError("max_depth must be >= 1");
  if (config.candidate_splits < 1) throw ArgumentError("candidate_splits must be >= 1");
  if (config.min_leaf < 1) throw ArgumentError("min_leaf must be >= 1");
  if (config.label_dim != 1 && config.label_dim != 2) throw ArgumentError("label_dim must be 1 or 2");
  if (!(config.sigma_floor > 0.0)) throw ArgumentError("sigma_floor must be positive");
}

const Node& Tree::leaf_for(const float* features) const {
  const Node* node = &nodes[0];
  while (!node->is_leaf()) {
    node = &nodes[features[node->feature] < node->threshold ? node->left : node->right];
  }
  return *node;
}

namespace {

int subtree_depth(const std::vector<Node>& nodes, std::uint32_t i) {
  const Node& n = nodes[i];
  if (n.is_leaf()) return 0;
  return 1 + std::max(subtree_depth(nodes, n.left), subtree_depth(nodes, n.right));
}

}  // namespace

int Tree::depth() const { return nodes.empty() ? 0 : subtree_depth(nodes, 0); }

int Tree::leaf_count() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.is_leaf(); }));
}

Forest::Forest(ForestConfig config, int feature_dim, std::vector<Tree> trees, Eigen::Vector2i frame_size)
    : config_(config), feature_dim_(feature_dim), trees_(std::move(trees)), frame_size_(frame_size) {
  validate(config_);
  if (trees_.empty()) throw ArgumentError("a forest needs at least one tree");
  if (feature_dim_ < 1) throw ArgumentError("feature_dim must be >= 1");
  for (const Tree& t : trees_) {
    if (t.nodes.empty()) throw ArgumentError("empty tree");
    for (const Node& n : t.nodes) {
      if (n.is_leaf()) continue;
      if (n.feature >= feature_dim_) throw ArgumentError("split feature index out of range");
      if (n.left >= t.nodes.size() || n.right >= t.nodes.size()) throw ArgumentError("dangling child index");
    }
  }
}

MotionEstimate predict(const Forest& forest, const Eigen::Ref<const Eigen::VectorXf>& features) {
  if (features.size() != forest.feature_dim()) {
    throw ArgumentError("feature vector has " + std::to_string(features.size()) + " entries, forest expects " +
                        std::to_string(forest.feature_dim()));
  }
  const int dims = forest.label_dim();
  const auto& trees = forest.trees();
  MotionEstimate est;
  est.samples.resize(static_cast<Eigen::Index>(trees.size()), dims);
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const Node& leaf = trees[t].leaf_for(features.data());
    for (int d = 0; d < dims; ++d) est.samples(static_cast<Eigen::Index>(t), d) = leaf.value[d];
  }
  est.mean = est.samples.colwise().mean().transpose();
  est.sigma = Eigen::VectorXd::Constant(dims, forest.config().sigma_floor);
  if (trees.size() >= 2) {
    const Eigen::MatrixXd centered = est.samples.rowwise() - est.mean.transpose();
    const Eigen::VectorXd var = centered.colwise().squaredNorm().transpose() / static_cast<double>(trees.size() - 1);
    est.sigma = var.cwiseSqrt().cwiseMax(forest.config().sigma_floor);
  }
  return est;
}

}  // namespace swipe::forest
