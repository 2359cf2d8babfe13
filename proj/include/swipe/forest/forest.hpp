#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace swipe::forest {

/// Default std floors: image-width units for translation, degrees for rotation.
inline constexpr double kTranslationSigmaFloor = 1e-3;
inline constexpr double kRotationSigmaFloor = 0.05;

struct ForestConfig {
  int tree_count = 10;
  int max_depth = 12;
  /// Random (feature, threshold) proposals examined per node.
  int candidate_splits = 2000;
  int min_leaf = 4;
  /// 2 for translation (dx, dy), 1 for rotation.
  int label_dim = 2;
  std::uint64_t rng_seed = 0;
  double sigma_floor = kTranslationSigmaFloor;
  /// Training worker count (0 = hardware); never affects the result.
  int threads = 0;
};

/// Throws ArgumentError if any count is below 1 or label_dim is not 1 or 2.
void validate(const ForestConfig& config);

/// Axis-aligned split node or leaf. Samples with x[feature] < threshold go
/// left. Leaves have feature == -1 and store the mean training label.
struct Node {
  std::int32_t feature = -1;
  float threshold = 0.0f;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::uint32_t count = 0;
  std::array<double, 2> value = {0.0, 0.0};

  bool is_leaf() const { return feature < 0; }
};

/// Flat binary tree; nodes[0] is the root.
struct Tree {
  std::vector<Node> nodes;

  const Node& leaf_for(const float* features) const;
  int depth() const;
  int leaf_count() const;
};

/// Gaussian summary of the per-tree predictions.
struct MotionEstimate {
  Eigen::VectorXd mean;
  Eigen::VectorXd sigma;
  /// One row per tree.
  Eigen::MatrixXd samples;
};

/// Immutable trained ensemble. Construction validates the structural
/// invariants and rejects empty forests.
class Forest {
 public:
  Forest(ForestConfig config, int feature_dim, std::vector<Tree> trees,
         Eigen::Vector2i frame_size = Eigen::Vector2i::Zero());

  const ForestConfig& config() const { return config_; }
  int feature_dim() const { return feature_dim_; }
  int label_dim() const { return config_.label_dim; }
  const std::vector<Tree>& trees() const { return trees_; }
  /// Frame size the training pairs were rendered at ((0, 0) if unknown).
  const Eigen::Vector2i& frame_size() const { return frame_size_; }

 private:
  ForestConfig config_;
  int feature_dim_ = 0;
  std::vector<Tree> trees_;
  Eigen::Vector2i frame_size_;
};

/// Mean of the tree outputs and their unbiased per-axis std, floored at
/// config().sigma_floor. Throws ArgumentError on a dimension mismatch.
MotionEstimate predict(const Forest& forest, const Eigen::Ref<const Eigen::VectorXf>& features);

/// Trains one tree per bootstrap resample. Each node keeps, among
/// candidate_splits random proposals, the split with the largest reduction of
/// the summed per-axis label variance. X holds one sample per row.
Forest train(const Eigen::Ref<const Eigen::MatrixXf>& X, const Eigen::Ref<const Eigen::MatrixXd>& Y,
             const ForestConfig& config, Eigen::Vector2i frame_size = Eigen::Vector2i::Zero());

/// Binary "RRF1" stream: magic, version, config, trees, FNV-1a checksum.
std::string serialize(const Forest& forest);
/// Throws FormatError on bad magic, version, checksum or truncation.
Forest deserialize(std::string_view bytes);

void save_forest(const std::filesystem::path& path, const Forest& forest);
Forest load_forest(const std::filesystem::path& path);

/// Human-readable dump for debugging.
std::string to_json(const Forest& forest, int indent = 2);

}  // namespace swipe::forest
