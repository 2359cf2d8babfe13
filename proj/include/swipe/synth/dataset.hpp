#pragma once

#include "swipe/features/extract.hpp"
#include "swipe/synth/scene.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace swipe::synth {

enum class MotionKind { Translation, Rotation };

std::string to_string(MotionKind kind);
MotionKind motion_kind_from_string(const std::string& name);

struct DatasetOptions {
  int width = 160;
  int height = 120;
  /// Translation range, image-width units (per axis).
  double max_shift = 0.1;
  /// Rotation range, degrees.
  double max_angle = 5.0;
  /// Relative sampling weights for noise, periodic, stripes, flat, mixed.
  std::array<double, 5> family_weights = {0.30, 0.15, 0.15, 0.15, 0.25};
  int threads = 0;
};

/// Feature matrix (one row per pair, column-major so every feature is a
/// contiguous column) with labels in the same row order.
struct Dataset {
  Eigen::MatrixXf features;
  Eigen::MatrixXd labels;
  std::vector<TextureFamily> families;
  MotionKind kind = MotionKind::Translation;
  /// Render size of the pairs, (0, 0) when unknown.
  Eigen::Vector2i frame_size = Eigen::Vector2i::Zero();

  Eigen::Index size() const { return features.rows(); }
};

/// Family drawn for pair `index` of a dataset with the given seed.
TextureFamily sample_family(std::uint64_t seed, std::size_t index, const DatasetOptions& options);

/// Renders and labels pair `index`; deterministic in (seed, index).
LabeledPair make_pair(MotionKind kind, std::uint64_t seed, std::size_t index,
                      const DatasetOptions& options);

/// `count` labeled feature vectors; pairs are independent, so the result does
/// not depend on the thread count.
Dataset generate_dataset(int count, MotionKind kind, std::uint64_t seed,
                         const DatasetOptions& options = {});

/// Builds a dataset from explicit pairs (used for held-out evaluations).
Dataset featurize(const std::vector<LabeledPair>& pairs, MotionKind kind, int threads = 0);

/// Directory layout: features/NNNNNN.feat, labels.csv (index, dx, dy | angle,
/// family) and manifest.json (seed, kind, count, options).
void save_dataset(const std::filesystem::path& dir, const Dataset& data, std::uint64_t seed,
                  const DatasetOptions& options);
Dataset load_dataset(const std::filesystem::path& dir);

}  // namespace swipe::synth
