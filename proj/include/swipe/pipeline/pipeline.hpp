#pragma once

#include "swipe/forest/forest.hpp"
#include "swipe/layout/loop_closure.hpp"
#include "swipe/layout/rotation.hpp"
#include "swipe/layout/solver.hpp"
#include "swipe/pipeline/cache.hpp"
#include "swipe/pipeline/manifest.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swipe::pipeline {

using Logger = std::function<void(const std::string&)>;

/// Failure inside one pipeline stage; the original exception is nested.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct LayoutOptions {
  int window = 4;
  bool loop_closure = true;
  layout::LoopOptions loops;
  /// Needs a rotation forest; otherwise rotations stay zero.
  bool rotation_correction = true;
  layout::RotationWeights rotation_weights;
  int threads = 0;
};

/// Pair selection, cached feature extraction, prediction, layout solve, loop
/// closure and optional rotational correction on in-memory frames.
layout::LayoutSolution run_layout(std::span<const Frame> frames, const forest::Forest& translation,
                                  const forest::Forest* rotation, const LayoutOptions& options,
                                  const FeatureCache& cache = FeatureCache(), const Logger& log = {});

/// Rotation estimates for the loop pairs of `solution` from centered overlap
/// crops; pairs whose overlap is too small are skipped.
layout::EstimateMap rotation_estimates(std::span<const Frame> frames, const layout::LayoutSolution& solution,
                                       const forest::Forest& rotation, int threads = 0);

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path translation_forest;
  std::optional<std::filesystem::path> rotation_forest;
  /// Longer working side in pixels; 0 uses the translation forest's frame size.
  int max_dim = 0;
  LayoutOptions layout;
  /// Feature cache directory; unset falls back to $SWIPE_CACHE_DIR.
  std::optional<std::filesystem::path> cache_dir;
};

/// Throws ArgumentError on window, neighbors, separation or size < 1.
void validate(const PipelineConfig& config);

struct PipelineResult {
  MosaicManifest manifest;
  layout::LayoutSolution layout;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
};

/// Ingest, layout and export of `config.input` into `config.output`
/// (manifest.json, images/, minimap.png). Errors carry the stage name.
PipelineResult run_pipeline(const PipelineConfig& config, const Logger& log = {});

/// Manifest for a solved layout with the given image names.
MosaicManifest make_manifest(const layout::LayoutSolution& solution, std::span<const Frame> frames,
                             const std::vector<std::string>& images, std::string thumbnail = "minimap.png");

/// Copies every referenced image from `source_dir` into out_dir/images,
/// rewrites the references and writes manifest.json plus the minimap.
MosaicManifest export_bundle(const MosaicManifest& manifest, const std::filesystem::path& source_dir,
                             const std::filesystem::path& out_dir);

}  // namespace swipe::pipeline
