#pragma once

#include "swipe/image.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace swipe::pipeline {

inline constexpr int kManifestVersion = 1;

/// One frame of the mosaic. x, y are layout coordinates in image-width units
/// (x right, y down); rotation is the frame's estimated roll in degrees.
struct FrameRecord {
  std::string image;
  double x = 0.0;
  double y = 0.0;
  double rotation = 0.0;
  double timestamp = 0.0;

  bool operator==(const FrameRecord&) const = default;
};

struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool operator==(const Bounds&) const = default;
};

/// Layout bundle read by the viewer. JSON keys, in order:
/// version, frames[{image, x, y, rotation, timestamp}],
/// bounds{min_x, min_y, max_x, max_y}, thumbnail.
struct MosaicManifest {
  int version = kManifestVersion;
  std::vector<FrameRecord> frames;
  Bounds bounds;
  std::string thumbnail;

  bool operator==(const MosaicManifest&) const = default;
};

/// Bounding box of the frame positions (zero box when empty).
Bounds compute_bounds(const std::vector<FrameRecord>& frames);

std::string to_json(const MosaicManifest& manifest);
/// Throws FormatError on malformed JSON, missing keys, a version other than
/// 1 or non-finite coordinates.
MosaicManifest parse_manifest(std::string_view json);

void write_manifest(const std::filesystem::path& path, const MosaicManifest& manifest);
MosaicManifest read_manifest(const std::filesystem::path& path);

/// Scatter plot of the frame positions (first frame brighter), `size` pixels
/// on the longer side, aspect following the bounds.
Image render_minimap(const MosaicManifest& manifest, int size = 256);

}  // namespace swipe::pipeline
