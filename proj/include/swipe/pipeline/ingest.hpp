#pragma once

#include "swipe/image.hpp"

#include <filesystem>
#include <vector>

namespace swipe::pipeline {

/// Frames at working resolution plus the files they came from.
struct IngestedFrames {
  std::vector<Frame> frames;
  std::vector<std::filesystem::path> sources;
  Eigen::Vector2i source_size = Eigen::Vector2i::Zero();
};

/// PNG/JPEG files of a directory sorted by filename, or the lines of a frame
/// list file (paths relative to the list; blank and '#' lines skipped).
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& input);

/// Decodes, grayscales and downscales every frame so its longer side is at
/// most max_dim; all frames share the first frame's working size. Throws
/// ArgumentError for fewer than two frames or aspect ratios differing from the
/// first frame's by more than 5%, IoError naming any unreadable file.
IngestedFrames ingest(const std::filesystem::path& input, int max_dim);

/// Same, for an explicit ordered file list.
IngestedFrames ingest_files(std::vector<std::filesystem::path> files, int max_dim);

}  // namespace swipe::pipeline
