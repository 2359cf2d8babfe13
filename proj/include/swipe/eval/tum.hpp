#pragma once

#include "swipe/eval/poses.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace swipe::eval {

/// Lines "timestamp tx ty tz qx qy qz qw"; blank lines and '#' comments are
/// skipped. Throws FormatError naming the offending line.
std::vector<CameraPose> parse_tum(std::istream& in);
std::vector<CameraPose> read_tum(const std::filesystem::path& path);

/// Image list "timestamp filename" (TUM rgb.txt); filenames resolve
/// relative to the list's directory.
struct TimedImage {
  double timestamp = 0.0;
  std::filesystem::path path;
};
std::vector<TimedImage> read_tum_image_list(const std::filesystem::path& path);

void write_tum(std::ostream& out, std::span<const CameraPose> poses);
void write_tum(const std::filesystem::path& path, std::span<const CameraPose> poses);

}  // namespace swipe::eval
