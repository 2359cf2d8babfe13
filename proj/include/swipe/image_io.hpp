#pragma once

#include "swipe/image.hpp"

#include <array>
#include <filesystem>

namespace swipe {

/// Planar 8-bit-derived color image, channels in [0, 1].
struct ColorImage {
  std::array<Image, 3> channels;

  int width() const { return static_cast<int>(channels[0].cols()); }
  int height() const { return static_cast<int>(channels[0].rows()); }
};

/// Decodes an 8-bit PNG or JPEG (chosen by file signature). Gray inputs are
/// replicated into all three channels. Throws IoError naming the file.
ColorImage load_image(const std::filesystem::path& path);

/// Luminance 0.299 R + 0.587 G + 0.114 B.
Image to_grayscale(const ColorImage& img);

void save_png(const std::filesystem::path& path, const Image& gray);
void save_png(const std::filesystem::path& path, const ColorImage& rgb);

}  // namespace swipe
