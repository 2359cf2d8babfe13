#pragma once

#include "swipe/features/extract.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace swipe::features {

/// Flat little-endian float32 array behind a 16-byte header:
/// magic "NCCF", uint32 version, uint64 element count.
inline constexpr char kFeatureMagic[4] = {'N', 'C', 'C', 'F'};
inline constexpr std::uint32_t kFeatureFormatVersion = 1;

std::string serialize_features(const FeatureVector& v);
FeatureVector deserialize_features(const std::string& bytes);

/// Atomic write (temporary file + rename).
void write_features(const std::filesystem::path& path, const FeatureVector& v);
FeatureVector read_features(const std::filesystem::path& path);

}  // namespace swipe::features
