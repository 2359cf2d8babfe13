#pragma once

#include "swipe/features/extract.hpp"
#include "swipe/image.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>

namespace swipe::pipeline {

/// Environment variable naming the default feature cache directory.
inline constexpr const char* kCacheDirEnv = "SWIPE_CACHE_DIR";

/// Content hash of both rasters (size and pixels) combined with the feature
/// encoding fingerprint, so a changed extractor never reuses stale entries.
std::uint64_t pair_key(const Frame& a, const Frame& b);

/// Append-only on-disk feature store, one atomically written file per key.
/// A default-constructed cache is disabled and always misses.
class FeatureCache {
 public:
  FeatureCache() = default;
  explicit FeatureCache(std::filesystem::path dir);

  /// Cache at $SWIPE_CACHE_DIR, or disabled when unset.
  static FeatureCache from_environment();

  bool enabled() const { return dir_.has_value(); }
  const std::optional<std::filesystem::path>& directory() const { return dir_; }

  /// Unreadable or corrupt entries count as misses.
  std::optional<features::FeatureVector> load(std::uint64_t key) const;
  void store(std::uint64_t key, const features::FeatureVector& v) const;

  /// Cached features for (a, b), extracting and storing them on a miss.
  features::FeatureVector features(const Frame& a, const Frame& b) const;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path entry(std::uint64_t key) const;

  std::optional<std::filesystem::path> dir_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
};

}  // namespace swipe::pipeline
