#include "swipe/pipeline/cache.hpp"

#include "swipe/errors.hpp"
#include "swipe/features/feature_io.hpp"
#include "swipe/hash.hpp"

#include <cstdio>
#include <cstdlib>

namespace swipe::pipeline {
namespace fs = std::filesystem;

std::uint64_t pair_key(const Frame& a, const Frame& b) {
  Fnv1a h;
  h.update_value(features::encoding_fingerprint());
  for (const Frame* f : {&a, &b}) {
    h.update_value(static_cast<std::int32_t>(f->width()));
    h.update_value(static_cast<std::int32_t>(f->height()));
    h.update(f->pixels.data(), sizeof(float) * static_cast<std::size_t>(f->pixels.size()));
  }
  return h.digest();
}

FeatureCache::FeatureCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(*dir_); }

FeatureCache FeatureCache::from_environment() {
  const char* dir = std::getenv(kCacheDirEnv);
  if (dir == nullptr || *dir == '\0') return FeatureCache();
  return FeatureCache(dir);
}

fs::path FeatureCache::entry(std::uint64_t key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.feat", static_cast<unsigned long long>(key));
  return *dir_ / name;
}

std::optional<features::FeatureVector> FeatureCache::load(std::uint64_t key) const {
  if (!dir_) return std::nullopt;
  const fs::path path = entry(key);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  try {
    features::FeatureVector v = features::read_features(path);
    if (v.size() != features::kFeatureDim) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void FeatureCache::store(std::uint64_t key, const features::FeatureVector& v) const {
  if (dir_) features::write_features(entry(key), v);
}

features::FeatureVector FeatureCache::features(const Frame& a, const Frame& b) const {
  const std::uint64_t key = enabled() ? pair_key(a, b) : 0;
  if (enabled()) {
    if (auto cached = load(key)) {
      ++hits_;
      return *std::move(cached);
    }
  }
  ++misses_;
  features::FeatureVector v = features::extract_features(a, b);
  store(key, v);
  return v;
}

}  // namespace swipe::pipeline
