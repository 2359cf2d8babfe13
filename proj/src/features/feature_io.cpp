#include "swipe/features/feature_io.hpp"

#include "swipe/binary_io.hpp"

#include <cstring>

namespace swipe::features {

std::string serialize_features(const FeatureVector& v) {
  ByteWriter w;
  w.raw(kFeatureMagic, sizeof(kFeatureMagic));
  w.put<std::uint32_t>(kFeatureFormatVersion);
  w.put<std::uint64_t>(static_cast<std::uint64_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) w.put<float>(v[i]);
  return w.take();
}

FeatureVector deserialize_features(const std::string& bytes) {
  ByteReader r(bytes);
  char magic[4];
  r.raw(magic, sizeof(magic));
  if (std::memcmp(magic, kFeatureMagic, sizeof(magic)) != 0) throw FormatError("not a feature file");
  if (r.get<std::uint32_t>() != kFeatureFormatVersion) throw FormatError("unsupported feature file version");
  const auto dim = r.get<std::uint64_t>();
  if (dim * sizeof(float) != r.remaining()) throw FormatError("feature file length does not match header");
  FeatureVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = r.get<float>();
  return v;
}

void write_features(const std::filesystem::path& path, const FeatureVector& v) {
  write_file_atomic(path, serialize_features(v));
}

FeatureVector read_features(const std::filesystem::path& path) {
  return deserialize_features(read_file(path));
}

}  // namespace swipe::features
