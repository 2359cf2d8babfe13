#include "swipe/pipeline/manifest.hpp"

#include "swipe/binary_io.hpp"
#include "swipe/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace swipe::pipeline {

Bounds compute_bounds(const std::vector<FrameRecord>& frames) {
  if (frames.empty()) return {};
  Bounds b{frames[0].x, frames[0].y, frames[0].x, frames[0].y};
  for (const FrameRecord& f : frames) {
    b.min_x = std::min(b.min_x, f.x);
    b.min_y = std::min(b.min_y, f.y);
    b.max_x = std::max(b.max_x, f.x);
    b.max_y = std::max(b.max_y, f.y);
  }
  return b;
}

std::string to_json(const MosaicManifest& m) {
  nlohmann::ordered_json j;
  j["version"] = m.version;
  auto& frames = j["frames"] = nlohmann::ordered_json::array();
  for (const FrameRecord& f : m.frames) {
    frames.push_back(
        {{"image", f.image}, {"x", f.x}, {"y", f.y}, {"rotation", f.rotation}, {"timestamp", f.timestamp}});
  }
  j["bounds"] = {{"min_x", m.bounds.min_x}, {"min_y", m.bounds.min_y}, {"max_x", m.bounds.max_x},
                 {"max_y", m.bounds.max_y}};
  j["thumbnail"] = m.thumbnail;
  return j.dump(2) + "\n";
}

namespace {

double finite(const nlohmann::json& j, const char* key) {
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw FormatError(std::string("manifest value '") + key + "' is not finite");
  return v;
}

}  // namespace

MosaicManifest parse_manifest(std::string_view text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    MosaicManifest m;
    m.version = j.at("version").get<int>();
    if (m.version != kManifestVersion) throw FormatError("unsupported manifest version " + std::to_string(m.version));
    for (const auto& f : j.at("frames")) {
      m.frames.push_back({f.at("image").get<std::string>(), finite(f, "x"), finite(f, "y"), finite(f, "rotation"),
                          finite(f, "timestamp")});
    }
    const auto& b = j.at("bounds");
    m.bounds = {finite(b, "min_x"), finite(b, "min_y"), finite(b, "max_x"), finite(b, "max_y")};
    m.thumbnail = j.at("thumbnail").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
}

void write_manifest(const std::filesystem::path& path, const MosaicManifest& manifest) {
  write_file_atomic(path, to_json(manifest));
}

MosaicManifest read_manifest(const std::filesystem::path& path) {
  try {
    return parse_manifest(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Image render_minimap(const MosaicManifest& manifest, int size) {
  if (size < 8) throw ArgumentError("minimap size must be >= 8");
  const Bounds& b = manifest.bounds;
  const double span_x = std::max(b.max_x - b.min_x, 1e-9);
  const double span_y = std::max(b.max_y - b.min_y, 1e-9);
  const double longest = std::max(span_x, span_y);
  const int margin = 4;
  const int w = std::max(2 * margin + 1, static_cast<int>(std::lround(size * span_x / longest)));
  const int h = std::max(2 * margin + 1, static_cast<int>(std::lround(size * span_y / longest)));
  const double scale = (std::max(w, h) - 2 * margin - 1) / longest;
  Image img = Image::Constant(h, w, 0.1f);
  auto dot = [&](const FrameRecord& f, float value, int radius) {
    const int cx = margin + static_cast<int>(std::lround((f.x - b.min_x) * scale));
    const int cy = margin + static_cast<int>(std::lround((f.y - b.min_y) * scale));
    for (int y = cy - radius; y <= cy + radius; ++y) {
      for (int x = cx - radius; x <= cx + radius; ++x) {
        if (x >= 0 && y >= 0 && x < w && y < h) img(y, x) = std::max(img(y, x), value);
      }
    }
  };
  for (const FrameRecord& f : manifest.frames) dot(f, 0.7f, 1);
  if (!manifest.frames.empty()) dot(manifest.frames.front(), 1.0f, 2);
  return img;
}

}  // namespace swipe::pipeline
