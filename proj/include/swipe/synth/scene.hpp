#pragma once

#include "swipe/image.hpp"
#include "swipe/synth/texture.hpp"

#include <Eigen/Geometry>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace swipe::synth {

enum class TextureFamily { Noise, Periodic, Stripes, Flat, Mixed };

std::string to_string(TextureFamily family);
TextureFamily family_from_string(const std::string& name);

/// A textured billboard. Layer coordinates are the camera's pixel coordinates
/// plus camera translation / depth, so depth 1 moves with the camera and
/// larger depths show parallax. `extent` limits the billboard in layer
/// coordinates (unbounded when empty). Screen-fixed layers ignore the camera
/// (lens glare, overlays).
struct Layer {
  Texture texture;
  double depth = 1.0;
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
  std::optional<Eigen::AlignedBox2d> extent;
  bool screen_fixed = false;
};

/// Layers are composited back to front: layers.front() is the background.
struct SceneSpec {
  std::vector<Layer> layers;
  TextureFamily family = TextureFamily::Noise;
  std::uint64_t rng_seed = 0;
  /// Per-frame additive Gaussian noise std (0 disables it).
  double sensor_noise = 0.0;
  int width = 160;
  int height = 120;
};

/// Throws ArgumentError on an empty layer list, depth < 1 or non-finite depth.
void validate(const SceneSpec& spec);

struct CameraState {
  /// Camera translation, pixels.
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();
  /// Rotation about the optical axis, degrees (see rotate_about_center).
  double rotation_deg = 0.0;
  /// Frame time; dynamic layers move by velocity * time.
  double time = 0.0;
};

/// Renders with 2x2 supersampling per pixel. `noise_stream` selects the
/// sensor-noise realization.
Image render(const SceneSpec& spec, const CameraState& camera, std::uint64_t noise_stream = 0);

/// Variations the random scene factory may apply.
struct SceneVariation {
  bool allow_low_contrast = true;
  bool allow_parallax = true;
  bool allow_sensor_noise = true;
};

SceneSpec random_scene(TextureFamily family, std::uint64_t seed, int width = 160, int height = 120,
                       const SceneVariation& variation = {});

/// Two frames of one scene and the motion between them. Translation labels
/// are (dx, dy) camera motion in image-width units; rotation labels hold one
/// angle in degrees.
struct LabeledPair {
  Frame a;
  Frame b;
  Eigen::VectorXd label;
  TextureFamily family = TextureFamily::Noise;
};

/// Renders the pair for a known camera translation (image-width units).
LabeledPair render_translation_pair(const SceneSpec& spec, Eigen::Vector2d label);
/// Renders the pair for a known optical-axis rotation (degrees).
LabeledPair render_rotation_pair(const SceneSpec& spec, double angle_deg);

/// Label drawn uniformly from [-max_shift, max_shift]^2 using the scene seed.
/// Requires max_shift in (0, 0.3].
LabeledPair generate_translation_pair(const SceneSpec& spec, double max_shift);
/// Angle drawn uniformly from [-max_angle, max_angle]; max_angle in (0, 15].
LabeledPair generate_rotation_pair(const SceneSpec& spec, double max_angle);

}  // namespace swipe::synth
