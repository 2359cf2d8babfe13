#pragma once

#include "swipe/eval/poses.hpp"
#include "swipe/image.hpp"
#include "swipe/synth/scene.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace swipe::synth {

/// Rendered frames with the camera path that produced them.
struct Sequence {
  SceneSpec scene;
  std::vector<CameraState> cameras;
  std::vector<Frame> frames;
  /// Camera poses for a viewer looking down -z at the scene plane.
  std::vector<eval::CameraPose> poses;
};

/// Frame i uses sensor-noise stream i and timestamp i / fps.
std::vector<Frame> render_sequence(const SceneSpec& scene, std::span<const CameraState> cameras, double fps = 30.0);

/// Pixel translation t maps to world (t.x, -t.y, 0) * meters_per_pixel with
/// identity orientation (image y points down, world y up).
std::vector<eval::CameraPose> camera_poses(std::span<const CameraState> cameras, double meters_per_pixel,
                                           double fps = 30.0);

struct SweepOptions {
  int frames = 300;
  int width = 160;
  int height = 120;
  /// Horizontal advance per frame, image-width units.
  double step = 0.02;
  /// Vertical meander amplitude, image-height units.
  double meander = 0.3;
  bool low_contrast_segment = true;
  bool periodic_segment = true;
  double meters_per_pixel = 0.001;
  std::uint64_t seed = 1;
};

/// Planar left-to-right sweep over rich noise interrupted by a low-contrast
/// segment and a crossed-grating segment.
Sequence planar_sweep(const SweepOptions& options = {});

}  // namespace swipe::synth
