#include "swipe/synth/sequence.hpp"

#include "swipe/errors.hpp"
#include "swipe/hash.hpp"
#include "swipe/random.hpp"

#include <cmath>
#include <limits>

namespace swipe::synth {

std::vector<Frame> render_sequence(const SceneSpec& scene, std::span<const CameraState> cameras, double fps) {
  std::vector<Frame> frames;
  frames.reserve(cameras.size());
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    const int index = static_cast<int>(i);
    frames.push_back(make_frame(render(scene, cameras[i], i), index, index / fps));
  }
  return frames;
}

std::vector<eval::CameraPose> camera_poses(std::span<const CameraState> cameras, double meters_per_pixel,
                                           double fps) {
  std::vector<eval::CameraPose> poses(cameras.size());
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    poses[i].position = Eigen::Vector3d(cameras[i].translation.x(), -cameras[i].translation.y(), 0.0) * meters_per_pixel;
    poses[i].timestamp = static_cast<double>(i) / fps;
  }
  return poses;
}

Sequence planar_sweep(const SweepOptions& options) {
  if (options.frames < 2) throw ArgumentError("a sweep needs at least two frames");
  if (!(options.step > 0.0)) throw ArgumentError("sweep step must be positive");
  Rng rng(mix_seed(options.seed, 0x5eed));

  Sequence seq;
  SceneSpec& scene = seq.scene;
  scene.width = options.width;
  scene.height = options.height;
  scene.rng_seed = options.seed;
  scene.sensor_noise = 0.005;
  scene.family = TextureFamily::Mixed;

  Texture rich;
  rich.kind = TextureKind::ValueNoise;
  rich.base = 0.5;
  rich.contrast = 0.4;
  rich.scale = 5.0;
  rich.octaves = 3;
  rich.seed = rng.next();
  Layer background;
  background.texture = rich;
  scene.layers.push_back(background);

  // Segments are laid out along the sweep in layer coordinates.
  const double travel = options.step * options.width * (options.frames - 1);
  const double inf = std::numeric_limits<double>::infinity();
  auto segment = [&](double from, double to, const Texture& texture) {
    Layer l;
    l.texture = texture;
    l.extent = Eigen::AlignedBox2d(Eigen::Vector2d(from * travel + options.width / 2.0, -inf),
                                   Eigen::Vector2d(to * travel + options.width / 2.0, inf));
    scene.layers.push_back(l);
  };
  if (options.low_contrast_segment) {
    Texture dull = rich;
    dull.contrast = 0.015;
    dull.octaves = 1;
    dull.seed = rng.next();
    segment(0.25, 0.45, dull);
  }
  if (options.periodic_segment) {
    Texture grid;
    grid.kind = TextureKind::Grating;
    grid.base = 0.5;
    grid.contrast = 0.4;
    grid.period = 16.0;
    grid.crossed = true;
    segment(0.6, 0.8, grid);
  }

  const double amplitude = options.meander * options.height;
  const double phase = rng.uniform(0.0, 2.0 * M_PI);
  for (int i = 0; i < options.frames; ++i) {
    CameraState cam;
    const double s = static_cast<double>(i) / (options.frames - 1);
    cam.translation = {i * options.step * options.width, amplitude * std::sin(2.0 * M_PI * 1.5 * s + phase)};
    cam.time = i;
    seq.cameras.push_back(cam);
  }
  seq.frames = render_sequence(scene, seq.cameras);
  seq.poses = camera_poses(seq.cameras, options.meters_per_pixel);
  return seq;
}

}  // namespace swipe::synth
