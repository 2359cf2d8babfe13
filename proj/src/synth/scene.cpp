#include "swipe/synth/scene.hpp"

#include "swipe/errors.hpp"
#include "swipe/hash.hpp"
#include "swipe/random.hpp"

#include <algorithm>
#include <cmath>

namespace swipe::synth {

std::string to_string(TextureFamily family) {
  switch (family) {
    case TextureFamily::Noise: return "noise";
    case TextureFamily::Periodic: return "periodic";
    case TextureFamily::Stripes: return "stripes";
    case TextureFamily::Flat: return "flat";
    case TextureFamily::Mixed: return "mixed";
  }
  return "noise";
}

TextureFamily family_from_string(const std::string& name) {
  for (auto f : {TextureFamily::Noise, TextureFamily::Periodic, TextureFamily::Stripes,
                 TextureFamily::Flat, TextureFamily::Mixed}) {
    if (to_string(f) == name) return f;
  }
  throw ArgumentError("unknown texture family '" + name + "'");
}

void validate(const SceneSpec& spec) {
  if (spec.layers.empty()) throw ArgumentError("scene needs at least one layer");
  for (const Layer& l : spec.layers) {
    if (!std::isfinite(l.depth) || l.depth < 1.0) throw ArgumentError("layer depth must be finite and >= 1");
  }
  if (spec.width <= 0 || spec.height <= 0) throw ArgumentError("scene size must be positive");
}

Image render(const SceneSpec& spec, const CameraState& camera, std::uint64_t noise_stream) {
  validate(spec);
  const int w = spec.width;
  const int h = spec.height;
  const double t = camera.rotation_deg * M_PI / 180.0;
  const double ct = std::cos(t);
  const double st = std::sin(t);
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  const bool rotated = camera.rotation_deg != 0.0;

  std::vector<Eigen::Vector2d> offsets(spec.layers.size());
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const Layer& l = spec.layers[i];
    offsets[i] = l.screen_fixed ? Eigen::Vector2d::Zero()
                                : Eigen::Vector2d(camera.translation / l.depth + l.velocity * camera.time);
  }

  auto shade = [&](double px, double py) {
    if (rotated) {
      const double dx = px - cx;
      const double dy = py - cy;
      px = cx + ct * dx - st * dy;
      py = cy + st * dx + ct * dy;
    }
    for (std::size_t i = spec.layers.size(); i-- > 0;) {
      const Layer& l = spec.layers[i];
      const Eigen::Vector2d q(px + offsets[i].x(), py + offsets[i].y());
      if (l.extent && !l.extent->contains(q)) continue;
      return l.texture.sample(q.x(), q.y());
    }
    return 0.0;
  };

  Image out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (double sy : {-0.25, 0.25}) {
        for (double sx : {-0.25, 0.25}) acc += shade(x + sx, y + sy);
      }
      out(y, x) = static_cast<float>(acc / 4.0);
    }
  }
  if (spec.sensor_noise > 0.0) {
    Rng rng(mix_seed(spec.rng_seed ^ 0x5e5e5e5eULL, noise_stream));
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      out.data()[i] += static_cast<float>(spec.sensor_noise * rng.normal());
    }
  }
  return out.max(0.0f).min(1.0f);
}

namespace {

Texture random_noise_texture(Rng& rng, bool low_contrast) {
  Texture t;
  t.kind = TextureKind::ValueNoise;
  t.base = rng.uniform(0.3, 0.7);
  t.contrast = low_contrast ? rng.uniform(0.01, 0.05) : rng.uniform(0.25, 0.5);
  t.scale = rng.uniform(1.5, 6.0);
  t.octaves = 1 + static_cast<int>(rng.below(3));
  t.seed = rng.next();
  return t;
}

Texture random_periodic_texture(Rng& rng) {
  Texture t;
  t.base = rng.uniform(0.3, 0.7);
  t.contrast = rng.uniform(0.2, 0.45);
  t.period = rng.uniform(6.0, 20.0);
  t.seed = rng.next();
  if (rng.chance(0.7)) {
    t.kind = TextureKind::TiledNoise;
    t.scale = rng.uniform(1.5, 4.0);
    t.octaves = 1 + static_cast<int>(rng.below(2));
    const auto axes = rng.below(3);
    t.tile_x = axes != 1;
    t.tile_y = axes != 0;
  } else {
    t.kind = TextureKind::Grating;
    t.crossed = true;
    t.angle = rng.uniform(-0.1, 0.1);
    t.phase = rng.uniform(0.0, 2 * M_PI);
  }
  return t;
}

Texture random_stripe_texture(Rng& rng) {
  Texture t;
  t.kind = TextureKind::Grating;
  t.base = rng.uniform(0.3, 0.7);
  t.contrast = rng.uniform(0.2, 0.45);
  t.period = rng.uniform(6.0, 40.0);
  t.angle = rng.chance(0.5) ? 0.0 : M_PI / 2;
  t.angle += rng.uniform(-0.05, 0.05);
  t.phase = rng.uniform(0.0, 2 * M_PI);
  return t;
}

Texture random_flat_texture(Rng& rng) {
  Texture t;
  t.base = rng.uniform(0.1, 0.95);
  if (rng.chance(0.5)) {
    t.kind = TextureKind::ValueNoise;
    t.contrast = rng.uniform(0.0, 0.01);
    t.scale = rng.uniform(4.0, 20.0);
    t.seed = rng.next();
  }
  return t;
}

Eigen::AlignedBox2d random_billboard(Rng& rng, int w, int h, double min_frac, double max_frac) {
  const double bw = rng.uniform(min_frac, max_frac) * w;
  const double bh = rng.uniform(min_frac, max_frac) * h;
  const double x0 = rng.uniform(-0.2 * w, w - 0.3 * bw);
  const double y0 = rng.uniform(-0.2 * h, h - 0.3 * bh);
  return Eigen::AlignedBox2d(Eigen::Vector2d(x0, y0), Eigen::Vector2d(x0 + bw, y0 + bh));
}


Layer plain_layer(Texture texture) {
  Layer layer;
  layer.texture = std::move(texture);
  return layer;
}

}  // namespace

SceneSpec random_scene(TextureFamily family, std::uint64_t seed, int width, int height,
                       const SceneVariation& variation) {
  Rng rng(mix_seed(seed, 0x5ce7e));
  SceneSpec spec;
  spec.family = family;
  spec.rng_seed = seed;
  spec.width = width;
  spec.height = height;
  if (variation.allow_sensor_noise) spec.sensor_noise = rng.uniform(0.0, 0.01);

  switch (family) {
    case TextureFamily::Noise: {
      const bool low = variation.allow_low_contrast && rng.chance(0.2);
      Layer bg = plain_layer(random_noise_texture(rng, low));
      if (variation.allow_parallax && rng.chance(0.4)) {
        bg.depth = rng.uniform(1.5, 4.0);
        spec.layers.push_back(bg);
        const int extra = 1 + static_cast<int>(rng.below(2));
        for (int i = 0; i < extra; ++i) {
          Layer fg = plain_layer(random_noise_texture(rng, low));
          fg.extent = random_billboard(rng, width, height, 0.3, 0.7);
          spec.layers.push_back(fg);
        }
      } else {
        spec.layers.push_back(bg);
      }
      break;
    }
    case TextureFamily::Periodic:
      spec.layers.push_back(plain_layer(random_periodic_texture(rng)));
      break;
    case TextureFamily::Stripes:
      spec.layers.push_back(plain_layer(random_stripe_texture(rng)));
      break;
    case TextureFamily::Flat:
      spec.layers.push_back(plain_layer(random_flat_texture(rng)));
      if (variation.allow_sensor_noise) spec.sensor_noise = rng.uniform(0.005, 0.02);
      break;
    case TextureFamily::Mixed: {
      Layer bg;
      const auto kind = rng.below(3);
      bg.texture = kind == 0 ? random_noise_texture(rng, false)
                   : kind == 1 ? random_flat_texture(rng)
                               : random_stripe_texture(rng);
      bg.depth = variation.allow_parallax ? rng.uniform(2.0, 6.0) : 1.0;
      spec.layers.push_back(bg);
      const int boards = 1 + static_cast<int>(rng.below(3));
      for (int i = 0; i < boards; ++i) {
        Layer b;
        const auto k = rng.below(4);
        b.texture = k == 0 ? random_flat_texture(rng)
                    : k == 1 ? random_stripe_texture(rng)
                    : k == 2 ? random_periodic_texture(rng)
                             : random_noise_texture(rng, false);
        b.depth = variation.allow_parallax ? rng.uniform(1.0, 2.0) : 1.0;
        b.extent = random_billboard(rng, width, height, 0.25, 0.6);
        spec.layers.push_back(b);
      }
      if (rng.chance(0.3)) {
        Layer mover = plain_layer(random_noise_texture(rng, false));
        mover.extent = random_billboard(rng, width, height, 0.15, 0.35);
        mover.velocity = {rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)};
        spec.layers.push_back(mover);
      }
      if (rng.chance(0.25)) {
        // Saturated region: glare fixed to the lens or a blown-out surface.
        Layer glare;
        glare.texture.base = 1.0;
        glare.screen_fixed = rng.chance(0.5);
        glare.extent = random_billboard(rng, width, height, 0.5, 0.9);
        spec.layers.push_back(glare);
      }
      break;
    }
  }
  return spec;
}

LabeledPair render_translation_pair(const SceneSpec& spec, Eigen::Vector2d label) {
  LabeledPair pair;
  pair.family = spec.family;
  pair.label = label;
  CameraState cam_b;
  cam_b.translation = label * static_cast<double>(spec.width);
  cam_b.time = 1.0;
  pair.a = make_frame(render(spec, CameraState{}, 0), 0);
  pair.b = make_frame(render(spec, cam_b, 1), 1);
  return pair;
}

LabeledPair render_rotation_pair(const SceneSpec& spec, double angle_deg) {
  LabeledPair pair;
  pair.family = spec.family;
  pair.label = Eigen::VectorXd::Constant(1, angle_deg);
  CameraState cam_b;
  cam_b.rotation_deg = angle_deg;
  pair.a = make_frame(render(spec, CameraState{}, 0), 0);
  pair.b = make_frame(render(spec, cam_b, 1), 1);
  return pair;
}

LabeledPair generate_translation_pair(const SceneSpec& spec, double max_shift) {
  if (!(max_shift > 0.0 && max_shift <= 0.3)) throw ArgumentError("max_shift must lie in (0, 0.3]");
  Rng rng(mix_seed(spec.rng_seed, 0x7a11));
  const double dx = rng.uniform(-max_shift, max_shift);
  const double dy = rng.uniform(-max_shift, max_shift);
  const Eigen::Vector2d label(dx, dy);
  return render_translation_pair(spec, label);
}

LabeledPair generate_rotation_pair(const SceneSpec& spec, double max_angle) {
  if (!(max_angle > 0.0 && max_angle <= 15.0)) throw ArgumentError("max_angle must lie in (0, 15]");
  Rng rng(mix_seed(spec.rng_seed, 0x4074));
  return render_rotation_pair(spec, rng.uniform(-max_angle, max_angle));
}

}  // namespace swipe::synth
