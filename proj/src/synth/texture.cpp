#include "swipe/synth/texture.hpp"

#include "swipe/hash.hpp"

#include <cmath>

namespace swipe::synth {

namespace {

double lattice(std::int64_t ix, std::int64_t iy, std::uint64_t seed) {
  const std::uint64_t h = mix_seed(seed ^ (static_cast<std::uint64_t>(ix) * 0x8da6b343ULL),
                                   static_cast<std::uint64_t>(iy) * 0xd8163841ULL);
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

double noise_octave(double x, double y, std::uint64_t seed) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double tx = smooth(x - fx);
  const double ty = smooth(y - fy);
  const double a = lattice(ix, iy, seed);
  const double b = lattice(ix + 1, iy, seed);
  const double c = lattice(ix, iy + 1, seed);
  const double d = lattice(ix + 1, iy + 1, seed);
  return (a + (b - a) * tx) * (1 - ty) + (c + (d - c) * tx) * ty;
}

double wrap(double v, double period) {
  const double r = std::fmod(v, period);
  return r < 0 ? r + period : r;
}

}  // namespace

double value_noise(double x, double y, double scale, int octaves, std::uint64_t seed) {
  double sum = 0.0;
  double norm = 0.0;
  double amp = 1.0;
  double s = scale;
  for (int o = 0; o < octaves; ++o) {
    sum += amp * noise_octave(x / s, y / s, mix_seed(seed, static_cast<std::uint64_t>(o)));
    norm += amp;
    amp *= 0.5;
    s *= 0.5;
  }
  return sum / norm;
}

double Texture::sample(double x, double y) const {
  switch (kind) {
    case TextureKind::Flat:
      return base;
    case TextureKind::ValueNoise:
      return base + contrast * value_noise(x, y, scale, octaves, seed);
    case TextureKind::Grating: {
      const double c = std::cos(angle);
      const double s = std::sin(angle);
      double v = std::sin(2 * M_PI * (x * c + y * s) / period + phase);
      if (crossed) v *= std::sin(2 * M_PI * (-x * s + y * c) / period + phase);
      return base + contrast * v;
    }
    case TextureKind::TiledNoise: {
      const double tx = tile_x ? wrap(x, period) : x;
      const double ty = tile_y ? wrap(y, period) : y;
      return base + contrast * value_noise(tx, ty, scale, octaves, seed);
    }
  }
  return base;
}

}  // namespace swipe::synth
