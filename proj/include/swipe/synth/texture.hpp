#pragma once

#include <cstdint>

namespace swipe::synth {

enum class TextureKind { Flat, ValueNoise, Grating, TiledNoise };

/// Procedural intensity over the infinite plane. Sampling is a pure function
/// of (x, y) and the parameters, so any camera offset renders consistently.
struct Texture {
  TextureKind kind = TextureKind::Flat;
  double base = 0.5;
  double contrast = 0.0;
  /// Lattice spacing of the coarsest noise octave, pixels.
  double scale = 4.0;
  int octaves = 1;
  /// Grating wavelength or tile period, pixels.
  double period = 16.0;
  /// Grating wave-vector direction; 0 varies intensity along x.
  double angle = 0.0;
  double phase = 0.0;
  /// Grating only: multiply by a second grating at angle + pi/2.
  bool crossed = false;
  bool tile_x = true;
  bool tile_y = false;
  std::uint64_t seed = 0;

  double sample(double x, double y) const;
};

/// Smooth value noise in [-1, 1] summed over octaves (amplitude-normalized).
double value_noise(double x, double y, double scale, int octaves, std::uint64_t seed);

}  // namespace swipe::synth
