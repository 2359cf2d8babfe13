#pragma once

#include "swipe/image.hpp"

#include <vector>

namespace swipe::features {

/// Real (cosine) Gabor kernel
///   g = exp(-xr^2 / (2 sigma^2) - yr^2 / (2 (sigma/gamma)^2)) * cos(2 pi xr / lambda)
/// with (xr, yr) the coordinates rotated by theta. The kernel spans three
/// standard deviations of the wider Gaussian axis.
struct GaborFilter {
  double lambda = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double gamma = 1.0;
  ImageD kernel;

  int half_width() const { return static_cast<int>(kernel.cols() / 2); }
};

GaborFilter make_gabor(double lambda, double theta, double sigma, double gamma);

/// The 33-filter bank: one low-frequency filter followed by eight
/// orientations for each of four (wavelength, sigma, aspect) settings.
std::vector<GaborFilter> build_gabor_bank();

/// Immutable, lazily built shared bank.
const std::vector<GaborFilter>& gabor_bank();

/// Largest kernel half-width in the shared bank.
int gabor_bank_half_width();

/// Convolves `response` with every filter of the shared bank ("same" size,
/// edge-clamped borders). Result i corresponds to gabor_bank()[i].
std::vector<ImageD> apply_gabor_bank(const ImageD& response);

/// Spatial reference for a single filter; used to cross-check the FFT path.
ImageD convolve_same_clamped(const ImageD& image, const ImageD& kernel);

}  // namespace swipe::features
