#pragma once

#include "swipe/image.hpp"

#include <complex>

namespace swipe::fft {

/// Half spectrum of a real rows x cols signal: rows x (cols / 2 + 1).
using Spectrum = Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Smallest 2,3,5-smooth integer >= n.
int good_size(int n);

/// Real-to-complex 2D DFT of `src` zero-padded to rows x cols (src at origin).
Spectrum forward(const ImageD& src, int rows, int cols);

/// Normalized inverse of a half spectrum back to a real rows x cols array.
ImageD inverse(const Spectrum& half, int rows, int cols);

/// Valid-mode cross-correlation: out(dy, dx) = sum_{u,v} t(u,v) s(u+dy, v+dx),
/// for 0 <= dy <= s.rows()-t.rows(), 0 <= dx <= s.cols()-t.cols().
ImageD correlate_valid(const ImageD& t, const ImageD& s);

/// Full cross-correlation of two arrays via zero-padded transforms:
/// out(dy + t.rows() - 1, dx + t.cols() - 1) = sum t(u,v) s(u+dy, v+dx) over
/// the overlap, for -(t.rows()-1) <= dy <= s.rows()-1 (same for x).
ImageD correlate_full(const ImageD& t, const ImageD& s);

}  // namespace swipe::fft
