#pragma once

#include "swipe/features/encode.hpp"
#include "swipe/image.hpp"

#include <Eigen/Core>

#include <cstdint>

namespace swipe::features {

using FeatureVector = Eigen::VectorXf;

/// Descriptor of the ordered pair (a, b): a supplies every template, b every
/// search window. Cells are visited level-ascending, then row, then column.
/// Throws ArgumentError when the frames differ in size.
FeatureVector extract_features(const Frame& a, const Frame& b);
FeatureVector extract_features(const Image& a, const Image& b);

/// Identifies the encoding layout; changes whenever the descriptor changes.
std::uint64_t encoding_fingerprint();

}  // namespace swipe::features
