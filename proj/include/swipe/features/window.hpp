#pragma once

#include "swipe/image.hpp"

#include <array>

namespace swipe::features {

/// Grid levels of the NCC pyramid, coarsest first.
inline constexpr std::array<int, 5> kGridLevels = {1, 2, 4, 6, 8};

/// Total number of template/search cells over all levels (1+4+16+36+64).
inline constexpr int kCellCount = [] {
  int n = 0;
  for (int l : kGridLevels) n += l * l;
  return n;
}();

struct GridCell {
  int level = 1;
  int cell_x = 0;
  int cell_y = 0;
  Rect template_rect;
  Rect search_rect;
};

bool is_grid_level(int level);

/// Template is cell (cell_x, cell_y) of a level x level grid over a
/// width x height image; the search window grows it by one cell on every side,
/// clipped to the image. Throws ArgumentError on a bad level or index.
GridCell window_geometry(int level, int cell_x, int cell_y, int width, int height);

}  // namespace swipe::features
