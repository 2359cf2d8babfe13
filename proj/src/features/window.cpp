#include "swipe/features/window.hpp"

#include "swipe/errors.hpp"

#include <algorithm>
#include <string>

namespace swipe::features {

bool is_grid_level(int level) {
  return std::find(kGridLevels.begin(), kGridLevels.end(), level) != kGridLevels.end();
}

namespace {

// Boundary of grid line i (may lie outside [0, extent] for i = -1 or level+1).
int grid_line(int i, int level, int extent) {
  return static_cast<int>(static_cast<long>(i) * extent / level);
}

}  // namespace

GridCell window_geometry(int level, int cell_x, int cell_y, int width, int height) {
  if (!is_grid_level(level)) throw ArgumentError("invalid grid level " + std::to_string(level));
  if (cell_x < 0 || cell_x >= level || cell_y < 0 || cell_y >= level) {
    throw ArgumentError("cell index out of range for level " + std::to_string(level));
  }
  if (width < level || height < level) throw ArgumentError("image too small for grid level");

  GridCell cell;
  cell.level = level;
  cell.cell_x = cell_x;
  cell.cell_y = cell_y;
  cell.template_rect = {grid_line(cell_x, level, width), grid_line(cell_y, level, height),
                        grid_line(cell_x + 1, level, width), grid_line(cell_y + 1, level, height)};
  cell.search_rect = {cell_x == 0 ? 0 : grid_line(cell_x - 1, level, width),
                      cell_y == 0 ? 0 : grid_line(cell_y - 1, level, height),
                      cell_x + 1 == level ? width : grid_line(cell_x + 2, level, width),
                      cell_y + 1 == level ? height : grid_line(cell_y + 2, level, height)};
  return cell;
}

}  // namespace swipe::features
