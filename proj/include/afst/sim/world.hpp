#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "afst/tp/actions.hpp"

namespace afst::sim {

// Rasterized obstacle world. Cell (ix, iy) covers the axis-aligned box
// x in [ix*res, (ix+1)*res), y in [iy*res, (iy+1)*res). Everything
// outside the raster counts as occupied.
struct WorldMap {
  double resolution = 0.05;  // meters per cell
  int cols = 0;
  int rows = 0;
  std::vector<std::uint8_t> grid;  // row-major, 1 = occupied

  static WorldMap blank(double width, double height, double resolution) {
    WorldMap w;
    w.resolution = resolution;
    w.cols = static_cast<int>(std::lround(width / resolution));
    w.rows = static_cast<int>(std::lround(height / resolution));
    w.grid.assign(static_cast<std::size_t>(w.cols) * w.rows, 0);
    return w;
  }

  double width() const { return cols * resolution; }
  double height() const { return rows * resolution; }

  bool in_bounds(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < cols && iy < rows;
  }
  bool occupied(int ix, int iy) const {
    if (!in_bounds(ix, iy)) return true;
    return grid[static_cast<std::size_t>(iy) * cols + ix] != 0;
  }
  void set_occupied(int ix, int iy, bool value = true) {
    if (in_bounds(ix, iy))
      grid[static_cast<std::size_t>(iy) * cols + ix] = value ? 1 : 0;
  }

  int cell_of(double coord) const {
    return static_cast<int>(std::floor(coord / resolution));
  }

  // Fills every cell whose box intersects the rectangle [x0,x1]x[y0,y1].
  void fill_rect(double x0, double y0, double x1, double y1) {
    const int ix0 = std::max(0, cell_of(x0));
    const int iy0 = std::max(0, cell_of(y0));
    const int ix1 = std::min(cols - 1, cell_of(x1 - 1e-9));
    const int iy1 = std::min(rows - 1, cell_of(y1 - 1e-9));
    for (int iy = iy0; iy <= iy1; ++iy)
      for (int ix = ix0; ix <= ix1; ++ix) set_occupied(ix, iy);
  }

  // Fills every cell whose center lies inside the disc.
  void fill_disc(double cx, double cy, double radius) {
    const int ix0 = std::max(0, cell_of(cx - radius));
    const int iy0 = std::max(0, cell_of(cy - radius));
    const int ix1 = std::min(cols - 1, cell_of(cx + radius));
    const int iy1 = std::min(rows - 1, cell_of(cy + radius));
    const double r2 = radius * radius;
    for (int iy = iy0; iy <= iy1; ++iy)
      for (int ix = ix0; ix <= ix1; ++ix) {
        const double dx = (ix + 0.5) * resolution - cx;
        const double dy = (iy + 0.5) * resolution - cy;
        if (dx * dx + dy * dy <= r2) set_occupied(ix, iy);
      }
  }
};

struct RobotSpec {
  double radius = 0.17;  // meters
  tp::RobotLimits limits{};
};

// True if a robot disc centered at (x, y) overlaps any occupied cell.
// Cells partially covered by the disc count.
bool disc_collides(const WorldMap& world, double x, double y, double radius);

// Shortest distance from a point to the occupied set, capped at
// max_dist. Used by scenario clearance checks.
double clearance(const WorldMap& world, double x, double y, double max_dist);

// Loads an 8-bit grayscale image (PNG or PGM); intensity below the
// threshold marks a cell occupied.
WorldMap load_world(const std::string& image_path, double resolution,
                    int threshold = 128);

// Writes the world as an 8-bit grayscale image (occupied = black).
void save_world(const WorldMap& world, const std::string& image_path);

}  // namespace afst::sim
