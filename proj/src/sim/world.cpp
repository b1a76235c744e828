#include "afst/sim/world.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/imgcodecs.hpp>

namespace afst::sim {

namespace {

// Squared distance from a point to the cell's axis-aligned box.
double point_cell_dist2(const WorldMap& world, double x, double y, int ix, int iy) {
  const double x0 = ix * world.resolution;
  const double y0 = iy * world.resolution;
  const double dx = std::max({x0 - x, 0.0, x - (x0 + world.resolution)});
  const double dy = std::max({y0 - y, 0.0, y - (y0 + world.resolution)});
  return dx * dx + dy * dy;
}

}  // namespace

bool disc_collides(const WorldMap& world, double x, double y, double radius) {
  // Outside the raster counts as occupied.
  if (x - radius < 0.0 || y - radius < 0.0 || x + radius > world.width() ||
      y + radius > world.height())
    return true;
  const int ix0 = std::max(0, world.cell_of(x - radius));
  const int iy0 = std::max(0, world.cell_of(y - radius));
  const int ix1 = std::min(world.cols - 1, world.cell_of(x + radius));
  const int iy1 = std::min(world.rows - 1, world.cell_of(y + radius));
  const double r2 = radius * radius;
  for (int iy = iy0; iy <= iy1; ++iy)
    for (int ix = ix0; ix <= ix1; ++ix)
      if (world.occupied(ix, iy) && point_cell_dist2(world, x, y, ix, iy) < r2)
        return true;
  return false;
}

double clearance(const WorldMap& world, double x, double y, double max_dist) {
  const double border = std::min(std::min(x, y),
                                 std::min(world.width() - x, world.height() - y));
  double best2 = max_dist * max_dist;
  const int ix0 = std::max(0, world.cell_of(x - max_dist));
  const int iy0 = std::max(0, world.cell_of(y - max_dist));
  const int ix1 = std::min(world.cols - 1, world.cell_of(x + max_dist));
  const int iy1 = std::min(world.rows - 1, world.cell_of(y + max_dist));
  for (int iy = iy0; iy <= iy1; ++iy)
    for (int ix = ix0; ix <= ix1; ++ix)
      if (world.occupied(ix, iy))
        best2 = std::min(best2, point_cell_dist2(world, x, y, ix, iy));
  return std::min(std::sqrt(best2), std::max(border, 0.0));
}

WorldMap load_world(const std::string& image_path, double resolution, int threshold) {
  cv::Mat img = cv::imread(image_path, cv::IMREAD_GRAYSCALE);
  if (img.empty())
    throw std::runtime_error("load_world: cannot read image " + image_path);
  WorldMap world;
  world.resolution = resolution;
  world.cols = img.cols;
  world.rows = img.rows;
  world.grid.resize(static_cast<std::size_t>(img.cols) * img.rows);
  for (int iy = 0; iy < img.rows; ++iy)
    for (int ix = 0; ix < img.cols; ++ix)
      world.grid[static_cast<std::size_t>(iy) * img.cols + ix] =
          img.at<std::uint8_t>(iy, ix) < threshold ? 1 : 0;
  return world;
}

void save_world(const WorldMap& world, const std::string& image_path) {
  cv::Mat img(world.rows, world.cols, CV_8UC1);
  for (int iy = 0; iy < world.rows; ++iy)
    for (int ix = 0; ix < world.cols; ++ix)
      img.at<std::uint8_t>(iy, ix) = world.occupied(ix, iy) ? 0 : 255;
  if (!cv::imwrite(image_path, img))
    throw std::runtime_error("save_world: cannot write " + image_path);
}

}  // namespace afst::sim
