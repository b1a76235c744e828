#include "afst/sim/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace afst::sim {

double raycast(const WorldMap& world, double x, double y, double angle,
               double max_range) {
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);

  int ix = world.cell_of(x);
  int iy = world.cell_of(y);
  if (world.occupied(ix, iy)) return 0.0;

  // Amanatides-Woo traversal: step cell to cell, tracking the ray
  // parameter at which each axis boundary is crossed.
  const int step_x = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
  const int step_y = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
  const double inf = std::numeric_limits<double>::infinity();
  double t_max_x = inf, t_max_y = inf, t_delta_x = inf, t_delta_y = inf;
  if (step_x != 0) {
    const double next_bx = (ix + (step_x > 0 ? 1 : 0)) * world.resolution;
    t_max_x = (next_bx - x) / dx;
    t_delta_x = world.resolution / std::abs(dx);
  }
  if (step_y != 0) {
    const double next_by = (iy + (step_y > 0 ? 1 : 0)) * world.resolution;
    t_max_y = (next_by - y) / dy;
    t_delta_y = world.resolution / std::abs(dy);
  }

  while (true) {
    double t;
    if (t_max_x < t_max_y) {
      t = t_max_x;
      t_max_x += t_delta_x;
      ix += step_x;
    } else {
      t = t_max_y;
      t_max_y += t_delta_y;
      iy += step_y;
    }
    if (t >= max_range) return max_range;
    if (world.occupied(ix, iy)) return t;
  }
}

std::vector<double> raycast_scan(const WorldMap& world, const smdp::Pose& pose,
                                 double fov, int n_beams, double max_range) {
  std::vector<double> scan(static_cast<std::size_t>(n_beams));
  for (int k = 0; k < n_beams; ++k) {
    const double offset =
        n_beams == 1 ? 0.0 : -fov / 2.0 + fov * k / (n_beams - 1);
    scan[k] = raycast(world, pose.x, pose.y, pose.theta + offset, max_range);
  }
  return scan;
}

Observation build_observation(const ObservationSpec& spec, const smdp::Pose& pose,
                              double goal_x, double goal_y,
                              const std::vector<double>& scan) {
  Observation obs;
  obs.cells = spec.cells;
  obs.extent = static_cast<float>(spec.extent);
  obs.local_map.assign(static_cast<std::size_t>(spec.cells) * spec.cells, 1.0f);

  const double res = spec.extent / spec.cells;
  const double half = spec.extent / 2.0;
  const auto cell_index = [&](double rx, double ry, int& ix, int& iy) {
    ix = static_cast<int>(std::floor((rx + half) / res));
    iy = static_cast<int>(std::floor((ry + half) / res));
    return ix >= 0 && iy >= 0 && ix < spec.cells && iy < spec.cells;
  };

  // Carve free space along every beam, then stamp endpoints. Endpoint
  // marks run second so an occupied hit wins over a free mark from a
  // neighboring beam.
  const double stride = res / 2.0;
  const int n = static_cast<int>(scan.size());
  for (int k = 0; k < n; ++k) {
    const double offset = n == 1 ? 0.0 : -spec.fov / 2.0 + spec.fov * k / (n - 1);
    const double c = std::cos(offset), s = std::sin(offset);
    const double range = std::min(scan[k], spec.max_range);
    for (double r = 0.0; r < range; r += stride) {
      int ix, iy;
      if (cell_index(r * c, r * s, ix, iy)) obs.at(ix, iy) = 0.0f;
    }
  }
  for (int k = 0; k < n; ++k) {
    if (scan[k] >= spec.max_range) continue;
    const double offset = n == 1 ? 0.0 : -spec.fov / 2.0 + spec.fov * k / (n - 1);
    int ix, iy;
    if (cell_index(scan[k] * std::cos(offset), scan[k] * std::sin(offset), ix, iy))
      obs.at(ix, iy) = 1.0f;
  }

  // Goal in the robot frame: rotate the world offset by -theta.
  const double dx = goal_x - pose.x, dy = goal_y - pose.y;
  const double ct = std::cos(pose.theta), st = std::sin(pose.theta);
  obs.goal_x = static_cast<float>(ct * dx + st * dy);
  obs.goal_y = static_cast<float>(-st * dx + ct * dy);
  return obs;
}

}  // namespace afst::sim
